"""Experimental correspondence tables: gate settings and expected exit ports.

These rows are fixture data, not derived quantities: each row records which
diagonal gate(s) realize u1, and at which beam-splitter port the photon must
exit after calibration.  Commuting pairs (u1 in {+I, -I}, u2 = X) exit port b;
anticommuting pairs (u1 in {+Z, -Z}) exit port a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .oracles import FUNCTION_ALIASES, OracleSet
from .sagnac import PlateStack, concat_stacks, standard_stack

#: x-axis order of the four input polarizations in the result figures.
INPUT_BASES = ("H", "V", "D", "A")

_GATE_BY_TABLE = {(0, 0): "I", (1, 1): "-I", (0, 1): "Z", (1, 0): "-Z"}


@dataclass(frozen=True)
class TableRow:
    label: str
    functions: tuple[tuple[int, int], ...]
    expected_port: str  # "a" | "b"

    def oracle_set(self) -> OracleSet:
        return OracleSet.from_pairs(self.functions)

    def u1_gates(self) -> tuple[str, ...]:
        return tuple(_GATE_BY_TABLE[f] for f in self.functions)

    def u1_stack(self) -> PlateStack:
        # The photon meets the last function's plates first, so the stack
        # product comes out in the written order D(f_1)...D(f_n).
        return concat_stacks(standard_stack(g) for g in reversed(self.u1_gates()))


def _row(aliases: str, port: str) -> TableRow:
    functions = tuple(FUNCTION_ALIASES[a] for a in aliases.split())
    gates = tuple(_GATE_BY_TABLE[f] for f in functions)
    if len(gates) == 1:
        label = gates[0]
    else:
        label = "x".join(g if g in ("I", "Z") else f"({g})" for g in gates)
    return TableRow(label=label, functions=functions, expected_port=port)


#: Single-function table: constant functions exit port b, balanced port a.
DEUTSCH_ROWS = (
    _row("c0", "b"),   # u1 = I
    _row("c1", "b"),   # u1 = -I
    _row("b01", "a"),  # u1 = Z
    _row("b10", "a"),  # u1 = -Z
)

#: Two-function table: all 16 gate pairs; an odd number of constants
#: anticommutes u1 with X and sends the photon to port a.
TWO_FUNCTION_ROWS = (
    _row("c0 c0", "b"),    # I x I
    _row("c0 c1", "b"),    # I x (-I)
    _row("c0 b01", "a"),   # I x Z
    _row("c0 b10", "a"),   # I x (-Z)
    _row("c1 c0", "b"),    # (-I) x I
    _row("c1 c1", "b"),    # (-I) x (-I)
    _row("c1 b01", "a"),   # (-I) x Z
    _row("c1 b10", "a"),   # (-I) x (-Z)
    _row("b01 c0", "a"),   # Z x I
    _row("b01 c1", "a"),   # Z x (-I)
    _row("b01 b01", "b"),  # Z x Z
    _row("b01 b10", "b"),  # Z x (-Z)
    _row("b10 c0", "a"),   # (-Z) x I
    _row("b10 c1", "a"),   # (-Z) x (-I)
    _row("b10 b01", "b"),  # (-Z) x Z
    _row("b10 b10", "b"),  # (-Z) x (-Z)
)

TABLES = {
    "deutsch": DEUTSCH_ROWS,
    "two-function": TWO_FUNCTION_ROWS,
}


def table_rows(table: str) -> tuple[TableRow, ...]:
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}; expected one of {sorted(TABLES)}")
    return TABLES[table]
