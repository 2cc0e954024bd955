"""One-bit Boolean black boxes and their operator encodings.

A black box f: {0,1} -> {0,1} is stored as its explicit truth table, so the
whole configuration space of n boxes (4**n settings) can be enumerated and
serialized.  Each box is encoded either as the diagonal phase operator
diag((-1)**f(0), (-1)**f(1)) -- always one of +I, -I, +Z, -Z -- or as the
two-qubit XOR oracle |x>|y> -> |x>|y xor f(x)>.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from . import qmath

#: Shorthand names for the four one-bit functions, accepted by the CLI.
FUNCTION_ALIASES = {
    "c0": (0, 0),
    "c1": (1, 1),
    "b01": (0, 1),
    "b10": (1, 0),
}


class FunctionClass(Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table (f(0), f(1)) of a one-bit function."""

    f0: int
    f1: int

    def __post_init__(self):
        if self.f0 not in (0, 1) or self.f1 not in (0, 1):
            raise ValueError(f"truth-table values must be bits, got ({self.f0}, {self.f1})")

    def __call__(self, x: int) -> int:
        return self.f1 if x else self.f0


@dataclass(frozen=True)
class OracleSet:
    """Ordered collection of n >= 1 black-box functions."""

    functions: tuple[BooleanFunction, ...]

    def __post_init__(self):
        if len(self.functions) < 1:
            raise ValueError("an oracle set needs at least one function (n >= 1)")

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self) -> Iterator[BooleanFunction]:
        return iter(self.functions)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "OracleSet":
        return cls(tuple(BooleanFunction(int(a), int(b)) for a, b in pairs))

    def to_pairs(self) -> list[list[int]]:
        return [[f.f0, f.f1] for f in self.functions]

    def to_json(self) -> str:
        return json.dumps(self.to_pairs(), separators=(",", ":"))


class OracleParseError(ValueError):
    """Oracle-set text could not be parsed."""


def parse_oracle_set(text: str) -> OracleSet:
    """Parse a JSON truth-table array like ``[[0,0],[0,1]]`` or an alias list
    like ``c0,b01`` into an OracleSet."""
    stripped = text.strip()
    if not stripped:
        raise OracleParseError("empty oracle specification (n >= 1 required)")
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise OracleParseError(
                f"malformed oracle JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(data, list) or not data:
            raise OracleParseError("oracle JSON must be a non-empty array of [f0,f1] pairs")
        pairs = []
        for entry in data:
            if isinstance(entry, str):
                if entry not in FUNCTION_ALIASES:
                    raise OracleParseError(f"unknown function alias {entry!r}")
                pairs.append(FUNCTION_ALIASES[entry])
            elif isinstance(entry, list) and len(entry) == 2:
                pairs.append(entry)
            else:
                raise OracleParseError(f"oracle entry {entry!r} is not a [f0,f1] pair")
        try:
            return OracleSet.from_pairs(pairs)
        except (TypeError, ValueError) as exc:
            raise OracleParseError(str(exc)) from exc
    names = [part.strip() for part in stripped.replace(",", " ").split()]
    pairs = []
    for name in names:
        if name not in FUNCTION_ALIASES:
            raise OracleParseError(
                f"unknown function alias {name!r} (expected one of {sorted(FUNCTION_ALIASES)})"
            )
        pairs.append(FUNCTION_ALIASES[name])
    return OracleSet.from_pairs(pairs)


def classify(f: BooleanFunction) -> FunctionClass:
    """Constant iff f(0) = f(1)."""
    return FunctionClass.CONSTANT if f.f0 == f.f1 else FunctionClass.BALANCED


def diag_oracle(f: BooleanFunction) -> np.ndarray:
    """diag((-1)**f(0), (-1)**f(1)); one of +I, -I, +Z, -Z."""
    return np.array(
        [[(-1.0 + 0j) ** f.f0, 0.0], [0.0, (-1.0 + 0j) ** f.f1]]
    )


def two_qubit_oracle(f: BooleanFunction) -> np.ndarray:
    """4x4 permutation matrix sending |x>|y> to |x>|y xor f(x)>.

    The first qubit is the most significant index bit.
    """
    m = np.zeros((4, 4), dtype=complex)
    for x in (0, 1):
        for y in (0, 1):
            m[2 * x + (y ^ f(x)), 2 * x + y] = 1.0
    return m


_DIAG_CACHE = {
    (f0, f1): np.array([[(-1.0 + 0j) ** f0, 0.0], [0.0, (-1.0 + 0j) ** f1]])
    for f0 in (0, 1)
    for f1 in (0, 1)
}


def product_oracle(s: OracleSet) -> np.ndarray:
    """Ordered product diag_oracle(f_1) ... diag_oracle(f_n); one of +-I, +-Z."""
    m = qmath.I2
    for f in s:
        m = m @ _DIAG_CACHE[(f.f0, f.f1)]
    return m


def ground_truth_odd_constants(s: OracleSet) -> bool:
    """True iff the number of constant functions in s is odd."""
    n_constant = sum(1 for f in s if classify(f) is FunctionClass.CONSTANT)
    return n_constant % 2 == 1


#: Display names of +-I / +-Z keyed by truth table, matching diag_oracle.
GATE_NAME_BY_TABLE = {
    (0, 0): "I",
    (1, 1): "-I",
    (0, 1): "Z",
    (1, 0): "-Z",
}


def gate_name(f: BooleanFunction) -> str:
    """Name of the diagonal operator encoding f."""
    return GATE_NAME_BY_TABLE[(f.f0, f.f1)]


def identify_pauli(m: np.ndarray, tol: float = qmath.DEFAULT_TOL) -> str:
    """Name a matrix that is exactly one of +-I, +-Z (as every product oracle is)."""
    for name, ref in (("I", qmath.I2), ("-I", -qmath.I2), ("Z", qmath.Z), ("-Z", -qmath.Z)):
        if np.max(np.abs(m - ref)) <= tol:
            return name
    raise ValueError("matrix is not one of +-I, +-Z")


def enumerate_oracle_sets(n: int) -> Iterator[OracleSet]:
    """All 4**n oracle sets of size n, in lexicographic truth-table order."""
    if n < 1:
        raise ValueError("n >= 1 required")
    tables = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for combo in itertools.product(tables, repeat=n):
        yield OracleSet.from_pairs(combo)
