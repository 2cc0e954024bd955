"""Command-line front end.

Subcommands: ico, deutsch, classical, sweep, experiment, report, calibrate.
Every command is deterministic given its options and seed; file outputs are
byte-identical across reruns.  Exit codes: 0 when all internal verification
flags pass, 1 when a decision disagrees with ground truth, 2 on bad usage.

Oracle sets are given as JSON truth-table arrays (``[[0,0],[0,1]]``) or as
comma-separated aliases (``c0,b01``) with c0=constant 0, c1=constant 1,
b01=identity-balanced, b10=inverting-balanced.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, circuits, counting, qswitch
from .oracles import (
    OracleParseError,
    OracleSet,
    enumerate_oracle_sets,
    ground_truth_odd_constants,
    identify_pauli,
    parse_oracle_set,
    product_oracle,
)
from .qmath import KET0, KET1, MINUS, PLUS
from .sagnac import (
    NoiseModel,
    POLARIZATION_STATES,
    SagnacConfig,
    calibrate_phase,
    simulate_sagnac,
    standard_stack,
)

TARGET_STATES = {"0": KET0, "1": KET1, "+": PLUS, "-": MINUS}

SEED_ENV_VAR = "CSWITCH_SEED"


def _resolve_seed(args, config: dict) -> int:
    if args.seed is not None:
        return args.seed
    if "seed" in config:
        return int(config["seed"])
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return 0


def _load_config(args) -> dict:
    if not args.config:
        return {}
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"malformed config JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        )
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _resolve_oracles(args, config: dict) -> OracleSet:
    if getattr(args, "oracles", None):
        return parse_oracle_set(args.oracles)
    if "oracles" in config:
        return parse_oracle_set(json.dumps(config["oracles"]))
    raise ValueError("an oracle set is required (--oracles or config 'oracles')")


def _resolve_noise(args, config: dict, seed: int) -> NoiseModel:
    choice = getattr(args, "noise", "default")
    if choice == "none":
        return NoiseModel.none(rng_seed=seed)
    if choice == "default":
        return NoiseModel.default(rng_seed=seed)
    params = config.get("noise")
    if not isinstance(params, dict):
        raise ValueError("--noise custom requires a config file with a 'noise' object")
    return NoiseModel(
        plate_angle_sigma=float(params.get("plate_angle_sigma", 0.0)),
        retardance_sigma=float(params.get("retardance_sigma", 0.0)),
        bs_imbalance_sigma=float(params.get("bs_imbalance_sigma", 0.0)),
        dark_count_rate=float(params.get("dark_count_rate", 0.0)),
        rng_seed=seed,
    )


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _format_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2, sort_keys=True) + "\n"
    header = ",".join(record.keys())
    row = ",".join(_format_value(v) for v in record.values())
    return f"{header}\n{row}\n"


def _format_table(rows: list[dict], fmt: str, summary: dict) -> str:
    if fmt == "json":
        return json.dumps({"summary": summary, "rows": rows}, indent=2, sort_keys=True) + "\n"
    if not rows:
        return ""
    header = ",".join(rows[0].keys())
    lines = [header]
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row.values()))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_ico(args) -> int:
    config = _load_config(args)
    oracle_set = _resolve_oracles(args, config)
    target = TARGET_STATES[args.target]
    decision = qswitch.run_ico_algorithm(oracle_set, target)
    truth = ground_truth_odd_constants(oracle_set)
    p0, p1 = decision.control_outcome_probs
    record = {
        "oracles": oracle_set.to_json(),
        "n": len(oracle_set),
        "n_parity": decision.n_parity,
        "u1": identify_pauli(product_oracle(oracle_set)),
        "u2": "X",
        "target": args.target,
        "p0": p0,
        "p1": p1,
        "outcome": 0 if p0 >= p1 else 1,
        "odd_constants": decision.odd_constants,
        "ground_truth": truth,
        "verified": decision.odd_constants == truth,
    }
    _emit(_format_record(record, args.format), args.out)
    return 0 if record["verified"] else 1


def cmd_deutsch(args) -> int:
    config = _load_config(args)
    oracle_set = _resolve_oracles(args, config)
    outcome = circuits.run_generalized_deutsch(oracle_set)
    truth = ground_truth_odd_constants(oracle_set)
    record = {
        "oracles": oracle_set.to_json(),
        "n": len(oracle_set),
        "first_qubit": outcome.first_qubit,
        "odd_constants": outcome.decoded_odd_constants,
        "queries_used": outcome.queries_used,
        "ground_truth": truth,
        "verified": outcome.decoded_odd_constants == truth,
    }
    _emit(_format_record(record, args.format), args.out)
    return 0 if record["verified"] else 1


def cmd_classical(args) -> int:
    config = _load_config(args)
    oracle_set = _resolve_oracles(args, config)
    outcome = circuits.run_classical_baseline(oracle_set)
    truth = ground_truth_odd_constants(oracle_set)
    record = {
        "oracles": oracle_set.to_json(),
        "n": len(oracle_set),
        "odd_constants": outcome.decoded_odd_constants,
        "queries_used": outcome.queries_used,
        "ground_truth": truth,
        "verified": outcome.decoded_odd_constants == truth,
    }
    _emit(_format_record(record, args.format), args.out)
    return 0 if record["verified"] else 1


def cmd_sweep(args) -> int:
    n = args.n
    if not 1 <= n <= 8:
        raise ValueError(f"sweep size must satisfy 1 <= n <= 8, got {n}")
    rows = []
    all_agree = True
    for index, oracle_set in enumerate(enumerate_oracle_sets(n)):
        truth = ground_truth_odd_constants(oracle_set)
        ico = qswitch.run_ico_algorithm(oracle_set)
        circuit = circuits.run_generalized_deutsch(oracle_set)
        classical = circuits.run_classical_baseline(oracle_set)
        agree = (
            ico.odd_constants == truth
            and circuit.decoded_odd_constants == truth
            and classical.decoded_odd_constants == truth
        )
        all_agree &= agree
        rows.append(
            {
                "index": index,
                "oracles": oracle_set.to_json(),
                "u1": identify_pauli(product_oracle(oracle_set)),
                "ground_truth": truth,
                "ico_decision": ico.odd_constants,
                "circuit_first_qubit": circuit.first_qubit,
                "circuit_decision": circuit.decoded_odd_constants,
                "classical_decision": classical.decoded_odd_constants,
                "agree": agree,
            }
        )
    summary = {
        "n": n,
        "sets": len(rows),
        "all_agree": all_agree,
        **circuits.complexity_report(n),
    }
    _emit(_format_table(rows, args.format, summary), args.out)
    if args.format == "csv":
        print(
            f"sweep n={n}: {len(rows)} sets, all_agree={str(all_agree).lower()}, "
            f"classical_queries={summary['classical_queries']}, "
            f"ico_queries={summary['ico_queries']}",
            file=sys.stderr,
        )
    return 0 if all_agree else 1


def cmd_experiment(args) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config)
    shots = args.shots if args.shots is not None else int(config.get("shots", 600_000))
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    noise = _resolve_noise(args, config, seed)
    report = counting.run_full_experiment(args.table, noise, shots)

    out_dir = Path(args.out) if args.out else Path.cwd()
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.table.replace("-", "_")
    paths = {
        "csv": out_dir / f"{stem}_report.csv",
        "json": out_dir / f"{stem}_report.json",
        "ports": out_dir / f"{stem}_ports.csv",
    }
    paths["csv"].write_text(counting.report_to_csv(report), encoding="utf-8")
    paths["json"].write_text(counting.report_to_json(report), encoding="utf-8")
    paths["ports"].write_text(counting.port_fractions_csv(report), encoding="utf-8")
    written = list(paths.values())
    if not args.no_figure:
        from .figures import render_report_figure

        written.append(render_report_figure(report, out_dir / f"{stem}_figure.png"))

    tag = " [noise: CALIBRATED defaults]" if report.calibrated_noise else ""
    print(
        f"{args.table}: mean success {report.mean_success:.6f} "
        f"+- {report.mean_sigma:.6f} over {len(report.records)} cells, "
        f"{shots} shots each, seed {seed}{tag}"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_report(args) -> int:
    if args.n < 1:
        raise ValueError(f"n must be positive, got {args.n}")
    record = {"n": args.n, **circuits.complexity_report(args.n)}
    _emit(_format_record(record, args.format), args.out)
    return 0


def cmd_calibrate(args) -> int:
    input_state = POLARIZATION_STATES[args.input]
    u2_stack = standard_stack(args.u2)
    phi = calibrate_phase(u2_stack, input_state)
    check = simulate_sagnac(
        SagnacConfig(
            u1_stack=standard_stack("I"),
            u2_stack=u2_stack,
            input_polarization=input_state,
            interferometer_phase=phi,
        )
    )
    record = {
        "u2": args.u2,
        "input": args.input,
        "phi_radians": phi,
        "p_b_at_phi": check.p_b,
    }
    _emit(_format_record(record, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (falls back to ${SEED_ENV_VAR}, then 0)")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format for printed records (default csv)")
    common.add_argument("--out", default=None,
                        help="output file (or directory for 'experiment')")
    common.add_argument("--config", default=None, help="JSON config file")

    parser = argparse.ArgumentParser(
        prog="cswitch",
        description="Causal-order-switch algorithm runs, fixed-order baselines, "
        "and the Sagnac-loop optical experiment simulation.",
    )
    parser.add_argument("--version", action="version", version=f"cswitch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ico", parents=[common],
                       help="run the causal-order-switch decision on one oracle set")
    p.add_argument("--oracles", help="JSON truth tables like [[0,0],[0,1]] or aliases c0,b01")
    p.add_argument("--target", choices=sorted(TARGET_STATES), default="0",
                   help="target-qubit input state (default |0>)")
    p.set_defaults(func=cmd_ico)

    p = sub.add_parser("deutsch", parents=[common],
                       help="run the fixed-order interference circuit")
    p.add_argument("--oracles")
    p.set_defaults(func=cmd_deutsch)

    p = sub.add_parser("classical", parents=[common], help="run the 2n-query baseline")
    p.add_argument("--oracles")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("sweep", parents=[common],
                       help="run all three methods over every oracle set of size n")
    p.add_argument("--n", type=int, required=True, help="problem size, 1..8")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("experiment", parents=[common],
                       help="simulate the counting experiment and write report files")
    p.add_argument("--table", choices=("deutsch", "two-function"), required=True)
    p.add_argument("--noise", choices=("none", "default", "custom"), default="default")
    p.add_argument("--shots", type=int, default=None, help="shots per configuration")
    p.add_argument("--no-figure", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", parents=[common], help="query-complexity comparison")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("calibrate", parents=[common],
                       help="closed-form interferometer phase for a u2 stack")
    p.add_argument("--u2", choices=("I", "-I", "Z", "-Z", "X"), default="X")
    p.add_argument("--input", choices=("H", "V", "D", "A"), default="H")
    p.set_defaults(func=cmd_calibrate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OracleParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
