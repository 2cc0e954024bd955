"""Shot-level Monte Carlo and counting statistics for the optical runs.

Each (configuration, input basis) cell gets its own generator stream derived
from (seed, config index, basis index), so reports are reproducible
byte-for-byte no matter how the sweep is partitioned.  Per-cell counts are a
single binomial draw, which is the count of that many independent Bernoulli
shots.  Error bars use the binomial standard error, the same 1-sigma
Poisson-counting estimate the hardware analysis uses.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .sagnac import (
    NoiseModel,
    POLARIZATION_STATES,
    SagnacConfig,
    calibrate_phase,
    perturb,
    simulate_sagnac,
    standard_stack,
)
from .tables import INPUT_BASES, TableRow, table_rows

CSV_COLUMNS = ("label", "basis", "shots", "counts_a", "counts_b", "p_hat", "sigma")


@dataclass(frozen=True)
class CountRecord:
    shots: int
    counts_a: int
    counts_b: int
    config_label: str
    input_basis: str

    def __post_init__(self):
        if self.shots <= 0:
            raise ValueError("shots must be positive")
        if self.counts_a < 0 or self.counts_b < 0 or self.counts_a + self.counts_b != self.shots:
            raise ValueError("port counts must be non-negative and sum to shots")


@dataclass(frozen=True)
class ExperimentReport:
    """Counts, per-cell success estimates, and the cross-cell aggregate.

    ``mean_sigma`` is the 1-sigma spread of p_hat across configurations and
    bases (the paper-style +-), not the per-cell binomial error; the latter
    sits in each ``per_config_success`` entry.
    """

    table: str
    records: tuple[CountRecord, ...]
    per_config_success: tuple[tuple[str, str, float, float], ...]
    mean_success: float
    mean_sigma: float
    shots_per_config: int
    noise: NoiseModel
    calibrated_noise: bool


def derive_stream_seed(seed: int, *indices: int) -> int:
    """A reproducible child seed for the (seed, *indices) stream."""
    return int(np.random.SeedSequence([seed, *indices]).generate_state(1)[0])


def sample_counts(
    p_expected_port: float,
    shots: int,
    rng_seed: int,
    expected_port: str = "b",
    config_label: str = "",
    input_basis: str = "H",
) -> CountRecord:
    """Draw ``shots`` independent Bernoulli(p) outcomes for the expected port."""
    if not 0.0 <= p_expected_port <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p_expected_port}")
    if shots <= 0:
        raise ValueError("shots must be positive")
    if expected_port not in ("a", "b"):
        raise ValueError(f"expected_port must be 'a' or 'b', got {expected_port!r}")
    rng = np.random.default_rng(rng_seed)
    hits = int(rng.binomial(shots, p_expected_port))
    misses = shots - hits
    counts_a, counts_b = (hits, misses) if expected_port == "a" else (misses, hits)
    return CountRecord(
        shots=shots,
        counts_a=counts_a,
        counts_b=counts_b,
        config_label=config_label,
        input_basis=input_basis,
    )


def estimate(record: CountRecord, expected_port: str) -> tuple[float, float]:
    """(p_hat, sigma) for the expected port, binomial standard error.

    Saturated counts (0 or all shots) would give sigma = 0; those use the
    floored variant sqrt((p(1-p)+1)/N) instead, keeping the error bar visible.
    """
    if expected_port not in ("a", "b"):
        raise ValueError(f"expected_port must be 'a' or 'b', got {expected_port!r}")
    hits = record.counts_a if expected_port == "a" else record.counts_b
    p_hat = hits / record.shots
    variance = p_hat * (1.0 - p_hat)
    if hits == 0 or hits == record.shots:
        variance += 1.0
    return p_hat, math.sqrt(variance / record.shots)


def expected_port_probability(config: SagnacConfig, expected_port: str) -> float:
    ports = simulate_sagnac(config)
    return ports.p_a if expected_port == "a" else ports.p_b


def _noisy_cell_probability(
    row: TableRow, basis: str, noise: NoiseModel, rng: np.random.Generator
) -> float:
    """Expected-port probability for one perturbed, recalibrated realization."""
    ideal = SagnacConfig(
        u1_stack=row.u1_stack(),
        u2_stack=standard_stack("X"),
        input_polarization=POLARIZATION_STATES[basis],
    )
    noisy = perturb(ideal, noise, rng)
    phi = calibrate_phase(noisy.u2_stack, noisy.input_polarization)
    noisy = replace(noisy, interferometer_phase=phi)
    p = expected_port_probability(noisy, row.expected_port)
    p = min(max(p, 0.0), 1.0)  # shave float dust outside [0, 1]
    # Dark counts land on a uniformly random port.
    return (1.0 - noise.dark_count_rate) * p + 0.5 * noise.dark_count_rate


def run_full_experiment(
    table: str, noise: NoiseModel, shots: int = 600_000
) -> ExperimentReport:
    """Simulate every table row at every input polarization and count shots.

    Perturbation and shot sampling use separate streams per cell, both
    derived from (noise.rng_seed, config index, basis index).
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    rows = table_rows(table)
    records: list[CountRecord] = []
    successes: list[tuple[str, str, float, float]] = []
    for ci, row in enumerate(rows):
        for bi, basis in enumerate(INPUT_BASES):
            perturb_rng = np.random.default_rng([noise.rng_seed, ci, bi, 0])
            p_cell = _noisy_cell_probability(row, basis, noise, perturb_rng)
            record = sample_counts(
                p_cell,
                shots,
                derive_stream_seed(noise.rng_seed, ci, bi, 1),
                expected_port=row.expected_port,
                config_label=row.label,
                input_basis=basis,
            )
            p_hat, sigma = estimate(record, row.expected_port)
            records.append(record)
            successes.append((row.label, basis, p_hat, sigma))
    p_hats = np.array([s[2] for s in successes])
    is_calibrated = noise == NoiseModel.default(rng_seed=noise.rng_seed)
    return ExperimentReport(
        table=table,
        records=tuple(records),
        per_config_success=tuple(successes),
        mean_success=float(np.mean(p_hats)),
        mean_sigma=float(np.std(p_hats)),
        shots_per_config=shots,
        noise=noise,
        calibrated_noise=is_calibrated,
    )


def report_to_csv(report: ExperimentReport) -> str:
    """Per-cell counts table; columns fixed by CSV_COLUMNS."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record, (label, basis, p_hat, sigma) in zip(report.records, report.per_config_success):
        writer.writerow(
            [label, basis, record.shots, record.counts_a, record.counts_b,
             repr(p_hat), repr(sigma)]
        )
    return buf.getvalue()


def report_to_json(report: ExperimentReport) -> str:
    payload = {
        "version": f"cswitch {__version__}",
        "table": report.table,
        "seed": report.noise.rng_seed,
        "shots_per_config": report.shots_per_config,
        "noise": {
            "plate_angle_sigma_deg": report.noise.plate_angle_sigma,
            "retardance_sigma_rad": report.noise.retardance_sigma,
            "bs_imbalance_sigma": report.noise.bs_imbalance_sigma,
            "dark_count_rate": report.noise.dark_count_rate,
            "calibrated_defaults": report.calibrated_noise,
        },
        "mean_success": report.mean_success,
        "cross_config_sigma": report.mean_sigma,
        "records": [
            {
                "label": r.config_label,
                "basis": r.input_basis,
                "shots": r.shots,
                "counts_a": r.counts_a,
                "counts_b": r.counts_b,
                "p_hat": p_hat,
                "sigma": sigma,
            }
            for r, (_, _, p_hat, sigma) in zip(report.records, report.per_config_success)
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def port_fractions_csv(report: ExperimentReport) -> str:
    """Plot-ready bar heights: observed exit fraction per port, per cell."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("label", "basis", "frac_a", "frac_b", "expected_port"))
    expected = {
        (row.label, basis): row.expected_port
        for row in table_rows(report.table)
        for basis in INPUT_BASES
    }
    for r in report.records:
        writer.writerow(
            [
                r.config_label,
                r.input_basis,
                repr(r.counts_a / r.shots),
                repr(r.counts_b / r.shots),
                expected[(r.config_label, r.input_basis)],
            ]
        )
    return buf.getvalue()
