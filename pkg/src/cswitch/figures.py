"""Render experiment reports as the familiar four-panel port-probability bars.

One panel per input polarization (H, V, D, A); orange bars are the observed
fraction at port b, green bars at port a.  Written to file next to the CSV
and JSON outputs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .counting import ExperimentReport
from .sagnac import NoiseModel
from .tables import INPUT_BASES, table_rows

PORT_B_COLOR = "tab:orange"
PORT_A_COLOR = "tab:green"


def render_report_figure(report: ExperimentReport, path: str | Path) -> Path:
    """Bar chart of per-configuration port fractions, one panel per basis."""
    rows = table_rows(report.table)
    labels = [row.label for row in rows]
    frac = {
        (r.config_label, r.input_basis): (r.counts_a / r.shots, r.counts_b / r.shots)
        for r in report.records
    }

    n_cols = max(len(labels) // 2, 2)
    fig, axes = plt.subplots(2, 2, figsize=(1.1 + 0.62 * n_cols * 2, 6.0), sharey=True)
    x = range(len(labels))
    width = 0.38
    for ax, basis, panel in zip(axes.flat, INPUT_BASES, "abcd"):
        fa = [frac[(label, basis)][0] for label in labels]
        fb = [frac[(label, basis)][1] for label in labels]
        ax.bar([i - width / 2 for i in x], fb, width, color=PORT_B_COLOR, label="port b")
        ax.bar([i + width / 2 for i in x], fa, width, color=PORT_A_COLOR, label="port a")
        ax.set_xticks(list(x))
        ax.set_xticklabels(labels, rotation=60 if len(labels) > 6 else 0, fontsize=8)
        ax.set_ylim(0.0, 1.05)
        ax.set_title(f"({panel}) input |{basis}>", fontsize=10)
        ax.set_ylabel("exit probability")
    axes.flat[0].legend(loc="center right", fontsize=8)

    noise_tag = "calibrated noise" if report.calibrated_noise else "custom noise"
    if report.noise == NoiseModel.none(report.noise.rng_seed):
        noise_tag = "ideal optics"
    fig.suptitle(
        f"{report.table} table, {report.shots_per_config} shots/config, {noise_tag}: "
        f"mean success {report.mean_success:.4f} +- {report.mean_sigma:.4f}",
        fontsize=11,
    )
    fig.tight_layout(rect=(0, 0, 1, 0.96))
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
