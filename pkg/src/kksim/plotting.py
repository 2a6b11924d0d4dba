"""Deterministic SVG figures for constellations and the SNR trend.

Uses the Agg backend with a fixed hash salt and no embedded date, so
the same run produces byte-identical files on every machine.
"""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

matplotlib.rcParams["svg.hashsalt"] = "kksim"

QPSK_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728")
ELLIPSE_SIGMA = 2.0

_SAVE_KWARGS = {"format": "svg", "metadata": {"Date": None}}


def family_viewport(max_n_s: float) -> float:
    """Half-width of the square axes window for a family of runs.

    Sized from the largest mean photon number so every figure in one
    sweep shares the same scale.
    """
    return 1.35 * math.sqrt(max_n_s)


def _ellipse_xy(center: complex, major: float, minor: float, orientation: float,
                n_sigma: float = ELLIPSE_SIGMA):
    t = np.linspace(0.0, 2.0 * math.pi, 181)
    a = n_sigma * math.sqrt(major)
    b = n_sigma * math.sqrt(minor)
    c, s = math.cos(orientation), math.sin(orientation)
    x = center.real + a * np.cos(t) * c - b * np.sin(t) * s
    y = center.imag + a * np.cos(t) * s + b * np.sin(t) * c
    return x, y


def save_constellation_svg(path: Path | str, run, viewport: float) -> None:
    """Scatter the received points with cluster means and 2-sigma ellipses."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for q in range(4):
        mask = run.tx_indices == q
        if not mask.any():
            continue
        pts = run.points[mask]
        ax.plot(pts.real, pts.imag, ".", color=QPSK_COLORS[q], markersize=2.0,
                alpha=0.5, linestyle="none", label=f"symbol {q}")
    for q, ell in sorted(run.ellipses.items()):
        x, y = _ellipse_xy(ell.center, ell.major, ell.minor, ell.orientation)
        ax.plot(x, y, color="black", linewidth=0.9)
        ax.plot([ell.center.real], [ell.center.imag], "+", color="black", markersize=6.0)
    ax.set_xlim(-viewport, viewport)
    ax.set_ylim(-viewport, viewport)
    ax.set_aspect("equal")
    ax.axhline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.axvline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.set_xlabel("in-phase")
    ax.set_ylabel("quadrature")
    ax.set_title(
        f"n_s={run.spec.n_s:g}, CSPR={run.spec.cspr_db:g} dB, "
        f"decision index {run.grid.decision_index}"
    )
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def save_snr_figure(path: Path | str, n_s_values, snr_values) -> None:
    """Measured SNR points against the 3/2 n_s line."""
    ns = np.asarray(list(n_s_values), dtype=float)
    snr = np.asarray(list(snr_values), dtype=float)
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    grid = np.linspace(0.0, float(ns.max()) * 1.05, 50)
    ax.plot(grid, 1.5 * grid, color="0.4", linewidth=1.0, label="3/2 n_s")
    ax.plot(grid, grid, linestyle="--", color="0.7", linewidth=0.8,
            label="n_s (heterodyne limit)")
    ax.plot(ns, snr, "o", color=QPSK_COLORS[0], markersize=5.0, label="measured")
    ax.set_xlabel("mean signal photon number")
    ax.set_ylabel("SNR")
    ax.set_xlim(0.0, float(ns.max()) * 1.05)
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="upper left", frameon=False)
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
