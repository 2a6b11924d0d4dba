"""Closed-form two-port detection baseline. Nothing here is sampled.

Mixing the signal with a strong local oscillator on a balanced splitter
and subtracting the two photocurrents gives a mean beat current, a
fluctuation floor set by both fields plus the vacuum ports, and from
their ratio the detection signal-to-noise. These are exact expressions,
so comparisons against the sampled intensity-only receiver carry no
baseline Monte Carlo error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class HeterodyneParams:
    """Signal and local-oscillator photon numbers for the balanced detector."""

    n_s: float
    n_L: float
    k: float = 1.0
    beat_phase: float = 0.0

    def __post_init__(self):
        if self.n_s < 0:
            raise ValueError("n_s must be non-negative")
        if self.n_L <= 0:
            raise ValueError("n_L must be positive")
        if self.k <= 0:
            raise ValueError("k must be positive")


def balanced_mean_current(p: HeterodyneParams, t_phase: float) -> float:
    """Mean difference current 2k sqrt(n_s n_L) sin(t_phase - beat_phase)."""
    return 2.0 * p.k * math.sqrt(p.n_s * p.n_L) * math.sin(t_phase - p.beat_phase)


def balanced_current_variance(p: HeterodyneParams) -> float:
    """Fluctuation of the difference current, k^2 (3 n_s + 2 n_L)."""
    return p.k**2 * (3.0 * p.n_s + 2.0 * p.n_L)


def balanced_snr(p: HeterodyneParams) -> float:
    """Signal-to-noise 2 n_s n_L / (2 n_L + 3 n_s) of balanced detection.

    Time-averaged beat power over the fluctuation floor. Grows with both
    photon numbers and approaches n_s from below as the oscillator
    strengthens, so n_s is the hard ceiling of this receiver.
    """
    return 2.0 * p.n_s * p.n_L / (2.0 * p.n_L + 3.0 * p.n_s)
