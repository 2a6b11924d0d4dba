"""Minimum-phase single-sideband symbol frames on a discrete time grid.

A symbol frame is the complex envelope h[m] = A_c + sqrt(n_s) e^{j theta}
e^{-j m dphi} sampled over the beat between the carrier and the offset
signal tone. The carrier bias A_c keeps the trajectory away from the
origin, which is what makes the phase recoverable from the intensity
alone. Time is kept in sample units throughout; the beat frequency
appears only as phase advance per sample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

QPSK_SYMBOLS = 4


def map_qpsk(index: int, n_s: float) -> complex:
    """Map a QPSK index to the complex amplitude sqrt(n_s) e^{j(pi/4 + index pi/2)}.

    Args:
        index: symbol label in 0..3, one per quadrant.
        n_s: mean signal photon number, > 0.

    Returns:
        Complex amplitude with |amplitude|^2 = n_s.
    """
    if not isinstance(index, (int, np.integer)) or not 0 <= index < QPSK_SYMBOLS:
        raise ValueError(f"QPSK index must be an integer in 0..3, got {index!r}")
    if n_s <= 0:
        raise ValueError("n_s must be positive")
    phase = math.pi / 4 + index * math.pi / 2
    return math.sqrt(n_s) * complex(math.cos(phase), math.sin(phase))


@dataclass(frozen=True)
class ModulationSymbol:
    """One QPSK symbol; its phase is pi/4 plus a quarter turn per index."""

    index: int

    def __post_init__(self):
        if not isinstance(self.index, (int, np.integer)) or not 0 <= self.index < QPSK_SYMBOLS:
            raise ValueError(f"QPSK index must be an integer in 0..3, got {self.index!r}")

    @property
    def phase(self) -> float:
        return math.pi / 4 + self.index * math.pi / 2


@dataclass(frozen=True)
class SignalParams:
    """Carrier and signal amplitudes in photon-number units.

    The carrier amplitude is tied to the signal by the carrier-to-signal
    power ratio: A_c = sqrt(10^(cspr_db/10) * n_s). A strictly positive
    ratio in dB guarantees the carrier dominates, the sufficient condition
    for a minimum-phase frame.
    """

    n_s: float
    cspr_db: float
    signal_phase: float = 0.0

    def __post_init__(self):
        if self.n_s <= 0:
            raise ValueError("n_s must be positive")
        if self.cspr_db <= 0:
            raise ValueError("cspr_db must be positive so the carrier outweighs the signal")

    @property
    def cspr_linear(self) -> float:
        return 10.0 ** (self.cspr_db / 10.0)

    @property
    def carrier_amplitude(self) -> float:
        return math.sqrt(self.cspr_linear * self.n_s)


@dataclass(frozen=True)
class SamplingGrid:
    """Per-symbol discretization with the decision sample at the frame center.

    Args:
        samples_per_if_period: samples per beat period (P).
        if_periods_per_symbol: beat periods spanned by a centered frame (Q);
            it sets the default decision index P*Q/2.
        decision_index: sample index of the decision time. The frame always
            spans 2*decision_index samples, so off-center choices stretch or
            shrink the frame to keep the decision time at its midpoint.
    """

    samples_per_if_period: int
    if_periods_per_symbol: int
    decision_index: int

    def __post_init__(self):
        for name in ("samples_per_if_period", "if_periods_per_symbol", "decision_index"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v <= 0:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def total_samples(self) -> int:
        return 2 * self.decision_index

    @property
    def phase_step(self) -> float:
        return TWO_PI / self.samples_per_if_period

    @property
    def decision_phase(self) -> float:
        """Beat phase (decision_index * phase_step) mod 2pi at the decision sample."""
        return (self.decision_index * self.phase_step) % TWO_PI

    @classmethod
    def paper(cls, decision_index: int | None = None) -> "SamplingGrid":
        """Full-resolution grid: 2000 samples per period, 100 periods, 2e5 samples."""
        P, Q = 2000, 100
        return cls(P, Q, P * Q // 2 if decision_index is None else decision_index)

    @classmethod
    def reduced(cls, decision_index: int | None = None) -> "SamplingGrid":
        """Coarse test grid: 200 samples per period, 20 periods, 4000 samples.

        Truncation error grows roughly with the inverse period count, so
        accuracy bounds are looser here; see the receiver round-trip tests.
        """
        P, Q = 200, 20
        return cls(P, Q, P * Q // 2 if decision_index is None else decision_index)


@dataclass(frozen=True)
class EnvelopeFrame:
    """Complex envelope samples for one symbol plus the grid they live on."""

    samples: np.ndarray
    grid: SamplingGrid


@dataclass(frozen=True)
class MinimumPhaseReport:
    """Diagnostics from the origin-avoidance check."""

    ok: bool
    min_abs: float
    winding_turns: int

    def __bool__(self) -> bool:
        return self.ok


def synthesize_mp_envelope(
    params: SignalParams,
    grid: SamplingGrid,
    symbol: ModulationSymbol | None = None,
) -> EnvelopeFrame:
    """Build the envelope h[m] = A_c + sqrt(n_s) e^{j(theta - m dphi)} over the frame.

    The carrier term is real and constant; the signal tone advances by
    -phase_step per sample. With no symbol given, theta comes from
    params.signal_phase.
    """
    theta = params.signal_phase if symbol is None else symbol.phase
    m = np.arange(grid.total_samples)
    samples = params.carrier_amplitude + math.sqrt(params.n_s) * np.exp(
        1j * (theta - grid.phase_step * m)
    )
    return EnvelopeFrame(samples=samples, grid=grid)


def check_minimum_phase(frame: EnvelopeFrame) -> MinimumPhaseReport:
    """True when the trajectory stays off the origin and never wraps around it.

    Winding is the net number of full turns of arg h over the frame,
    accumulated from per-sample phase increments wrapped to (-pi, pi].
    A frame whose signal outweighs the carrier circles the origin once
    per beat period and fails with a winding count of that many turns.
    """
    mags = np.abs(frame.samples)
    min_abs = float(mags.min())
    if min_abs == 0.0:
        return MinimumPhaseReport(ok=False, min_abs=0.0, winding_turns=0)
    angles = np.angle(frame.samples)
    steps = np.diff(angles)
    steps -= TWO_PI * np.round(steps / TWO_PI)
    turns = int(round(float(steps.sum()) / TWO_PI))
    return MinimumPhaseReport(ok=turns == 0, min_abs=min_abs, winding_turns=turns)
