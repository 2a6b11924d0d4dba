"""Photocurrent statistics: expectation, variance-to-mean law, Gaussian sampling.

The detector output for an envelope h is modeled by its quantum
expectation I = k|h|^2 and a Gaussian fluctuation whose variance follows
the mean pointwise: Var = r k <I>. The coefficient r is the squared sum
of the detection mode strengths; the single-photodiode arrangement
simulated here has r = 2 once the carrier fraction dominates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .signal_model import EnvelopeFrame

EXPECTED = "expected"
NOISY = "noisy"


@dataclass(frozen=True)
class PhotocurrentTrace:
    """Current samples in units of k photons per detection window.

    kind marks whether the values are the quantum expectation or one
    noisy realization; downstream ops check it rather than guessing.
    """

    values: np.ndarray
    k: float = 1.0
    kind: str = EXPECTED


@dataclass(frozen=True)
class NoiseLaw:
    """Variance-to-mean law Var = r * k * <I>.

    r stays a parameter so other detection mode sets remain expressible;
    every simulation in this package runs with the default r = 2.
    """

    r: float = 2.0
    k: float = 1.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if self.k <= 0:
            raise ValueError("k must be positive")


def expected_current(frame: EnvelopeFrame, k: float = 1.0) -> PhotocurrentTrace:
    """Quantum expectation of the photocurrent, k |h[m]|^2 per sample."""
    values = k * np.abs(frame.samples) ** 2
    return PhotocurrentTrace(values=values, k=k, kind=EXPECTED)


def variance_law(trace: PhotocurrentTrace, law: NoiseLaw) -> np.ndarray:
    """Pointwise noise variance r*k*<I> for an expected trace.

    Raises on noisy input or negative expectations; an expectation below
    zero means the trace was built from something other than |h|^2.
    """
    if trace.kind != EXPECTED:
        raise ValueError("variance law applies to expected traces only")
    if np.any(trace.values < 0):
        raise ValueError("expected current must be non-negative")
    return law.r * law.k * trace.values


def commutator_strength(mode_strengths: Sequence[float] | Iterable[float]) -> float:
    """Sum of squared detection mode strengths, the r of the variance law."""
    strengths = list(mode_strengths)
    if not strengths:
        raise ValueError("mode_strengths must be nonempty")
    return math.fsum(s * s for s in strengths)


def noise_stream(seed: int, *key: int) -> np.random.Generator:
    """Independent, reproducible generator for one (seed, stream key) pair.

    Streams with distinct keys are statistically independent, so symbol
    simulations can run in parallel without sharing generator state.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def sample_noisy_current(
    trace: PhotocurrentTrace,
    law: NoiseLaw,
    seed: int | None = None,
    stream: tuple[int, ...] | int = (),
) -> PhotocurrentTrace:
    """Draw one Gaussian realization around the expected trace.

    noisy[m] = I[m] + sqrt(r k I[m]) z_m with z_m independent standard
    normals from the (seed, stream) generator. A zero-variance law copies
    the expectation and needs no seed. Identical (seed, stream) pairs
    reproduce bit-identical traces.
    """
    if trace.kind != EXPECTED:
        raise ValueError("sampling starts from an expected trace")
    if law.r == 0:
        return PhotocurrentTrace(values=trace.values.copy(), k=trace.k, kind=NOISY)
    if seed is None:
        raise ValueError("a seed is required when the noise law has r > 0")
    key = (stream,) if isinstance(stream, (int, np.integer)) else tuple(stream)
    rng = noise_stream(seed, *key)
    sigma = np.sqrt(law.r * law.k * trace.values)
    noisy = trace.values + sigma * rng.standard_normal(trace.values.shape[0])
    return PhotocurrentTrace(values=noisy, k=trace.k, kind=NOISY)


def clamp_nonpositive(
    trace: PhotocurrentTrace, floor: float | None = None
) -> tuple[PhotocurrentTrace, int]:
    """Replace non-positive samples by a tiny positive floor and count them.

    The logarithm downstream requires strict positivity; at the carrier
    ratios of interest a non-positive draw is a deep-tail event, but it
    must not crash a long run. The default floor is 1e-9 times the trace
    mean; callers with the noise-free expectation available should pass
    1e-9 times that mean instead so the threshold itself is noise-free.
    """
    values = trace.values
    bad = values <= 0.0
    count = int(np.count_nonzero(bad))
    if count == 0:
        return trace, 0
    if floor is None:
        floor = 1e-9 * float(np.mean(values))
    if floor <= 0:
        raise ValueError("clamp floor must be positive")
    fixed = values.copy()
    fixed[bad] = floor
    return PhotocurrentTrace(values=fixed, k=trace.k, kind=trace.kind), count
