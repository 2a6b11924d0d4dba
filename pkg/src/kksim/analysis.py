"""Constellation statistics and their closed-form references.

The retrieved clusters are summarized by per-symbol means and 2x2
covariances. Against them stand the analytic predictions for an
intensity-only receiver at dominant carrier: radial variance 1/2,
tangential 1/6, total 2/3, signal-to-noise (3/2) n_s, and the rotation
of the radial/tangential pair into I/Q components by the decision-time
beat phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

RADIAL_VARIANCE = 0.5
TANGENTIAL_VARIANCE = 1.0 / 6.0
TOTAL_VARIANCE = RADIAL_VARIANCE + TANGENTIAL_VARIANCE
SNR_SLOPE = 1.5
# single-quadrature reference of an unmodified coherent state
COHERENT_QUADRATURE_VARIANCE = 0.25
VARIANCE_RATIO = RADIAL_VARIANCE / TANGENTIAL_VARIANCE

MIN_CLUSTER_POINTS = 100


class InsufficientDataError(ValueError):
    """A cluster has too few points for stable second-moment estimates."""


class DegenerateEllipseError(ValueError):
    """Covariance is singular or not positive definite; no ellipse exists."""


class InfiniteSnrError(ValueError):
    """Zero covariance reached the noisy-run estimator (noiseless input?)."""


@dataclass(frozen=True)
class ClusterStats:
    """Sample mean and unbiased covariance of one received cluster."""

    mean: complex
    covariance: np.ndarray
    count: int


@dataclass(frozen=True)
class ConstellationCloud:
    """Received points labeled by the transmitted symbol index.

    Grouping is by the transmitted label, never the received quadrant, so
    decision errors cannot leak between clusters.
    """

    tx_indices: np.ndarray
    points: np.ndarray
    decision_phase: float = 0.0

    def __post_init__(self):
        if len(self.tx_indices) != len(self.points):
            raise ValueError("labels and points must have equal length")


@dataclass(frozen=True)
class NoiseEllipse:
    """Principal-axis summary of a 2x2 covariance.

    rho is the major/minor variance ratio, i.e. the squared axis-length
    ratio. Orientation is an unsigned axis direction, reported mod pi.
    An isotropic covariance has no preferred axis; it is flagged
    degenerate and reported with orientation 0.
    """

    major: float
    minor: float
    orientation: float
    rho: float
    degenerate: bool = False
    center: complex = 0j


@dataclass(frozen=True)
class PredictedVariances:
    """Analytic noise figures for a given mean signal photon number."""

    n_s: float
    radial: float = RADIAL_VARIANCE
    tangential: float = TANGENTIAL_VARIANCE
    total: float = TOTAL_VARIANCE

    @property
    def snr(self) -> float:
        return SNR_SLOPE * self.n_s

    def iq(self, theta: float) -> tuple[float, float]:
        return predict_iq_variances(theta)


def predict_snr(n_s: float) -> float:
    """Ceiling (3/2) n_s of the intensity-only receiver."""
    return SNR_SLOPE * n_s


def estimate_cluster_stats(cloud: ConstellationCloud) -> dict[int, ClusterStats]:
    """Per-transmitted-symbol sample mean and unbiased covariance.

    Returns:
        Mapping from symbol index to ClusterStats, for every index present
        in the cloud.

    Raises:
        InsufficientDataError: a present cluster has fewer than 100 points.
    """
    out: dict[int, ClusterStats] = {}
    for q in sorted(int(i) for i in np.unique(cloud.tx_indices)):
        pts = cloud.points[cloud.tx_indices == q]
        if len(pts) < MIN_CLUSTER_POINTS:
            raise InsufficientDataError(
                f"cluster {q} has {len(pts)} points; need at least {MIN_CLUSTER_POINTS}"
            )
        xy = np.column_stack([pts.real, pts.imag])
        mu = xy.mean(axis=0)
        cov = np.cov(xy, rowvar=False, ddof=1)
        out[q] = ClusterStats(mean=complex(mu[0], mu[1]), covariance=cov, count=len(pts))
    return out


def estimate_snr(cloud: ConstellationCloud) -> float:
    """|cluster mean|^2 over total cluster variance, averaged across clusters.

    Raises:
        InfiniteSnrError: some cluster has zero total variance, which means
            noiseless data was fed to an estimator meant for noisy runs.
    """
    stats = estimate_cluster_stats(cloud)
    ratios = []
    for q, st in stats.items():
        total = float(np.trace(st.covariance))
        if total <= 0.0:
            raise InfiniteSnrError(f"cluster {q} has zero variance; nothing to estimate")
        ratios.append(abs(st.mean) ** 2 / total)
    return float(np.mean(ratios))


def pca_ellipse(covariance: np.ndarray, center: complex = 0j) -> NoiseEllipse:
    """Closed-form principal axes of a 2x2 covariance.

    Eigenvalues from trace and discriminant, orientation from the major
    eigenvector, both without an iterative solver. Isotropic input gets
    the degenerate flag instead of an arbitrary axis.

    Raises:
        DegenerateEllipseError: singular or non-positive-definite input.
    """
    c = np.asarray(covariance, dtype=float)
    if c.shape != (2, 2):
        raise ValueError("covariance must be 2x2")
    if not np.all(np.isfinite(c)):
        raise DegenerateEllipseError("covariance has non-finite entries")
    if abs(c[0, 1] - c[1, 0]) > 1e-9 * (abs(c[0, 1]) + abs(c[1, 0]) + 1e-30):
        raise ValueError("covariance must be symmetric")
    a, b, d = float(c[0, 0]), float(c[0, 1]), float(c[1, 1])
    half_trace = 0.5 * (a + d)
    half_gap = 0.5 * math.hypot(a - d, 2.0 * b)
    major = half_trace + half_gap
    minor = half_trace - half_gap
    if minor <= 0.0:
        raise DegenerateEllipseError(f"covariance is not positive definite (minor axis {minor:.3g})")
    if half_gap <= 1e-12 * major:
        return NoiseEllipse(
            major=major, minor=minor, orientation=0.0, rho=major / minor,
            degenerate=True, center=center,
        )
    orientation = 0.5 * math.atan2(2.0 * b, a - d) % math.pi
    return NoiseEllipse(
        major=major, minor=minor, orientation=orientation, rho=major / minor, center=center,
    )


def directional_variances(stats: ClusterStats | np.ndarray, theta: float) -> tuple[float, float]:
    """Variance of deviations projected onto theta and theta + pi/2.

    Accepts ClusterStats or a bare 2x2 covariance. The two components sum
    to the covariance trace for every theta.
    """
    cov = stats.covariance if isinstance(stats, ClusterStats) else np.asarray(stats, dtype=float)
    ct, st = math.cos(theta), math.sin(theta)
    parallel = ct * ct * cov[0, 0] + 2.0 * ct * st * cov[0, 1] + st * st * cov[1, 1]
    perpendicular = st * st * cov[0, 0] - 2.0 * ct * st * cov[0, 1] + ct * ct * cov[1, 1]
    return float(parallel), float(perpendicular)


def predict_iq_variances(theta: float) -> tuple[float, float]:
    """Radial/tangential pair rotated into I/Q components by angle theta.

    v1 = cos^2(theta)/2 + sin^2(theta)/6, v2 with the roles swapped; the
    two always sum to 2/3 and trade places every quarter turn.
    """
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    return (
        c2 * RADIAL_VARIANCE + s2 * TANGENTIAL_VARIANCE,
        s2 * RADIAL_VARIANCE + c2 * TANGENTIAL_VARIANCE,
    )


def predict_phase_variance(current: float, k: float = 1.0) -> float:
    """Phase variance k/(6 I) of the retrieval at decision current I.

    Multiplying by |h|^2 = I/k gives back the tangential constant 1/6,
    which is the identity the Monte Carlo cross-checks.
    """
    if current <= 0:
        raise ValueError("current must be positive")
    return k / (6.0 * current)


def basel_sum_check(m_terms: int) -> float:
    """Partial sum of 1/m^2, the constant behind the phase-variance kernel.

    Converges to pi^2/6 with remainder just under 1/m_terms; used as the
    convergence witness for the discrete kernel's noise transfer.
    """
    if m_terms < 1:
        raise ValueError("m_terms must be at least 1")
    m = np.arange(1, m_terms + 1, dtype=np.float64)
    return float(np.sum(1.0 / (m * m)))
