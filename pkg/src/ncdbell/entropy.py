"""Analytic baseline: outcome distributions of the polarization singlet,
Shannon entropies, the entropic information distance and the entropic
quadrangle statistic S'(theta).

Angles are analyzer (polarizer) angles in degrees throughout.
"""

from dataclasses import dataclass

import numpy as np

_NORM_TOL = 1e-12


class ZeroEntropy(ValueError):
    pass


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome probabilities; ``pxy`` is P(Alice = x, Bob = y)."""

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self):
        probs = self.as_array()
        if np.any(probs < -_NORM_TOL) or np.any(probs > 1 + _NORM_TOL):
            raise ValueError(f"probabilities out of [0, 1]: {probs}")
        if abs(probs.sum() - 1.0) > _NORM_TOL:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.p00, self.p01, self.p10, self.p11], dtype=float)

    def marginal_a(self):
        """P(Alice = 0), P(Alice = 1)."""
        return self.p00 + self.p01, self.p10 + self.p11

    def marginal_b(self):
        return self.p00 + self.p10, self.p01 + self.p11


@dataclass(frozen=True)
class AngleSettings:
    a0: float
    a1: float
    b0: float
    b1: float
    theta: float

    def pairs(self):
        """Setting pairs in quadrangle order: a0b0, a1b0, a1b1, a0b1."""
        return {
            "a0b0": (self.a0, self.b0),
            "a1b0": (self.a1, self.b0),
            "a1b1": (self.a1, self.b1),
            "a0b1": (self.a0, self.b1),
        }


def settings_from_theta(theta: float) -> AngleSettings:
    """Collinear arrangement a0=0, b0=theta, a1=2 theta, b1=3 theta.

    Three of the four analyzer separations equal ``theta`` and the remaining
    one (a0, b1) equals ``3 * theta``.
    """
    if not 0 <= theta <= 45:
        raise ValueError(f"theta must lie in [0, 45] degrees, got {theta}")
    return AngleSettings(a0=0.0, a1=2.0 * theta, b0=float(theta), b1=3.0 * theta, theta=float(theta))


def singlet_joint_distribution(delta: float, visibility: float = 1.0) -> JointDistribution:
    """Outcome distribution for analyzers separated by ``delta`` degrees.

    The ideal singlet gives equal-outcome probability sin^2(delta)/2 per
    pattern; visibility V mixes in white noise: ``V * p + (1 - V) / 4``.
    """
    if not 0 <= visibility <= 1:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility}")
    s2 = np.sin(np.radians(delta)) ** 2
    same = visibility * s2 / 2 + (1 - visibility) / 4
    diff = visibility * (1 - s2) / 2 + (1 - visibility) / 4
    return JointDistribution(p00=same, p01=diff, p10=diff, p11=same)


def shannon_entropy(probs) -> float:
    """H = -sum p log2 p in bits, with 0 log 0 = 0."""
    if isinstance(probs, JointDistribution):
        probs = probs.as_array()
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0


def binary_entropy(p: float) -> float:
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return shannon_entropy([p, 1 - p])


def entropic_nid(dist: JointDistribution) -> float:
    """Ensemble-average information distance (H(x,y) - min H) / max H."""
    h_xy = shannon_entropy(dist)
    h_x = shannon_entropy(dist.marginal_a())
    h_y = shannon_entropy(dist.marginal_b())
    h_max = max(h_x, h_y)
    if h_max <= 0:
        raise ZeroEntropy("both marginals are deterministic; the distance is undefined")
    return (h_xy - min(h_x, h_y)) / h_max


def entropic_quadrangle(settings: AngleSettings, visibility: float = 1.0):
    """Entropic distances for the four setting pairs plus S'."""
    from .ncd import QuadrangleResult

    d = {
        name: entropic_nid(singlet_joint_distribution(a - b, visibility))
        for name, (a, b) in settings.pairs().items()
    }
    return QuadrangleResult.from_distances(d["a0b0"], d["a1b0"], d["a1b1"], d["a0b1"], mode="entropic")


def entropic_S_prime(theta: float, visibility: float = 1.0) -> float:
    """S'(theta) = NID(3 theta) - 3 NID(theta) for the singlet."""
    return entropic_quadrangle(settings_from_theta(theta), visibility).statistic


def chsh_value(a0: float, a1: float, b0: float, b1: float, visibility: float = 1.0) -> float:
    """|E(a0,b0) - E(a0,b1) + E(a1,b0) + E(a1,b1)| with E(delta) = -V cos(2 delta)."""

    def corr(a, b):
        return -visibility * np.cos(np.radians(2 * (a - b)))

    return float(abs(corr(a0, b0) - corr(a0, b1) + corr(a1, b0) + corr(a1, b1)))


def correlation(dist: JointDistribution) -> float:
    """E = p00 + p11 - p01 - p10."""
    return dist.p00 + dist.p11 - dist.p01 - dist.p10
