"""
Maclaurin trisectrix as the locus of a reflected tangent point.

Circle of radius ``a`` centred at the pole ``O = (0, 0)``; the line ``l`` is
tangent at ``T = (a, 0)``, so the polar axis is the ray from ``O`` through
``T``.  For ``X`` on ``l`` let ``R`` be the touching point of the other tangent
from ``X``; the curve point is ``X' = 2R - X``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TrisectrixSample:
    phi: float
    X: np.ndarray
    Xp: np.ndarray
    r: float
    theta: float


def _admissible(phi: float) -> bool:
    return 0.0 <= phi < math.pi / 2 or 3 * math.pi / 2 < phi <= TWO_PI


def trisectrix_point(a: float, phi: float) -> TrisectrixSample:
    """Build ``X'`` for the point ``X`` of ``l`` seen from ``O`` at azimuth ``phi``.

    ``phi`` must lie in ``[0, pi/2)`` or ``(3pi/2, 2pi]``.
    """
    if a <= 0:
        raise GeometryError(f"radius must be positive, got {a}")
    if not _admissible(phi):
        raise GeometryError(f"azimuth {phi} outside [0, pi/2) U (3pi/2, 2pi]")
    T = np.array([a, 0.0])
    X = np.array([a, a * math.tan(phi)])
    # touching points of the two tangents from X sit at +-beta around the ray OX;
    # l itself is one tangent, so the tangent length is |XT| (acos(a/|OX|) is
    # ill-conditioned near phi = 0)
    beta = math.atan2(math.hypot(*(X - T)), a)
    psi = math.atan2(X[1], X[0])
    cands = [a * np.array([math.cos(psi + s * beta), math.sin(psi + s * beta)]) for s in (1, -1)]
    R = max(cands, key=lambda q: float(np.hypot(*(q - T))))
    Xp = 2.0 * R - X
    r = math.hypot(Xp[0], Xp[1])
    theta = math.atan2(Xp[1], Xp[0]) % TWO_PI
    if r == 0.0 or abs(theta - TWO_PI) < 1e-15:
        theta = 0.0
    return TrisectrixSample(phi=phi, X=X, Xp=Xp, r=r, theta=theta)


def polar_radius(a: float, theta: float) -> float:
    """``a * sec(theta / 3)``."""
    return a / math.cos(theta / 3.0)


def sample_phis(count: int, margin: float = 1e-3) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return np.zeros(1)
    return np.linspace(0.0, math.pi / 2 - margin, count)


def trisectrix_samples(a: float, count: int) -> list[TrisectrixSample]:
    return [trisectrix_point(a, float(p)) for p in sample_phis(count)]


def trisectrix_residuals(a: float, count: int) -> float:
    """Largest ``|r - a sec(theta/3)|`` over ``count`` constructed points."""
    return max(abs(s.r - polar_radius(a, s.theta)) for s in trisectrix_samples(a, count))


def format_samples(samples) -> str:
    """One ``"phi r theta x y"`` line per sample."""
    return "".join(
        f"{s.phi:.12g} {s.r:.12g} {s.theta:.12g} {s.Xp[0]:.12g} {s.Xp[1]:.12g}\n" for s in samples
    )
