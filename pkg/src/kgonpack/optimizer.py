"""
Multistart search for the smallest convex k-gon holding n unit disks.

A candidate polygon is the intersection of ``k`` half-planes
``{p : p . u(phi_j) <= d_j}``.  During the search the offsets are not free:
for given centres and normal angles the smallest admissible offsets are the
support values ``max_i c_i . u(phi_j) + 1``, so only centres and angles are
searched.  Overlap of disks is handled by a quadratic penalty, then removed
exactly by scaling the centre cloud before a final polish.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import bounds
from .errors import GeometryError, KgonError, NoFeasibleCandidateError
from .geom_core import Bounded, HalfPlane, InfeasibleError, halfplane_intersection
from .packing import format_points, generate_linear, generate_wegner

TWO_PI = 2.0 * math.pi
FEASIBLE_TOL = 1e-7
# objective value for parameter vectors that give no bounded k-gon
_BAD = 1e6


@dataclass(frozen=True, eq=False)
class Candidate:
    centers: np.ndarray
    normals: np.ndarray  # angles, ascending
    offsets: np.ndarray

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def k(self) -> int:
        return len(self.normals)

    def halfplanes(self) -> list[HalfPlane]:
        return [HalfPlane.from_angle(t, d) for t, d in zip(self.normals, self.offsets)]

    @classmethod
    def supporting(cls, centers, angles) -> "Candidate":
        """Offsets set to the tightest values that still contain every disk."""
        c = np.asarray(centers, float).reshape(-1, 2)
        a = np.sort(np.mod(np.asarray(angles, float), TWO_PI))
        u = np.column_stack([np.cos(a), np.sin(a)])
        return cls(c, a, (c @ u.T).max(axis=0) + 1.0)


@dataclass(frozen=True)
class Evaluation:
    area: float
    violation: float
    effective_sides: int


def evaluate(c: Candidate) -> Evaluation:
    """Area of the candidate polygon and its worst constraint violation.

    The violation is the largest of: disk overlap ``2 - |c_i c_j|``, disk
    protrusion ``c_i . u_j + 1 - d_j``, plus ``1.0`` per missing side.  An
    unbounded intersection has infinite area.
    """
    centers = np.asarray(c.centers, float).reshape(-1, 2)
    k = c.k
    worst = 0.0
    if len(centers) > 1:
        diff = centers[:, None, :] - centers[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        iu = np.triu_indices(len(centers), k=1)
        worst = max(worst, float(np.max(2.0 - dist[iu])))
    u = np.column_stack([np.cos(c.normals), np.sin(c.normals)])
    worst = max(worst, float(np.max(centers @ u.T + 1.0 - c.offsets[None, :])))
    worst = max(worst, 0.0)
    try:
        region = halfplane_intersection(c.halfplanes())
    except InfeasibleError:
        return Evaluation(0.0, worst + k, 0)
    if isinstance(region, Bounded):
        eff = len(region.polygon)
        return Evaluation(region.polygon.area, worst + (k - eff) * 1.0, eff)
    eff = len(getattr(region, "halfplanes", []))
    return Evaluation(math.inf, worst + max(k - eff, 1) * 1.0, eff)


# --------------------------------------------------------------------------
# Fast objective
# --------------------------------------------------------------------------

def _support_area(centers: np.ndarray, angles: np.ndarray) -> float:
    """Area of the supporting polygon; ``_BAD``-scaled if it is not a proper k-gon."""
    a = np.sort(np.mod(angles, TWO_PI))
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    if gaps.max() >= math.pi - 1e-9 or gaps.min() <= 1e-9:
        return _BAD * (1.0 + gaps.max())
    u = np.column_stack([np.cos(a), np.sin(a)])
    d = (centers @ u.T).max(axis=0) + 1.0
    d_next = np.roll(d, -1)
    d_prev = np.roll(d, 1)
    g_prev = np.roll(gaps, 1)
    # side j runs between its intersections with lines j-1 and j+1
    length = (d_next - d * np.cos(gaps)) / np.sin(gaps) + (d_prev - d * np.cos(g_prev)) / np.sin(g_prev)
    if length.min() <= 0.0:
        return _BAD * (1.0 - length.min())
    return 0.5 * float(d @ length)


def _overlap_penalty(centers: np.ndarray) -> float:
    if len(centers) < 2:
        return 0.0
    diff = centers[:, None, :] - centers[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    iu = np.triu_indices(len(centers), k=1)
    short = np.maximum(0.0, 2.0 - dist[iu])
    return float(short @ short)


def _repair(centers: np.ndarray) -> np.ndarray:
    """Scale the centres about the first one until no two are closer than 2."""
    if len(centers) < 2:
        return centers
    diff = centers[:, None, :] - centers[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    iu = np.triu_indices(len(centers), k=1)
    dmin = float(dist[iu].min())
    if dmin >= 2.0:
        return centers
    if dmin <= 1e-12:
        return centers + 0.0  # cannot be repaired by scaling; caller sees the overlap
    s = (2.0 / dmin) * (1.0 + 4e-16)
    return centers[0] + (centers - centers[0]) * s


class _Layout:
    """Map between the flat search vector and (centres, angles).

    The first centre sits at the origin and the first angle is frozen, which
    removes the translation and rotation symmetries.
    """

    def __init__(self, n: int, k: int, angle0: float):
        self.n, self.k, self.angle0 = n, k, angle0

    def pack(self, centers: np.ndarray, angles: np.ndarray) -> np.ndarray:
        c = np.asarray(centers, float) - centers[0]
        return np.concatenate([c[1:].ravel(), np.asarray(angles[1:], float)])

    def unpack(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        m = 2 * (self.n - 1)
        centers = np.vstack([np.zeros((1, 2)), x[:m].reshape(-1, 2)])
        angles = np.concatenate([[self.angle0], x[m:]])
        return centers, angles


@dataclass(frozen=True)
class SolveConfig:
    restarts: int = 32
    seed: int = 0
    max_iters: int = 2000
    penalty_schedule: tuple = (10.0, 1e3, 1e5)


@dataclass(frozen=True, eq=False)
class OptimizeResult:
    best: Candidate
    area: float
    bound: float
    gap: float
    restarts_used: int
    seed: int
    history: list = field(default_factory=list, repr=False)


def _seeds(n: int, k: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Known configurations to start from: constructions and simple lattice packings."""
    from .constructions import construct

    out = []
    try:
        built = construct(n, k)
        out.append((built.packing.centers.copy(), built.polygon.normal_angles()))
    except KgonError:
        pass
    even = -math.pi / 2 + TWO_PI * np.arange(k) / k
    out.append((generate_linear(n).centers.copy(), even))
    if n <= bounds.MAX_NONEXCEPTIONAL:
        out.append((generate_wegner(n).centers.copy(), even))
    return out


def _random_cloud(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random connected subset of the spacing-2 triangular lattice, jittered."""
    steps = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    cells = {(0, 0)}
    while len(cells) < n:
        base = list(cells)[rng.integers(len(cells))]
        s = steps[rng.integers(6)]
        cells.add((base[0] + s[0], base[1] + s[1]))
    pts = np.array([[2.0 * i + j, math.sqrt(3.0) * j] for i, j in sorted(cells)])
    return pts + rng.normal(scale=0.15, size=pts.shape)


def _start(n, k, restart, seeds, rng) -> tuple[np.ndarray, np.ndarray]:
    if restart % 2 == 0 and seeds:
        centers, angles = seeds[(restart // 2) % len(seeds)]
        scale = 0.0 if restart < 2 * len(seeds) else 1.0
        centers = centers + rng.normal(scale=0.05 + 0.25 * scale, size=centers.shape)
        angles = np.sort(np.mod(angles + rng.normal(scale=0.02 + 0.15 * scale, size=k), TWO_PI))
        return centers, angles
    centers = _random_cloud(n, rng)
    angles = np.sort(rng.uniform(0.0, TWO_PI) + TWO_PI * (np.arange(k) + rng.uniform(-0.3, 0.3, k)) / k)
    return centers, angles


def _local_search(layout: _Layout, x0: np.ndarray, config: SolveConfig) -> np.ndarray:
    x = np.asarray(x0, float)
    for mu in config.penalty_schedule:

        def f(v, mu=mu):
            centers, angles = layout.unpack(v)
            return _support_area(centers, angles) + mu * _overlap_penalty(centers)

        res = minimize(
            f,
            x,
            method="Nelder-Mead",
            options={"maxiter": config.max_iters, "xatol": 1e-10, "fatol": 1e-13, "adaptive": True},
        )
        x = res.x

    def g(v):
        centers, angles = layout.unpack(v)
        return _support_area(_repair(centers), angles)

    res = minimize(
        g,
        x,
        method="Nelder-Mead",
        options={"maxiter": config.max_iters, "xatol": 1e-11, "fatol": 1e-14, "adaptive": True},
    )
    return res.x


def solve(n: int, k: int, config: SolveConfig | None = None, **overrides) -> OptimizeResult:
    """Best convex k-gon found for ``n`` unit disks (``n <= 6``, ``3 <= k <= 8``).

    Deterministic for a fixed ``config.seed``.  Every start is polished by
    Nelder-Mead under an increasing overlap penalty; the winner is the
    smallest feasible area, ties broken by restart index.
    """
    if config is None:
        config = SolveConfig(**overrides)
    elif overrides:
        raise TypeError("pass either config or keyword overrides, not both")
    if not (1 <= n <= 6 and 3 <= k <= 8):
        raise ValueError(f"solve supports 1 <= n <= 6 and 3 <= k <= 8, got n={n}, k={k}")
    rng = np.random.default_rng(config.seed)
    seeds = _seeds(n, k)
    bound = bounds.kgon_bound(n, k)

    best: tuple[float, int, Candidate] | None = None
    history = []
    for r in range(config.restarts):
        centers, angles = _start(n, k, r, seeds, rng)
        layout = _Layout(n, k, float(angles[0]))
        x = _local_search(layout, layout.pack(centers, angles), config)
        c, a = layout.unpack(x)
        cand = Candidate.supporting(_repair(c), a)
        ev = evaluate(cand)
        history.append((r, ev.area, ev.violation))
        if ev.violation >= FEASIBLE_TOL or not math.isfinite(ev.area):
            continue
        if best is None or ev.area < best[0]:
            best = (ev.area, r, cand)

    if best is None:
        worst = min(history, key=lambda h: h[2]) if history else None
        raise NoFeasibleCandidateError(
            f"no feasible polygon in {config.restarts} restarts (least violation: {worst})"
        )
    area, _, cand = best
    if area < bound - 1e-6:
        raise GeometryError(f"area {area} below the proven bound {bound}: geometry bug")
    return OptimizeResult(
        best=cand,
        area=area,
        bound=bound,
        gap=area - bound,
        restarts_used=config.restarts,
        seed=config.seed,
        history=history,
    )


def format_result(res: OptimizeResult) -> str:
    """Text dump: summary comments, the centres as packing lines, one ``side phi d`` per side."""
    head = "\n".join(
        [
            f"n = {res.best.n}, k = {res.best.k}",
            f"area = {res.area:.12f}",
            f"bound = {res.bound:.12f}",
            f"gap = {res.gap:.12f}",
            f"seed = {res.seed}",
            f"restarts = {res.restarts_used}",
        ]
    )
    sides = "".join(f"side {t:.17g} {d:.17g}\n" for t, d in zip(res.best.normals, res.best.offsets))
    return format_points(res.best.centers, head) + sides
