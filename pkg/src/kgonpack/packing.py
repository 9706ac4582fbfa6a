"""
Finite packings of unit disks.

A packing is just its array of centres.  This module checks validity, measures
the convex hull of the disks, builds tangent polygons, recognises Groemer and
Wegner packings on the triangular lattice of spacing 2, and generates the
lattice packings that the polygon constructions start from.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import bounds
from .errors import GeometryError, KgonError, OverlapError
from .geom_core import (
    TOL,
    ConvexPolygon,
    HalfPlane,
    Region,
    Segment,
    as_points,
    convex_hull,
    halfplane_intersection,
)

SQRT3 = math.sqrt(3.0)
# lattice coordinates must be integral to this accuracy
LATTICE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class UnitDiskPacking:
    """Centres of ``n`` unit disks with pairwise disjoint interiors."""

    centers: np.ndarray

    def __post_init__(self):
        c = as_points(self.centers) if len(np.atleast_1d(self.centers)) else np.zeros((0, 2))
        bad = validate(c)
        if bad:
            i, j = bad[0]
            raise OverlapError(f"disks {i} and {j} overlap")
        c = np.array(c, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "centers", c)

    @property
    def n(self) -> int:
        return len(self.centers)

    def __len__(self):
        return self.n


def _pair_distances(c: np.ndarray) -> np.ndarray:
    diff = c[:, None, :] - c[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def validate(p) -> list[tuple[int, int]]:
    """Return every pair ``(i, j)``, ``i < j``, whose disks overlap.

    An empty list means the packing is valid.
    """
    c = getattr(p, "centers", p)
    c = np.asarray(c, dtype=float).reshape(-1, 2)
    if len(c) < 2:
        return []
    d = _pair_distances(c)
    i, j = np.nonzero(np.triu(d < 2.0 - TOL, k=1))
    return [(int(a), int(b)) for a, b in zip(i, j)]


def _centers(p) -> np.ndarray:
    if isinstance(p, UnitDiskPacking):
        return p.centers
    return UnitDiskPacking(p).centers


# --------------------------------------------------------------------------
# Hull metrics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HullMetrics:
    hull_area: float
    hull_perimeter: float
    center_hull_area: float
    center_hull_perimeter: float


def _hull_loop(c: np.ndarray) -> np.ndarray:
    """Vertex loop of the centre hull: 1 point, 2 points (there and back) or a polygon."""
    hull = convex_hull(c)
    return hull.vertices


def hull_metrics(p) -> HullMetrics:
    """Area and perimeter of the convex hull of the disks and of their centres.

    The disk hull is assembled piece by piece: the centre hull, a unit-wide
    rectangle on every hull edge and a circular sector at every hull vertex
    whose angle is the exterior turn there.
    """
    c = _centers(p)
    if len(c) == 0:
        raise GeometryError("empty packing")
    loop = _hull_loop(c)
    m = len(loop)
    if m == 1:
        return HullMetrics(math.pi, 2 * math.pi, 0.0, 0.0)
    edges = np.roll(loop, -1, axis=0) - loop
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if m == 2:
        turns = np.array([math.pi, math.pi])
        core = 0.0
    else:
        prev = np.roll(edges, 1, axis=0)
        turns = np.arctan2(
            prev[:, 0] * edges[:, 1] - prev[:, 1] * edges[:, 0],
            prev[:, 0] * edges[:, 0] + prev[:, 1] * edges[:, 1],
        )
        core = ConvexPolygon(loop).area
    perim = float(lengths.sum())
    area = core + perim * 1.0 + float(np.sum(turns / 2.0))
    return HullMetrics(
        hull_area=area,
        hull_perimeter=perim + float(turns.sum()),
        center_hull_area=core,
        center_hull_perimeter=perim,
    )


# --------------------------------------------------------------------------
# Tangent polygon
# --------------------------------------------------------------------------

def joint_tangents(p) -> list[HalfPlane]:
    """Distinct lines tangent to at least two disks that support the packing."""
    c = _centers(p)
    n = len(c)
    if n < 2:
        raise GeometryError("joint tangents need at least two disks")
    i, j = np.triu_indices(n, k=1)
    d = c[j] - c[i]
    u = d / np.hypot(d[:, 0], d[:, 1])[:, None]
    normals = np.concatenate([np.stack([-u[:, 1], u[:, 0]], axis=1), np.stack([u[:, 1], -u[:, 0]], axis=1)])
    base = np.concatenate([c[i], c[i]])
    offsets = np.einsum("ij,ij->i", base, normals) + 1.0
    support = (c @ normals.T).max(axis=0) + 1.0
    ok = support <= offsets + TOL
    kept: list[HalfPlane] = []
    for nrm, off in zip(normals[ok], offsets[ok]):
        if any(abs(off - h.offset) <= TOL and np.hypot(*(nrm - h.normal)) <= 1e-9 for h in kept):
            continue
        kept.append(HalfPlane(nrm, off))
    kept.sort(key=lambda h: h.angle)
    return kept


def tangent_polygon(p) -> Region:
    """Intersection of the half-planes bounded by all joint tangents."""
    return halfplane_intersection(joint_tangents(p))


# --------------------------------------------------------------------------
# Groemer / Wegner classification
# --------------------------------------------------------------------------

class PackingTag(enum.Enum):
    NOT_GROEMER = "NotGroemer"
    GROEMER = "Groemer"
    WEGNER = "Wegner"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PackingClass:
    tag: PackingTag
    hull_perimeter: float
    required_perimeter: float


def _lattice_coords(c: np.ndarray) -> np.ndarray | None:
    """Integer coordinates on the spacing-2 triangular lattice through the centres.

    The lattice is fixed by the lexicographically smallest pair of centres at
    distance 2.  Returns ``None`` if some centre is off the lattice.
    """
    n = len(c)
    d = _pair_distances(c)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if abs(d[a, b] - 2.0) <= LATTICE_TOL]
    if not pairs:
        return None
    a, b = min(pairs)
    e1 = c[b] - c[a]
    cs, sn = 0.5, SQRT3 / 2.0
    e2 = np.array([cs * e1[0] - sn * e1[1], sn * e1[0] + cs * e1[1]])
    basis = np.column_stack([e1, e2])
    coords = np.linalg.solve(basis, (c - c[a]).T).T
    rounded = np.rint(coords)
    if np.max(np.abs(coords - rounded), initial=0.0) > LATTICE_TOL:
        return None
    return rounded.astype(int)


def _int_hull(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(pts))

    def cr(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out = []
        for q in seq:
            while len(out) >= 2 and cr(out[-2], out[-1], q) <= 0:
                out.pop()
            out.append(q)
        return out

    lo, up = half(pts), half(pts[::-1])
    return lo[:-1] + up[:-1]


def _is_full_lattice_polygon(ij: np.ndarray, hull_area: float) -> bool:
    """All lattice points in the hull are centres and unit triangles tile the hull."""
    pts = {(int(a), int(b)) for a, b in ij}
    if len(pts) != len(ij):
        return False
    hull = _int_hull(list(pts))
    m = len(hull)

    def inside(q):
        for t in range(m):
            o, a = hull[t], hull[(t + 1) % m]
            if (a[0] - o[0]) * (q[1] - o[1]) - (a[1] - o[1]) * (q[0] - o[0]) < 0:
                return False
        return True

    lo = ij.min(axis=0)
    hi = ij.max(axis=0)
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            if (x, y) not in pts and inside((x, y)):
                return False
    triangles = 0
    for x, y in pts:
        if (x + 1, y) in pts and (x, y + 1) in pts:
            triangles += 1
        if (x + 1, y) in pts and (x + 1, y - 1) in pts:
            triangles += 1
    return abs(hull_area - triangles * SQRT3) <= 1e-9 * max(1.0, hull_area)


def _is_linear_chain(c: np.ndarray) -> bool:
    n = len(c)
    if n == 1:
        return True
    hull = convex_hull(c)
    if not isinstance(hull, Segment):
        return False
    u = (hull.end - hull.start) / hull.length
    t = np.sort((c - hull.start) @ u)
    return bool(np.all(np.abs(np.diff(t) - 2.0) <= LATTICE_TOL)) and abs(
        hull.length - 2.0 * (n - 1)
    ) <= LATTICE_TOL


def is_groemer(p) -> bool:
    c = _centers(p)
    if len(c) == 0:
        return False
    hull = convex_hull(c)
    if isinstance(hull, Segment):
        return _is_linear_chain(c)
    ij = _lattice_coords(c)
    if ij is None:
        return False
    return _is_full_lattice_polygon(ij, hull.area)


def classify(p) -> PackingClass:
    """Groemer / Wegner status of a valid packing.

    The hull perimeter reported is that of the centres; a segment hull counts
    twice its length.
    """
    c = _centers(p)
    n = len(c)
    metrics = hull_metrics(c)
    perim = metrics.center_hull_perimeter
    required = 2.0 * bounds.ceil_term(n)
    if not is_groemer(c):
        tag = PackingTag.NOT_GROEMER
    elif abs(perim - required) < TOL:
        tag = PackingTag.WEGNER
    else:
        tag = PackingTag.GROEMER
    return PackingClass(tag, perim, required)


# --------------------------------------------------------------------------
# Generators
# --------------------------------------------------------------------------

def lattice_point(i: int, j: int) -> np.ndarray:
    """Plane position of lattice point ``i*e1 + j*e2``, ``e1 = (2, 0)`` at 60 degrees to ``e2``."""
    return np.array([2.0 * i + j, SQRT3 * j])


def _from_lattice(ij) -> UnitDiskPacking:
    ij = sorted(ij, key=lambda t: (t[1], t[0]))
    return UnitDiskPacking(np.array([lattice_point(i, j) for i, j in ij]).reshape(-1, 2))


def _cut_triangle_points(L: int, t1: int, t2: int, t3: int) -> list[tuple[int, int]]:
    """Side-``L`` lattice triangle with ``t1, t2, t3`` rows removed at its corners."""
    return [
        (i, j)
        for j in range(L + 1)
        for i in range(L + 1 - j)
        if i + j >= t1 and i <= L - t2 and j <= L - t3
    ]


def _tri(m: int) -> int:
    return m * (m + 1) // 2


@lru_cache(maxsize=None)
def wegner_shape(n: int) -> tuple[int, int, int, int]:
    """``(L, t1, t2, t3)`` of the first lattice hexagon with ``n`` points and Wegner perimeter.

    The hexagon is a side-``L`` triangle with corner triangles of ``t1 >= t2 >= t3``
    rows removed; its perimeter is ``2 * (3L - t1 - t2 - t3)``.  Candidates are
    tried in lexicographic order of ``(L, t1, t2, t3)``.
    """
    if n < 3:
        raise ValueError("hexagon shapes start at n = 3")
    target = bounds.ceil_term(n)
    L = 1
    while True:
        # 3L - sum(t) = target with sum(t) <= 3L/2 bounds L from above
        if 3 * L - (3 * L) // 2 > target:
            break
        for t1 in range(L + 1):
            for t2 in range(min(t1, L - t1) + 1):
                t3 = 3 * L - target - t1 - t2
                if t3 < 0 or t3 > t2 or t1 + t3 > L:
                    continue
                if _tri(L + 1) - _tri(t1) - _tri(t2) - _tri(t3) == n:
                    return (L, t1, t2, t3)
        L += 1
    raise KgonError(f"no lattice hexagon with Wegner perimeter for n = {n}")


def generate_wegner(n: int) -> UnitDiskPacking:
    """A Wegner packing of ``n`` disks, ``1 <= n <= 120``."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    if n > 120:
        raise KgonError("exceptionality not decided by this artifact (n > 120)")
    if n <= 2:
        return generate_linear(n)
    return _from_lattice(_cut_triangle_points(*wegner_shape(n)))


def generate_centered_hexagonal(m: int) -> UnitDiskPacking:
    """``3m(m-1)+1`` disks whose centre hull is a regular hexagon of side ``2(m-1)``."""
    if m < 1:
        raise ValueError("m must be positive")
    r = m - 1
    return _from_lattice(
        [(i, j) for i in range(-r, r + 1) for j in range(-r, r + 1) if abs(i + j) <= r]
    )


def generate_triangular(m: int) -> UnitDiskPacking:
    """``m(m+1)/2`` disks whose centre hull is an equilateral triangle of side ``2(m-1)``."""
    if m < 1:
        raise ValueError("m must be positive")
    return _from_lattice(_cut_triangle_points(m - 1, 0, 0, 0))


def generate_linear(n: int) -> UnitDiskPacking:
    if n < 1:
        raise ValueError("n must be positive")
    return UnitDiskPacking(np.column_stack([2.0 * np.arange(n), np.zeros(n)]))


def generate_special(kind: str, size: int) -> UnitDiskPacking:
    """Dispatch on ``kind`` in ``{"centered_hexagonal", "triangular", "linear"}``."""
    table = {
        "centered_hexagonal": generate_centered_hexagonal,
        "triangular": generate_triangular,
        "linear": generate_linear,
    }
    try:
        return table[kind](size)
    except KeyError:
        raise ValueError(f"unknown packing kind {kind!r}") from None


# --------------------------------------------------------------------------
# Text format
# --------------------------------------------------------------------------

def parse_points(text: str) -> np.ndarray:
    """Parse ``"x y"`` lines; ``#`` starts a comment, blank lines are skipped."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GeometryError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise GeometryError(f"line {lineno}: not a number pair: {raw!r}") from None
    return np.array(rows, dtype=float).reshape(-1, 2)


def format_points(points, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"{x:.17g} {y:.17g}" for x, y in as_points(points)]
    return "\n".join(lines) + "\n"


def read_packing(path) -> UnitDiskPacking:
    return UnitDiskPacking(parse_points(Path(path).read_text()))


def write_packing(path, packing: UnitDiskPacking, header: str | None = None) -> None:
    Path(path).write_text(format_points(packing.centers, header))


def read_polygon(path) -> ConvexPolygon:
    return ConvexPolygon(parse_points(Path(path).read_text()))


def write_polygon(path, polygon: ConvexPolygon, header: str | None = None) -> None:
    Path(path).write_text(format_points(polygon.vertices, header))
