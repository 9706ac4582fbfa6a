"""
Plane geometry kernel at unit-disk scale.

Points are plain ``numpy`` arrays of shape ``(2,)``; point lists are arrays of
shape ``(m, 2)``.  Polygons are stored counterclockwise.  Half-planes use the
outward-normal convention ``{p : p . normal <= offset}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import GeometryError, InfeasibleError, NotTangentPolygonError, OverlapError

# incidence / tangency at unit scale
TOL = 1e-9
# normalization of unit vectors
NORM_TOL = 1e-12
# tangency of a polygon side to a disk, as accepted from user input
TANGENT_TOL = 1e-6


def as_points(points) -> np.ndarray:
    """Coerce ``points`` to a float array of shape ``(m, 2)``."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GeometryError(f"expected an (m, 2) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError("point coordinates must be finite")
    return arr


def unit(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def cross2(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------
# Types
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HalfPlane:
    """The closed half-plane ``{p : p . normal <= offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float).reshape(2)
        if abs(np.hypot(n[0], n[1]) - 1.0) > NORM_TOL:
            raise GeometryError(f"half-plane normal {n} is not a unit vector")
        object.__setattr__(self, "normal", _readonly(n))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_angle(cls, theta: float, offset: float) -> "HalfPlane":
        return cls(unit(theta), offset)

    @property
    def angle(self) -> float:
        return math.atan2(self.normal[1], self.normal[0])

    def slack(self, points) -> np.ndarray:
        """Signed distance to the boundary line; positive inside."""
        return self.offset - as_points(points) @ self.normal

    def __repr__(self):
        return f"HalfPlane(normal=({self.normal[0]:.6g}, {self.normal[1]:.6g}), offset={self.offset:.6g})"


def _turn_angles(v: np.ndarray) -> np.ndarray:
    """Signed turning angle at each vertex (edge i-1 -> edge i)."""
    e = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(e[:, 0], e[:, 1])
    if np.any(lengths <= TOL):
        raise GeometryError("polygon has a zero-length edge")
    e_prev = np.roll(e, 1, axis=0)
    cr = e_prev[:, 0] * e[:, 1] - e_prev[:, 1] * e[:, 0]
    dt = e_prev[:, 0] * e[:, 0] + e_prev[:, 1] * e[:, 1]
    return np.arctan2(cr, dt)


def _segments_cross(p1, p2, q1, q2) -> bool:
    """True if closed segments p1p2 and q1q2 share a point."""
    d1 = cross2(q2 - q1, p1 - q1)
    d2 = cross2(q2 - q1, p2 - q1)
    d3 = cross2(p2 - p1, q1 - p1)
    d4 = cross2(p2 - p1, q2 - p1)
    if ((d1 > TOL and d2 < -TOL) or (d1 < -TOL and d2 > TOL)) and (
        (d3 > TOL and d4 < -TOL) or (d3 < -TOL and d4 > TOL)
    ):
        return True

    def on_seg(a, b, c, d):
        return abs(d) <= TOL and min(a[0], b[0]) - TOL <= c[0] <= max(a[0], b[0]) + TOL and (
            min(a[1], b[1]) - TOL <= c[1] <= max(a[1], b[1]) + TOL
        )

    return (
        on_seg(q1, q2, p1, d1)
        or on_seg(q1, q2, p2, d2)
        or on_seg(p1, p2, q1, d3)
        or on_seg(p1, p2, q2, d4)
    )


def is_simple(vertices) -> bool:
    """Edges meet only at the shared endpoints of consecutive edges."""
    v = as_points(vertices)
    m = len(v)
    if m < 3:
        return False
    for i in range(m):
        a, b = v[i], v[(i + 1) % m]
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            if _segments_cross(a, b, v[j], v[(j + 1) % m]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class SimplePolygon:
    """A simple (possibly non-convex) polygon in either orientation."""

    vertices: np.ndarray

    def __post_init__(self):
        v = as_points(self.vertices)
        if len(v) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        if not is_simple(v):
            raise GeometryError("polygon is not simple")
        object.__setattr__(self, "vertices", _readonly(v))

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        return polygon_area(self)

    @property
    def orientation(self) -> int:
        """+1 for counterclockwise, -1 for clockwise."""
        return 1 if _signed_area(self.vertices) > 0 else -1


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise.

    Edge ``i`` runs from vertex ``i`` to vertex ``i + 1``.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = as_points(self.vertices)
        if len(v) < 3:
            raise GeometryError("a convex polygon needs at least 3 vertices")
        e = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(e[:, 0], e[:, 1]) <= TOL):
            raise GeometryError("consecutive vertices coincide")
        turns = _turn_angles(v)
        if np.any(turns <= TOL) or abs(turns.sum() - 2 * math.pi) > 1e-6:
            raise GeometryError("vertices are not a strictly convex counterclockwise loop")
        object.__setattr__(self, "vertices", _readonly(v))

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        return polygon_area(self)

    @property
    def perimeter(self) -> float:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(e[:, 0], e[:, 1]).sum())

    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def halfplanes(self) -> list[HalfPlane]:
        """Supporting half-planes, one per edge, in edge order."""
        out = []
        for p, e in zip(self.vertices, self.edges()):
            n = np.array([e[1], -e[0]]) / math.hypot(e[0], e[1])
            out.append(HalfPlane(n, float(n @ p)))
        return out

    def normal_angles(self) -> np.ndarray:
        return np.array([h.angle for h in self.halfplanes()])

    def internal_angles(self) -> np.ndarray:
        return math.pi - _turn_angles(self.vertices)

    def contains(self, points, tol: float = TOL) -> np.ndarray:
        pts = as_points(points)
        ok = np.ones(len(pts), dtype=bool)
        for h in self.halfplanes():
            ok &= h.slack(pts) >= -tol
        return ok


@dataclass(frozen=True, eq=False)
class Segment:
    """Degenerate hull of collinear points.  Perimeter is twice the length."""

    start: np.ndarray
    end: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "start", _readonly(np.asarray(self.start, float).reshape(2)))
        object.__setattr__(self, "end", _readonly(np.asarray(self.end, float).reshape(2)))

    @property
    def length(self) -> float:
        return float(np.hypot(*(self.end - self.start)))

    @property
    def perimeter(self) -> float:
        return 2.0 * self.length

    @property
    def area(self) -> float:
        return 0.0

    @property
    def vertices(self) -> np.ndarray:
        if self.length <= TOL:
            return self.start.reshape(1, 2).copy()
        return np.vstack([self.start, self.end])


@dataclass(frozen=True, eq=False)
class Bounded:
    polygon: ConvexPolygon


@dataclass(frozen=True, eq=False)
class Strip:
    """Region between two parallel lines; ``lower.normal == -upper.normal``."""

    lower: HalfPlane
    upper: HalfPlane
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise GeometryError("strip width must be positive")
        if abs(cross2(self.lower.normal, self.upper.normal)) > NORM_TOL:
            raise GeometryError("strip boundary lines are not parallel")


@dataclass(frozen=True, eq=False)
class Unbounded:
    halfplanes: list = field(default_factory=list)


Region = Union[Bounded, Strip, Unbounded]
PolygonLike = Union[ConvexPolygon, SimplePolygon, np.ndarray, Sequence]


# --------------------------------------------------------------------------
# Operations
# --------------------------------------------------------------------------

def _vertices_of(poly) -> np.ndarray:
    if isinstance(poly, (ConvexPolygon, SimplePolygon)):
        return poly.vertices
    return as_points(poly)


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_area(poly: PolygonLike) -> float:
    """Shoelace area of a polygon given by its vertex loop.

    Raises
    ------
    GeometryError
        If fewer than three vertices are given or all vertices are collinear.
    """
    v = _vertices_of(poly)
    if len(v) < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    a = _signed_area(v)
    scale = max(1.0, float(np.abs(v).max()))
    if abs(a) <= TOL * scale:
        raise GeometryError("degenerate polygon (zero area)")
    return abs(a)


def polygon_perimeter(poly: PolygonLike) -> float:
    v = _vertices_of(poly)
    e = np.roll(v, -1, axis=0) - v
    return float(np.hypot(e[:, 0], e[:, 1]).sum())


def internal_angles(poly: PolygonLike) -> tuple[np.ndarray, int]:
    """Internal angle at every vertex and the number of reflex vertices.

    Works for either orientation; angles come back in vertex order and sum to
    ``(m - 2) * pi``.
    """
    v = _vertices_of(poly)
    if len(v) < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    turns = _turn_angles(v)
    total = turns.sum()
    if abs(abs(total) - 2 * math.pi) > 1e-6:
        raise GeometryError("vertex loop does not wind once (not a simple polygon)")
    orient = 1.0 if total > 0 else -1.0
    angles = math.pi - orient * turns
    reflex = int(np.count_nonzero(angles > math.pi + NORM_TOL))
    return angles, reflex


@dataclass(frozen=True)
class ParallelReport:
    is_parallel: bool
    reflex_equal: bool
    angles_equal_if_convex: bool


def parallel_invariants(P: PolygonLike, Q: PolygonLike, tol: float = TOL) -> ParallelReport:
    """Compare two polygons whose corresponding sides may be parallel.

    ``angles_equal_if_convex`` is the implication "if either polygon is convex
    then both are, with equal corresponding angles"; it is vacuously true when
    neither is convex.
    """
    a = _vertices_of(P)
    b = _vertices_of(Q)
    if len(a) != len(b):
        raise GeometryError(f"vertex counts differ ({len(a)} vs {len(b)})")
    if np.sign(_signed_area(a)) != np.sign(_signed_area(b)):
        raise GeometryError("polygons have opposite orientations")
    ea = np.roll(a, -1, axis=0) - a
    eb = np.roll(b, -1, axis=0) - b
    ua = ea / np.hypot(ea[:, 0], ea[:, 1])[:, None]
    ub = eb / np.hypot(eb[:, 0], eb[:, 1])[:, None]
    sines = ua[:, 0] * ub[:, 1] - ua[:, 1] * ub[:, 0]
    is_par = bool(np.all(np.abs(sines) <= tol))

    alpha, ra = internal_angles(a)
    beta, rb = internal_angles(b)
    if ra == 0 or rb == 0:
        angles_ok = ra == 0 and rb == 0 and bool(np.all(np.abs(alpha - beta) <= tol))
    else:
        angles_ok = True
    return ParallelReport(is_par, ra == rb, angles_ok)


def convex_hull(points) -> Union[ConvexPolygon, Segment]:
    """Counterclockwise convex hull; collinear input gives a :class:`Segment`."""
    pts = as_points(points)
    if len(pts) == 0:
        raise GeometryError("convex hull of an empty point set")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def half(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and cross2(out[-1] - out[-2], p - out[-2]) <= TOL:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return Segment(pts[0], pts[-1])
    return ConvexPolygon(np.array(hull))


def line_intersection(h1: HalfPlane, h2: HalfPlane) -> np.ndarray:
    """Intersection point of the two boundary lines."""
    A = np.array([h1.normal, h2.normal])
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det) <= NORM_TOL:
        raise GeometryError("boundary lines are parallel")
    b = np.array([h1.offset, h2.offset])
    return np.array(
        [(b[0] * A[1, 1] - b[1] * A[0, 1]) / det, (A[0, 0] * b[1] - A[1, 0] * b[0]) / det]
    )


def polygon_from_lines(halfplanes: Sequence[HalfPlane]) -> ConvexPolygon:
    """Polygon whose edge ``i`` lies on ``halfplanes[i]``.

    The half-planes must be sorted by normal angle (counterclockwise) and each
    must contribute a side of positive length.
    """
    k = len(halfplanes)
    verts = [line_intersection(halfplanes[i - 1], halfplanes[i]) for i in range(k)]
    return ConvexPolygon(np.array(verts))


def _box_lines(B: float) -> list[HalfPlane]:
    return [
        HalfPlane((0.0, -1.0), B),
        HalfPlane((1.0, 0.0), B),
        HalfPlane((0.0, 1.0), B),
        HalfPlane((-1.0, 0.0), B),
    ]


def halfplane_intersection(hs: Sequence[HalfPlane]) -> Region:
    """Intersect half-planes; classify the result as bounded, strip or unbounded.

    Clipping runs against a large box.  Every surviving vertex is then
    recomputed as the exact intersection of the two lines that produced it, so
    the size of the box does not leak into the coordinates.
    """
    hs = list(hs)
    if len(hs) < 2:
        raise GeometryError("need at least two half-planes")
    scale = 1.0 + max(abs(h.offset) for h in hs)
    B = 1e6 * scale
    box = _box_lines(B)
    lines = box + hs  # labels 0..3 are the box
    verts = [np.array([-B, -B]), np.array([B, -B]), np.array([B, B]), np.array([-B, B])]
    labels = [0, 1, 2, 3]  # label of the edge leaving each vertex

    for idx, h in enumerate(hs, start=4):
        m = len(verts)
        if m == 0:
            break
        s = [h.offset - float(v @ h.normal) for v in verts]
        nv, nl = [], []
        for i in range(m):
            j = (i + 1) % m
            a, b = verts[i], verts[j]
            sa, sb = s[i], s[j]
            if sa >= 0:
                nv.append(a)
                nl.append(labels[i])
                if sb < 0:
                    t = sa / (sa - sb)
                    nv.append(a + t * (b - a))
                    nl.append(idx)
            elif sb >= 0:
                t = sa / (sa - sb)
                nv.append(a + t * (b - a))
                nl.append(labels[i])
        verts, labels = nv, nl

    if len(verts) < 3:
        raise InfeasibleError("infeasible: empty intersection")
    # collapse repeated labels (zero-length pieces)
    keep_l = []
    for lab in labels:
        if not keep_l or keep_l[-1] != lab:
            keep_l.append(lab)
    if len(keep_l) > 1 and keep_l[0] == keep_l[-1]:
        keep_l.pop()
    if len(keep_l) < 3:
        raise InfeasibleError("infeasible: intersection has no interior")

    if any(lab < 4 for lab in keep_l):
        return _classify_unbounded(hs, [lines[lab] for lab in keep_l if lab >= 4])

    exact = _exact_loop([lines[lab] for lab in keep_l])
    if exact is None:
        raise InfeasibleError("infeasible: intersection has no interior")
    return Bounded(exact)


def _exact_loop(sides: list[HalfPlane]) -> ConvexPolygon | None:
    """Rebuild the vertex loop from its side lines, dropping zero-length sides."""
    sides = list(sides)
    while len(sides) >= 3:
        verts = [line_intersection(sides[i - 1], sides[i]) for i in range(len(sides))]
        # side i runs from verts[i] to verts[i+1]
        lengths = [
            float(np.hypot(*(verts[(i + 1) % len(sides)] - verts[i]))) for i in range(len(sides))
        ]
        i_min = int(np.argmin(lengths))
        if lengths[i_min] > TOL:
            try:
                return ConvexPolygon(np.array(verts))
            except GeometryError:
                return None
        del sides[i_min]
    return None


def _classify_unbounded(hs: list[HalfPlane], active: list[HalfPlane]) -> Region:
    ref = hs[0].normal
    if all(abs(cross2(ref, h.normal)) <= NORM_TOL for h in hs):
        up = [h for h in hs if h.normal @ ref > 0]
        down = [h for h in hs if h.normal @ ref < 0]
        if up and down:
            hu = min(up, key=lambda h: h.offset)
            hd = min(down, key=lambda h: h.offset)
            width = hu.offset + hd.offset
            if width <= TOL:
                raise InfeasibleError("infeasible: empty strip")
            return Strip(lower=hd, upper=hu, width=width)
    return Unbounded(active)


def outer_common_tangents(c1, c2) -> tuple[HalfPlane, HalfPlane]:
    """The two outer common tangents of unit disks centred at ``c1``, ``c2``.

    Both half-planes contain both disks.  The first lies to the left of the
    direction ``c1 -> c2``.
    """
    c1 = np.asarray(c1, float).reshape(2)
    c2 = np.asarray(c2, float).reshape(2)
    d = c2 - c1
    dist = math.hypot(d[0], d[1])
    if dist <= TOL:
        raise GeometryError("centres coincide")
    if dist < 2.0 - TOL:
        raise OverlapError(f"overlap: centres are {dist:.6g} apart")
    u = d / dist
    n = np.array([-u[1], u[0]])
    return HalfPlane(n, float(c1 @ n) + 1.0), HalfPlane(-n, float(-(c1 @ n)) + 1.0)


def shrink(P: ConvexPolygon, packing, disk_index: int) -> ConvexPolygon:
    """Shrink of ``P`` for one disk of a packing it contains.

    Every side of ``P`` must touch some disk.  Each side is replaced by the
    parallel tangent of the chosen disk on the same side, so vertex ``i`` of
    the result corresponds to vertex ``i`` of ``P``.
    """
    centers = as_points(getattr(packing, "centers", packing))
    if not 0 <= disk_index < len(centers):
        raise IndexError(f"disk index {disk_index} out of range")
    c = centers[disk_index]
    new = []
    for i, h in enumerate(P.halfplanes()):
        slack = h.slack(centers)
        if not np.any(np.abs(slack - 1.0) <= TANGENT_TOL):
            raise NotTangentPolygonError(f"not a tangent polygon: side {i} touches no disk")
        if slack[disk_index] < 1.0 - TANGENT_TOL:
            raise GeometryError(f"disk {disk_index} is not inside the polygon")
        new.append(HalfPlane(h.normal, float(c @ h.normal) + 1.0))
    return polygon_from_lines(new)


def cap_area_unit(alpha: float) -> float:
    """Area between a unit disk and two of its tangents meeting at angle ``alpha``.

    This is the kite spanned by the vertex, the two tangent points and the
    centre, minus the circular sector of angle ``pi - alpha``.
    """
    if not 0.0 < alpha < math.pi:
        raise GeometryError(f"cap angle must lie in (0, pi), got {alpha}")
    return 1.0 / math.tan(alpha / 2.0) - (math.pi - alpha) / 2.0
