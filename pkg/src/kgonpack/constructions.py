"""
Explicit optimal polygons for the tight (n, k) cases, and their certification.

Every construction ends as a list of half-planes sorted by normal angle; the
polygon is the loop of consecutive line intersections.  Certification is done
independently by :func:`verify_optimal`, which only looks at the polygon and
the disk centres.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .errors import ConstructionError, ContainmentError, GeometryError, KgonError
from .geom_core import (
    TANGENT_TOL,
    TOL,
    Bounded,
    ConvexPolygon,
    HalfPlane,
    as_points,
    internal_angles,
    line_intersection,
    polygon_area,
    polygon_from_lines,
    unit,
)
from .packing import (
    PackingTag,
    UnitDiskPacking,
    classify,
    generate_linear,
    generate_triangular,
    generate_wegner,
    hull_metrics,
    tangent_polygon,
)

SQRT3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EqualityReport:
    """Outcome of checking the equality conditions of the k-gon area bound."""

    each_side_tangent: bool
    wegner_packed: bool
    caps_unit_disk: bool
    equiangular: bool
    area: float
    bound: float

    @property
    def optimal(self) -> bool:
        return (
            self.each_side_tangent
            and self.wegner_packed
            and self.caps_unit_disk
            and self.equiangular
            and abs(self.area - self.bound) < TOL
        )


@dataclass(frozen=True, eq=False)
class ConstructionOutput:
    polygon: ConvexPolygon
    packing: UnitDiskPacking
    report: EqualityReport


def _tangent_halfplane(theta: float, center) -> HalfPlane:
    n = unit(theta)
    return HalfPlane(n, float(np.asarray(center) @ n) + 1.0)


def unit_kgon(k: int, center=(0.0, 0.0), rotation: float = -math.pi / 2) -> ConvexPolygon:
    """Regular k-gon with apothem 1 around ``center``.

    ``rotation`` is the direction of the first outward side normal; the default
    puts a side at the bottom.
    """
    if k < 3:
        raise GeometryError(f"k must be >= 3, got {k}")
    return polygon_from_lines(
        [_tangent_halfplane(rotation + TWO_PI * j / k, center) for j in range(k)]
    )


def _sorted_lines(lines: list[HalfPlane]) -> list[HalfPlane]:
    return sorted(lines, key=lambda h: h.angle % TWO_PI)


# --------------------------------------------------------------------------
# n = 2
# --------------------------------------------------------------------------

def _two_disk_polygon(k: int) -> tuple[ConvexPolygon, UnitDiskPacking]:
    packing = generate_linear(2)
    o1, o2 = packing.centers
    if k % 2 == 0:
        left_sides = right_sides = k // 2
    else:
        left_sides, right_sides = (k - 1) // 2, (k + 1) // 2
    # half of the unit 2m-gon on each end: normals from pi/2 to 3pi/2 (left),
    # 3pi/2 to 5pi/2 (right), both including the top and bottom sides
    lines = [HalfPlane((0.0, 1.0), 1.0), HalfPlane((0.0, -1.0), 1.0)]
    for j in range(1, left_sides):
        lines.append(_tangent_halfplane(math.pi / 2 + math.pi * j / left_sides, o1))
    for j in range(1, right_sides):
        lines.append(_tangent_halfplane(-math.pi / 2 + math.pi * j / right_sides, o2))
    return polygon_from_lines(_sorted_lines(lines)), packing


def construct_two_disks(k: int) -> ConstructionOutput:
    """Two tangent disks: a 2x2 rectangle between the centres with half unit polygons glued on.

    For even ``k = 2m`` both halves come from the unit 2m-gon.  For odd
    ``k = 2m + 1`` the left half comes from the unit 2m-gon and the right one
    from the unit (2m + 2)-gon; the area bound is not attained then.
    """
    if k == 3:
        raise ConstructionError("k = 3 with two disks has no paste construction; use optimizer")
    if k < 3:
        raise ConstructionError(f"k must be >= 4, got {k}")
    polygon, packing = _two_disk_polygon(k)
    return ConstructionOutput(polygon, packing, verify_optimal(polygon, packing, 2, k))


# --------------------------------------------------------------------------
# Cap replacement
# --------------------------------------------------------------------------

def _cap_disk(centers: np.ndarray, h1: HalfPlane, h2: HalfPlane) -> int | None:
    """Index of a disk tangent to both lines, if any."""
    s1 = h1.slack(centers)
    s2 = h2.slack(centers)
    hit = np.nonzero((np.abs(s1 - 1.0) <= TANGENT_TOL) & (np.abs(s2 - 1.0) <= TANGENT_TOL))[0]
    return int(hit[0]) if len(hit) else None


def _refine_caps(lines: list[HalfPlane], centers: np.ndarray, k: int) -> list[HalfPlane]:
    """Replace every cap by the matching run of sides of the unit k-gon of its disk.

    ``lines`` must already be sides of an equiangular polygon whose exterior
    angles are multiples of ``2 pi / k``.  Each cap must belong to one disk.
    """
    step = TWO_PI / k
    out: list[HalfPlane] = []
    m = len(lines)
    for i in range(m):
        h1, h2 = lines[i], lines[(i + 1) % m]
        out.append(h1)
        gap = (h2.angle - h1.angle) % TWO_PI
        parts = int(round(gap / step))
        if abs(parts * step - gap) > 1e-9:
            raise GeometryError("cap angle is not a multiple of the k-gon exterior angle")
        if parts <= 1:
            continue
        disk = _cap_disk(centers, h1, h2)
        if disk is None:
            raise GeometryError(f"cap between sides {i} and {i + 1} is not a unit-disk cap")
        for j in range(1, parts):
            out.append(_tangent_halfplane(h1.angle + j * step, centers[disk]))
    return out


# --------------------------------------------------------------------------
# n in {3, 6}, k = 3k'
# --------------------------------------------------------------------------

def construct_triangle_family(n: int, k: int) -> ConstructionOutput:
    """Triangular packing of 3 or 6 disks in its tangent triangle, caps refined to ``k`` sides."""
    if n not in (3, 6):
        raise ConstructionError(f"triangle family needs n in {{3, 6}}, got {n}")
    if k < 3 or k % 3:
        raise ConstructionError(f"triangle family needs k divisible by 3, got {k}")
    packing = generate_triangular(2 if n == 3 else 3)
    region = tangent_polygon(packing)
    assert isinstance(region, Bounded)
    lines = _sorted_lines(region.polygon.halfplanes())
    lines = _refine_caps(lines, packing.centers, k)
    polygon = polygon_from_lines(lines)
    return ConstructionOutput(polygon, packing, verify_optimal(polygon, packing, n, k))


# --------------------------------------------------------------------------
# k = 6k'
# --------------------------------------------------------------------------

def _cut_sharp_corners(lines: list[HalfPlane], centers: np.ndarray) -> list[HalfPlane]:
    """Cut every 60-degree corner by the tangent of the nearest disk perpendicular to its bisector.

    Corners are processed by decreasing angle deficiency, ties by lowest index.
    """
    lines = list(lines)
    while True:
        m = len(lines)
        verts = [line_intersection(lines[i - 1], lines[i]) for i in range(m)]
        # corner i sits between line i-1 and line i
        turns = [(lines[i].angle - lines[i - 1].angle) % TWO_PI for i in range(m)]
        sharp = [i for i in range(m) if turns[i] > math.pi / 2]
        if not sharp:
            return lines
        i = max(sharp, key=lambda t: (turns[t], -t))
        v = verts[i]
        d = np.hypot(*(centers - v).T)
        nearest = centers[int(np.argmin(d))]
        bis = lines[i - 1].angle + turns[i] / 2.0
        lines.insert(i, _tangent_halfplane(bis, nearest))


def construct_hexagon_family(n: int, k: int) -> ConstructionOutput:
    """Wegner packing of ``n`` disks in an equiangular hexagon, caps refined to ``k`` sides."""
    if n == 2:
        raise ConstructionError("hexagon family excludes n = 2")
    if n < 1 or n > bounds.MAX_NONEXCEPTIONAL:
        raise ConstructionError(f"hexagon family needs 1 <= n <= 120, got {n}")
    if k < 6 or k % 6:
        raise ConstructionError(f"hexagon family needs k divisible by 6, got {k}")
    packing = generate_wegner(n)
    c = packing.centers
    if n == 1:
        lines = [_tangent_halfplane(-math.pi / 2 + j * math.pi / 3, c[0]) for j in range(6)]
    else:
        region = tangent_polygon(packing)
        assert isinstance(region, Bounded)
        lines = _cut_sharp_corners(_sorted_lines(region.polygon.halfplanes()), c)
    lines = _refine_caps(lines, c, k)
    polygon = polygon_from_lines(lines)
    return ConstructionOutput(polygon, packing, verify_optimal(polygon, packing, n, k))


def construct(n: int, k: int) -> ConstructionOutput:
    """Pick the construction that applies to ``(n, k)``."""
    if n == 2:
        return construct_two_disks(k)
    if n in (3, 6) and k % 3 == 0:
        return construct_triangle_family(n, k)
    if k % 6 == 0 and n <= bounds.MAX_NONEXCEPTIONAL:
        return construct_hexagon_family(n, k)
    if n == 1:
        packing = UnitDiskPacking(np.zeros((1, 2)))
        polygon = unit_kgon(k)
        return ConstructionOutput(polygon, packing, verify_optimal(polygon, packing, 1, k))
    raise ConstructionError(f"no construction known for n = {n}, k = {k}; use the optimizer")


# --------------------------------------------------------------------------
# Certification
# --------------------------------------------------------------------------

def verify_optimal(P: ConvexPolygon, packing, n: int, k: int) -> EqualityReport:
    """Check the equality conditions of the k-gon bound for ``P`` and the packing.

    Raises
    ------
    ContainmentError
        If some disk is not inside ``P``.
    """
    centers = as_points(getattr(packing, "centers", packing))
    if len(P) != k:
        raise GeometryError(f"polygon has {len(P)} sides, expected {k}")
    if len(centers) != n:
        raise GeometryError(f"packing has {len(centers)} disks, expected {n}")
    sides = P.halfplanes()
    slack = np.array([h.slack(centers) for h in sides])  # (k, n)
    if np.any(slack < 1.0 - TOL):
        side, disk = np.unravel_index(int(np.argmin(slack)), slack.shape)
        raise ContainmentError(f"disk {disk} crosses side {side}")
    touching = np.abs(slack - 1.0) <= TANGENT_TOL
    each_side_tangent = bool(np.all(touching.any(axis=1)))
    caps = bool(all(np.any(touching[i - 1] & touching[i]) for i in range(k)))
    angles, _ = internal_angles(P)
    equiangular = bool(np.all(np.abs(angles - (k - 2) * math.pi / k) <= TOL))
    wegner = classify(centers).tag is PackingTag.WEGNER
    return EqualityReport(
        each_side_tangent=each_side_tangent,
        wegner_packed=wegner,
        caps_unit_disk=caps,
        equiangular=equiangular,
        area=polygon_area(P),
        bound=bounds.kgon_bound(n, k),
    )


# --------------------------------------------------------------------------
# Three disks in a quadrilateral: reference configuration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ReferenceAreas:
    hull: float  # convex hull of the three disks
    quad_ABCA: float  # tangent triangle with one corner cut: A'BCA''
    tri_BQC: float  # triangle between two corner cuts and side BC
    rect_area: float  # 2 x 6 rectangle around three disks in a row


def _corner_cut(vertex, center) -> HalfPlane:
    """Tangent of the disk perpendicular to vertex->centre, on the vertex side."""
    d = np.asarray(center) - np.asarray(vertex)
    u = -d / math.hypot(*d)  # outward, pointing at the vertex
    return HalfPlane(u, float(np.asarray(center) @ u) + 1.0)


def theorem6_reference_areas() -> ReferenceAreas:
    """Areas in the three-disk, four-sided configuration, built from the geometry.

    Three tangent disks sit in their tangent triangle ABC.  At each corner the
    disk there is cut off by its tangent perpendicular to the corner bisector,
    on the corner side, so the disk touches the cut at the cut's midpoint.
    """
    packing = generate_triangular(2)
    c = packing.centers
    region = tangent_polygon(packing)
    assert isinstance(region, Bounded)
    tri = region.polygon
    verts = tri.vertices
    # label the corner nearest each disk: A <- disk 0, B <- disk 1, C <- disk 2
    corner = [verts[int(np.argmin(np.hypot(*(verts - ci).T)))] for ci in c]
    A, B, C = corner
    sides = {frozenset(("A", "B")): None, frozenset(("B", "C")): None, frozenset(("C", "A")): None}
    names = {"A": A, "B": B, "C": C}
    for h in tri.halfplanes():
        on = frozenset(nm for nm, p in names.items() if abs(h.slack(p)[0]) <= 1e-9)
        sides[on] = h
    AB, BC, CA = sides[frozenset("AB")], sides[frozenset("BC")], sides[frozenset("CA")]
    cutA, cutB, cutC = _corner_cut(A, c[0]), _corner_cut(B, c[1]), _corner_cut(C, c[2])

    A1, A2 = line_intersection(cutA, AB), line_intersection(cutA, CA)
    quad = polygon_area(np.array([A1, B, C, A2]))

    B1 = line_intersection(cutB, BC)
    C2 = line_intersection(cutC, BC)
    Q = line_intersection(cutB, cutC)
    tri_bqc = polygon_area(np.array([B1, Q, C2]))

    rect = tangent_polygon(generate_linear(3))
    ends = [HalfPlane((-1.0, 0.0), 1.0), HalfPlane((1.0, 0.0), 5.0)]
    rect_poly = polygon_from_lines(_sorted_lines([rect.lower, rect.upper] + ends))

    return ReferenceAreas(
        hull=hull_metrics(packing).hull_area,
        quad_ABCA=quad,
        tri_BQC=tri_bqc,
        rect_area=polygon_area(rect_poly),
    )
