import math

import numpy as np
import pytest

from kgonpack import bounds
from kgonpack.constructions import (
    construct,
    construct_hexagon_family,
    construct_triangle_family,
    construct_two_disks,
    theorem6_reference_areas,
    unit_kgon,
    verify_optimal,
)
from kgonpack.errors import ConstructionError, ContainmentError, GeometryError
from kgonpack.geom_core import ConvexPolygon, polygon_area
from kgonpack.packing import generate_linear

SQ3 = math.sqrt(3.0)

SWEEP = (
    [(2, k) for k in (4, 6, 8, 10, 12)]
    + [(n, k) for n in (3, 6) for k in (3, 6, 9, 12)]
    + [(n, k) for n in range(1, 21) if n != 2 for k in (6, 12)]
    + [(n, 6) for n in (1, 7, 19)]
)


def side_lengths(P):
    e = P.edges()
    return np.hypot(e[:, 0], e[:, 1])


class TestUnitKgon:
    @pytest.mark.parametrize("k, side, area", [(4, 2.0, 4.0), (3, 2 * SQ3, 3 * SQ3), (6, 2 / SQ3, 2 * SQ3)])
    def test_examples(self, k, side, area):
        P = unit_kgon(k)
        assert np.allclose(side_lengths(P), side, atol=1e-12)
        assert P.area == pytest.approx(area, abs=1e-12)

    def test_apothem_one(self):
        P = unit_kgon(9, center=(2.0, -3.0))
        for h in P.halfplanes():
            assert h.slack([(2.0, -3.0)])[0] == pytest.approx(1.0, abs=1e-12)


class TestTwoDisks:
    def test_rectangle(self):
        out = construct_two_disks(4)
        assert out.polygon.area == pytest.approx(8.0, abs=1e-12)
        assert out.report.optimal

    def test_hexagon(self):
        out = construct_two_disks(6)
        assert out.polygon.area == pytest.approx(4 + 2 * SQ3, abs=1e-12)
        assert out.report.optimal

    def test_pentagon_above_bound(self):
        out = construct_two_disks(5)
        assert out.polygon.area == pytest.approx(6 + SQ3, abs=1e-12)
        assert out.polygon.area > bounds.kgon_bound(2, 5)
        assert bounds.kgon_bound(2, 5) == pytest.approx(7.632713, abs=1e-6)
        assert not out.report.optimal

    @pytest.mark.parametrize("k", [5, 7, 9, 11])
    def test_odd_k_contains_disks(self, k):
        out = construct_two_disks(k)
        assert len(out.polygon) == k
        for h in out.polygon.halfplanes():
            assert h.slack(out.packing.centers).min() >= 1 - 1e-9

    def test_triangle_goes_to_optimizer(self):
        with pytest.raises(ConstructionError, match="optimizer"):
            construct_two_disks(3)


class TestFamilies:
    def test_triangle_three(self):
        out = construct_triangle_family(3, 3)
        assert np.allclose(side_lengths(out.polygon), 2 + 2 * SQ3, atol=1e-12)
        assert out.polygon.area == pytest.approx(6 + 4 * SQ3, abs=1e-12)

    def test_triangle_three_six(self):
        out = construct_triangle_family(3, 6)
        assert out.polygon.area == pytest.approx(6 + 3 * SQ3, abs=1e-12)
        assert polygon_area(out.polygon.vertices) == pytest.approx(bounds.kgon_bound(3, 6), abs=1e-12)

    def test_triangle_six_three(self):
        out = construct_triangle_family(6, 3)
        assert out.polygon.area == pytest.approx(12 + 7 * SQ3, abs=1e-12)

    def test_hexagon_seven(self):
        out = construct_hexagon_family(7, 6)
        assert np.allclose(side_lengths(out.polygon), 2 + 2 / SQ3, atol=1e-12)
        assert out.polygon.area == pytest.approx(12 + 8 * SQ3, abs=1e-9)

    def test_hexagon_one(self):
        assert construct_hexagon_family(1, 6).polygon.area == pytest.approx(2 * SQ3, abs=1e-12)

    def test_families_agree(self):
        a = construct_hexagon_family(3, 6).polygon.area
        b = construct_triangle_family(3, 6).polygon.area
        assert a == pytest.approx(b, abs=1e-12) == pytest.approx(6 + 3 * SQ3, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 4, 5, 8, 10, 13, 20, 37, 50])
    @pytest.mark.parametrize("k", [6, 12, 18])
    def test_hexagon_family_equiangular(self, n, k):
        ang, reflex = construct_hexagon_family(n, k).polygon.internal_angles(), 0
        assert np.all(np.abs(ang - (k - 2) * math.pi / k) <= 1e-9)

    def test_bad_arguments(self):
        with pytest.raises(ConstructionError):
            construct_triangle_family(4, 3)
        with pytest.raises(ConstructionError):
            construct_hexagon_family(5, 9)

    def test_dispatch_errors(self):
        with pytest.raises(ConstructionError):
            construct(2, 3)
        with pytest.raises(ConstructionError):
            construct(4, 5)


class TestSweep:
    @pytest.mark.parametrize("n, k", SWEEP)
    def test_optimal(self, n, k):
        out = construct(n, k)
        rep = verify_optimal(out.polygon, out.packing, n, k)
        assert rep.optimal
        assert abs(rep.area - bounds.kgon_bound(n, k)) < 1e-9
        # cap replacement keeps every disk inside
        for h in out.polygon.halfplanes():
            assert h.slack(out.packing.centers).min() >= 1 - 1e-9


class TestVerify:
    def test_rectangle(self):
        out = construct_two_disks(4)
        rep = verify_optimal(out.polygon, out.packing, 2, 4)
        assert rep.each_side_tangent and rep.wegner_packed and rep.caps_unit_disk and rep.equiangular

    def test_long_rectangle(self):
        P = ConvexPolygon([[-1, -1], [3.5, -1], [3.5, 1], [-1, 1]])
        rep = verify_optimal(P, generate_linear(2), 2, 4)
        assert not rep.each_side_tangent and not rep.optimal
        assert rep.area == pytest.approx(9.0)

    def test_triangle(self):
        out = construct_triangle_family(3, 3)
        assert verify_optimal(out.polygon, out.packing.centers, 3, 3).optimal

    def test_containment_error(self):
        P = ConvexPolygon([[-1, -1], [2.5, -1], [2.5, 1], [-1, 1]])
        with pytest.raises(ContainmentError):
            verify_optimal(P, generate_linear(2), 2, 4)

    def test_count_mismatch(self):
        out = construct_two_disks(4)
        with pytest.raises(GeometryError):
            verify_optimal(out.polygon, out.packing, 2, 5)
        with pytest.raises(GeometryError):
            verify_optimal(out.polygon, out.packing, 3, 4)

    def test_non_wegner_packing_flagged(self):
        # same square-ish box but disks not touching
        P = ConvexPolygon([[-1, -1], [4, -1], [4, 1], [-1, 1]])
        rep = verify_optimal(P, [[0, 0], [3, 0]], 2, 4)
        assert rep.each_side_tangent and not rep.wegner_packed and not rep.optimal


class TestReferenceAreas:
    def test_closed_forms(self):
        r = theorem6_reference_areas()
        assert r.hull == pytest.approx(math.pi + 6 + SQ3, abs=1e-9)
        assert r.tri_BQC == pytest.approx((4 + 2 * SQ3) / SQ3, abs=1e-9)
        assert r.quad_ABCA == pytest.approx((11 + 6 * SQ3) / SQ3, abs=1e-9)
        assert r.rect_area == 12.0

    def test_strict_chain(self):
        r = theorem6_reference_areas()
        assert r.quad_ABCA > r.rect_area > bounds.kgon_bound(3, 4)
