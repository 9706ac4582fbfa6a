import math

import numpy as np
import pytest

from kgonpack import bounds
from kgonpack.errors import NoFeasibleCandidateError
from kgonpack.optimizer import Candidate, SolveConfig, evaluate, format_result, solve
from kgonpack.packing import parse_points

from oracles import polygon_vertices_from_lines, random_tangent_polygon, two_disk_triangle_oracle

SQUARE_ANGLES = np.array([0.0, math.pi / 2, math.pi, 3 * math.pi / 2])
CHEAP = dict(restarts=1, max_iters=150)


class TestEvaluate:
    def test_square(self):
        ev = evaluate(Candidate(np.zeros((1, 2)), SQUARE_ANGLES, np.ones(4)))
        assert ev.area == pytest.approx(4.0, abs=1e-12)
        assert ev.violation == 0.0 and ev.effective_sides == 4

    def test_disk_sticks_out(self):
        ev = evaluate(Candidate(np.zeros((1, 2)), SQUARE_ANGLES, np.full(4, 0.9)))
        assert ev.violation == pytest.approx(0.1, abs=1e-12)

    def test_rectangle(self):
        c = np.array([[0.0, 0.0], [2.0, 0.0]])
        ev = evaluate(Candidate.supporting(c, SQUARE_ANGLES))
        assert ev.area == pytest.approx(8.0, abs=1e-12) and ev.violation == 0.0

    def test_overlap_reported(self):
        c = np.array([[0.0, 0.0], [1.5, 0.0]])
        ev = evaluate(Candidate.supporting(c, SQUARE_ANGLES))
        assert ev.violation == pytest.approx(0.5, abs=1e-12)

    def test_redundant_side_penalised(self):
        angles = np.array([0.0, math.pi / 4, math.pi / 2, math.pi, 3 * math.pi / 2])
        offsets = np.array([1.0, 5.0, 1.0, 1.0, 1.0])
        ev = evaluate(Candidate(np.zeros((1, 2)), angles, offsets))
        assert ev.effective_sides == 4 and ev.violation == pytest.approx(1.0)

    def test_unbounded(self):
        ev = evaluate(Candidate(np.zeros((1, 2)), np.array([0.0, 0.5, 1.0]), np.ones(3)))
        assert math.isinf(ev.area) and ev.violation >= 1.0

    def test_random_against_cramer(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            c, a, d = random_tangent_polygon(rng)
            ev = evaluate(Candidate(c, a, d))
            v = polygon_vertices_from_lines(a, d)
            x, y = v[:, 0], v[:, 1]
            shoelace = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
            if ev.effective_sides == len(a):
                assert ev.area == pytest.approx(shoelace, rel=1e-9)
                assert ev.violation == 0.0


class TestSolve:
    def test_single_disk_square(self):
        r = solve(1, 4, SolveConfig(restarts=2))
        assert r.area == pytest.approx(4.0, abs=1e-4)

    def test_three_disk_triangle(self):
        r = solve(3, 3, SolveConfig(restarts=4))
        assert r.area == pytest.approx(6 + 4 * math.sqrt(3), abs=1e-3)

    def test_deterministic(self):
        a = solve(2, 5, SolveConfig(restarts=3, seed=4, max_iters=300))
        b = solve(2, 5, SolveConfig(restarts=3, seed=4, max_iters=300))
        assert a.area == b.area and a.history == b.history
        assert np.array_equal(a.best.centers, b.best.centers)
        assert np.array_equal(a.best.offsets, b.best.offsets)

    def test_result_feasible(self):
        r = solve(3, 5, SolveConfig(restarts=2, max_iters=400))
        ev = evaluate(r.best)
        assert ev.violation < 1e-7 and ev.effective_sides == 5
        assert ev.area == pytest.approx(r.area, abs=1e-12)
        assert r.gap == pytest.approx(r.area - bounds.kgon_bound(3, 5))

    def test_never_beats_bound(self):
        rng = np.random.default_rng(1)
        for i in range(50):
            n, k = int(rng.integers(1, 7)), int(rng.integers(3, 9))
            r = solve(n, k, SolveConfig(seed=i, **CHEAP))
            assert r.area >= bounds.kgon_bound(n, k) - 1e-6
            assert evaluate(r.best).violation < 1e-7

    @pytest.mark.parametrize("n, k", [(0, 4), (7, 4), (2, 2), (2, 9)])
    def test_range(self, n, k):
        with pytest.raises(ValueError):
            solve(n, k, SolveConfig(**CHEAP))

    def test_overrides(self):
        r = solve(1, 3, restarts=1, seed=5)
        assert r.restarts_used == 1 and r.seed == 5
        with pytest.raises(TypeError):
            solve(1, 3, SolveConfig(), restarts=1)

    def test_no_feasible(self, monkeypatch):
        import kgonpack.optimizer as opt

        monkeypatch.setattr(opt, "evaluate", lambda c: opt.Evaluation(1.0, 0.5, c.k))
        with pytest.raises(NoFeasibleCandidateError, match="least violation"):
            solve(1, 3, SolveConfig(**CHEAP))

    def test_format(self):
        r = solve(1, 3, SolveConfig(restarts=1))
        text = format_result(r)
        assert parse_points("\n".join(l for l in text.splitlines() if not l.startswith("side"))).shape == (1, 2)
        sides = [l.split() for l in text.splitlines() if l.startswith("side")]
        assert len(sides) == 3
        assert [float(s[1]) for s in sides] == pytest.approx(list(r.best.normals), abs=0)
        assert "area = " in text and "gap = " in text and "seed = 0" in text


def test_isosceles_oracle_value():
    beta, area = two_disk_triangle_oracle()
    assert beta == pytest.approx(math.pi / 4, abs=1e-6)
    assert area == pytest.approx(6 + 4 * math.sqrt(2), abs=1e-9)
