import math
from fractions import Fraction

import pytest

from origami7.configs import A7_CONFIG
from origami7.errors import ChartError, GeometryError, NotAParabolaError
from origami7.geometry import (
    FoldConfig,
    FoldSolution,
    Line,
    ParabolaFold,
    Point,
    al6ab8_residual,
    perpendicular_bisector,
    reflect_point,
    tangent_at,
    verify_AL6ab8,
)
from origami7.intersect import fold_solution_from_point, intersect_config

from conftest import rand_rat

H = Fraction(1, 2)


def test_line_normalization():
    assert Line(2, 4, -6) == Line(-1, -2, 3) == Line(1, 2, -3)
    assert Line(Fraction(1, 2), 0, 1) == Line(1, 0, 2)
    with pytest.raises(GeometryError):
        Line(0, 0, 1)


def test_chart():
    assert Line(2, 4, 2).chart() == (1, 2)
    with pytest.raises(ChartError):
        Line(1, 1, 0).chart()


class TestReflect:
    def test_across_y_equals_1(self):
        assert reflect_point(Point(0, 0), Line(0, 1, -1)) == Point(0, 2)

    def test_fixed_points(self, rng):
        l = Line(3, -2, 5)
        for _ in range(10):
            x = rand_rat(rng)
            p = Point(x, (3 * x + 5) / 2)
            assert reflect_point(p, l) == p

    def test_bisector_swaps(self):
        assert reflect_point(Point(1, 2), perpendicular_bisector(Point(1, 2), Point(3, 4))) == Point(3, 4)

    def test_involution(self, rng):
        for _ in range(20):
            l = Line(rand_rat(rng, nonzero=True), rand_rat(rng), rand_rat(rng))
            p = Point(rand_rat(rng), rand_rat(rng))
            assert reflect_point(reflect_point(p, l), l) == p

    def test_float_inputs_stay_float(self):
        q = reflect_point(Point(0.5, 0.0), Line(0.0, 1.0, -1.0))
        assert isinstance(q.x, float) and q.as_float() == pytest.approx((0.5, 2.0))


class TestBisector:
    def test_axis_cases(self):
        assert perpendicular_bisector(Point(0, 0), Point(2, 0)) == Line(1, 0, -1)
        assert perpendicular_bisector(Point(0, 0), Point(0, 2)) == Line(0, 1, -1)

    def test_same_point(self):
        with pytest.raises(GeometryError):
            perpendicular_bisector(Point(1, 1), Point(1, 1))


class TestParabola:
    par = ParabolaFold(Point(0, 1), Line(0, 1, 1))  # y = x^2/4

    def test_vertex_tangent(self):
        foot = Point(0, -1)
        assert self.par.tangent_at_foot(foot) == Line(0, 1, 0)

    def test_tangent_slope_matches_derivative(self):
        l = self.par.tangent_at_foot(Point(2, -1))
        assert l == Line(1, -1, -1)  # y = x - 1
        for x0 in (Fraction(-3), Fraction(1, 3), Fraction(5, 2)):
            t = self.par.tangent_at_foot(Point(x0, -1))
            assert t.slope() == x0 / 2  # d/dx x^2/4
            assert t.contains(Point(x0, x0 * x0 / 4))

    def test_focus_reflects_onto_directrix(self, rng):
        par = ParabolaFold(Point(H, -2), Line(3, 1, -4))
        for _ in range(50):
            u = rand_rat(rng, 40, 7)
            assert par.directrix.contains(reflect_point(par.focus, tangent_at(par, u)))

    def test_point_at_is_on_tangent_and_parabola(self, rng):
        par = ParabolaFold(Point(1, 2), Line(1, -1, 3))
        for _ in range(20):
            u = rand_rat(rng)
            p = par.point_at(u)
            assert par.tangent_at(u).contains(p)
            assert p.dist2(par.focus) == par.directrix.dist2(p)

    def test_focus_on_directrix(self):
        with pytest.raises(NotAParabolaError):
            ParabolaFold(Point(0, -1), Line(0, 1, 1))


class TestAL6ab8:
    def test_a7_solutions_verify(self):
        inter = intersect_config(A7_CONFIG, precision=1e-30)
        assert len(inter.points) == 3
        for p in inter.points:
            sol = fold_solution_from_point(A7_CONFIG, p.point)
            assert verify_AL6ab8(A7_CONFIG, sol, 1e-9)

    def test_perturbed_fold_fails(self):
        p = intersect_config(A7_CONFIG).points[0]
        sol = fold_solution_from_point(A7_CONFIG, p.point)
        l1 = sol.l1
        k = Fraction(1, 1000)
        bent = Line(l1.u + k * l1.v, l1.v, l1.w)
        bad = FoldSolution(bent, sol.l2, sol.G, al6ab8_residual(A7_CONFIG, bent, sol.l2))
        assert not verify_AL6ab8(A7_CONFIG, bad, 1e-6)

    def test_exact_synthetic_solution(self):
        # build a configuration around a chosen rational G so the residual is exactly zero
        G = Point(1, 3)
        Q, S = Point(-1, 1), Point(2, 0)
        l1, l2 = perpendicular_bisector(Q, G), perpendicular_bisector(S, G)
        P, R = Point(3, -2), Point(-2, -1)
        m = Line.through(reflect_point(P, l1), Point(reflect_point(P, l1).x + 1, reflect_point(P, l1).y + 2))
        n = Line.through(reflect_point(R, l2), Point(reflect_point(R, l2).x, reflect_point(R, l2).y + 1))
        cfg = FoldConfig(m, P, Q, n, R, S)
        sol = fold_solution_from_point(cfg, G)
        assert sol.residual == 0.0
        assert verify_AL6ab8(cfg, sol, 0)

    def test_config_invariants(self):
        with pytest.raises(GeometryError):
            FoldConfig(Line(1, 0, 2), Point(0, 0), Point(0, 0), Line(0, 1, 1), Point(0, 1), Point(1, 0))
        with pytest.raises(NotAParabolaError):
            FoldConfig(Line(1, 0, 2), Point(-2, 5), Point(0, 0), Line(0, 1, 1), Point(0, 1), Point(1, 0))

    def test_negative_tol(self):
        p = intersect_config(A7_CONFIG).points[0]
        with pytest.raises(ValueError):
            verify_AL6ab8(A7_CONFIG, fold_solution_from_point(A7_CONFIG, p.point), -1)


def test_config_json_roundtrip():
    assert FoldConfig.from_json(A7_CONFIG.to_json()) == A7_CONFIG
