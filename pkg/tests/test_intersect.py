from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from origami7.configs import A7_CONFIG, A7_SEPTIC, PSL_CONFIG, PSL_SEPTIC
from origami7.cubic import OrigamiCubic, cubic_from_line
from origami7.errors import GeometryError, SharedComponentError
from origami7.exactmath import Poly1, isolate_real_roots
from origami7.geometry import Line, Point, verify_AL6ab8
from origami7.intersect import (
    cubics_for_config,
    fold_solution_from_point,
    intersect_config,
    intersect_cubics,
    septic_general,
    septic_specialized,
    slope_eliminant,
    slope_polynomial_for_config,
    specialized_second_cubic,
)

from conftest import rand_rat

H, Q, E = Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)


class TestSpecialized:
    def test_worked_example(self):
        p = septic_specialized(0, 0, 0, 0, 1, 0).poly
        assert p == Poly1([E, 0, Q, Fraction(3, 4), Fraction(5, 8), Fraction(3, 4), Fraction(3, 2), 1], "W")

    def test_no_linear_term(self, rng):
        for _ in range(20):
            p = septic_specialized(*(rand_rat(rng) for _ in range(6))).poly
            assert p.coeffs[1] == 0 and p.degree == 7

    def test_shared_origin_degenerates(self):
        sp_ = septic_specialized(1, 2, 3, 4, 0, 0)
        assert sp_.poly.coeffs[0] == 0 and sp_.notes

    def test_matches_direct_substitution(self, rng):
        t0, t1, t2, t3, e, f, W = sp.symbols("t0 t1 t2 t3 e f W")
        y = -2 * W**2 / (W**2 + 1)  # second cubic cut by the line x = W y
        X, Y = W * y - e, y - f
        num = sp.Poly(sp.numer(sp.together((X**2 + Y**2) * (X + t0 * Y) + t1 * X**2 + t2 * X * Y + t3 * Y**2)), W)
        quo, rem = sp.div(num, sp.Poly(W**2 + 1, W))
        assert rem.is_zero
        ref = [c / quo.LC() for c in reversed(quo.all_coeffs())]
        for _ in range(10):
            vals = [rand_rat(rng) for _ in range(6)]
            sub = {s: sp.Rational(v.numerator, v.denominator) for s, v in zip((t0, t1, t2, t3, e, f), vals)}
            mine = septic_specialized(*vals).poly.coeffs
            assert [sp.Rational(c.numerator, c.denominator) for c in mine] == [sp.simplify(c.subs(sub)) for c in ref]


class TestGeneral:
    def test_a7(self):
        assert slope_polynomial_for_config(A7_CONFIG).poly == A7_SEPTIC
        assert A7_SEPTIC == Poly1.from_high([1, 1, -8, 3, 1, -3, 2, -1], "y")

    def test_psl(self):
        assert slope_polynomial_for_config(PSL_CONFIG).poly == PSL_SEPTIC
        assert PSL_SEPTIC == Poly1.from_high([1, 3, 0, -3, 5, 1, -10, -1], "y")

    def test_shared_component(self):
        c = cubic_from_line(Line(1, 0, 2), Point(-4, -1), Point(1, 2))
        with pytest.raises(SharedComponentError):
            septic_general(c, c)

    def test_specialized_frame_agrees(self, rng):
        c2 = specialized_second_cubic()
        for _ in range(10):
            vals = [rand_rat(rng) for _ in range(6)]
            c1 = OrigamiCubic.from_normalized(*vals)
            res = slope_eliminant(c1, c2)
            circ = Poly1([1, 0, 1], "s")
            while res.degree > 7:
                res, r = divmod(res, circ)
                assert r.is_zero()
            W = res.with_var("W").scale_arg(-1).monic()  # slope of l2 is -W
            assert W == septic_specialized(*vals).poly

    def test_slope_roots_match_fold_lines(self):
        inter = intersect_config(A7_CONFIG)
        slopes = sorted(float(fold_solution_from_point(A7_CONFIG, p.point).l2.slope()) for p in inter.points)
        roots = sorted(float(r.refine(Fraction(1, 10**15))) for r in isolate_real_roots(A7_SEPTIC))
        assert slopes == pytest.approx(roots, abs=1e-12)


class TestIntersect:
    def test_a7_three_points(self):
        inter = intersect_config(A7_CONFIG)
        assert len(inter.points) == 3
        assert inter.affine_count <= 7 and inter.count_at_infinity >= 2
        assert all(p.residual < 1e-20 for p in inter.points)

    def test_psl_three_points(self):
        inter = intersect_config(PSL_CONFIG)
        assert len(inter.points) == 3
        c1, c2 = cubics_for_config(PSL_CONFIG)
        for p in inter.points:
            assert abs(float(c1.contains(p.point))) < 1e-20
            assert abs(float(c2.contains(p.point))) < 1e-20

    def test_a7_root_near_minus_349(self):
        for p in intersect_config(A7_CONFIG).points:
            sol = fold_solution_from_point(A7_CONFIG, p.point)
            assert verify_AL6ab8(A7_CONFIG, sol, 1e-9)
        slopes = [float(fold_solution_from_point(A7_CONFIG, p.point).l2.slope()) for p in intersect_config(A7_CONFIG).points]
        assert any(-3.50 < s < -3.48 for s in slopes)

    def test_off_curve_point_fails(self):
        p = intersect_config(A7_CONFIG).points[0].point
        bad = Point(p.x + Fraction(1, 1000), p.y)
        sol = fold_solution_from_point(A7_CONFIG, bad)
        assert sol.residual > 1e-9 and not verify_AL6ab8(A7_CONFIG, sol, 1e-9)

    def test_g_equal_to_q(self):
        with pytest.raises(GeometryError):
            fold_solution_from_point(A7_CONFIG, A7_CONFIG.Q)

    def test_numeric_oracle(self):
        # independent check: mpmath root-finding on both cubics from each certified point
        c1, c2 = cubics_for_config(A7_CONFIG)
        g1, g2 = c1.global_curve(), c2.global_curve()
        for p in intersect_config(A7_CONFIG).points:
            x0, y0 = p.as_float()
            with mpmath.workdps(40):
                x, y = mpmath.findroot([lambda x, y: g1.eval(x, y), lambda x, y: g2.eval(x, y)], (x0, y0))
                assert abs(x - x0) < 1e-12 and abs(y - y0) < 1e-12

    def test_json(self):
        data = intersect_config(A7_CONFIG).to_json()
        assert len(data["points"]) == 3 and data["eliminated"] in "xy"
