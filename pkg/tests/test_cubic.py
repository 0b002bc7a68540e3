import math
import warnings
from fractions import Fraction

import pytest
import sympy as sp

from origami7.cubic import (
    OrigamiCubic,
    config_from_cubic,
    cubic_from_config,
    cubic_from_line,
    point_for_parameter,
    raw_curve,
    sample_curve,
    t_coefficients,
    trace_curve,
)
from origami7.errors import ChartError, NotAParabolaError
from origami7.geometry import Line, Point, reflect_point

from conftest import rand_rat


def test_standard_parabola_cubic():
    cub = cubic_from_config(Line(0, 1, 1), Point(0, 1), Point(0, 0))
    assert cub.normalized is None  # a = 0
    assert cub.quad == (2, 0, 0)
    assert (cub.lu, cub.lv) == (0, 1)  # Y (X^2 + Y^2) + 2 X^2


def test_membership_symbolic():
    a, b, c, d, e, f, u = sp.symbols("a b c d e f u")
    # tangent to the parabola (c,d)/(a x + b y + 1 = 0) at a foot on the directrix
    n2 = a * a + b * b
    fx, fy = -a / n2 + u * b, -b / n2 - u * a
    # bisector of focus and foot: 2(fx-c) x + 2(fy-d) y + c^2+d^2-fx^2-fy^2 = 0
    U, V, W = 2 * (fx - c), 2 * (fy - d), c * c + d * d - fx * fx - fy * fy
    k = 2 * (U * e + V * f + W) / (U * U + V * V)
    gx, gy = e - k * U, f - k * V
    X, Y = gx - e, gy - f
    t1, t2, t3 = t_coefficients(a, b, c, d, e, f)
    expr = (X * X + Y * Y) * (a * X + b * Y) + t1 * X * X + t2 * X * Y + t3 * Y * Y
    assert sp.simplify(sp.together(expr)) == 0


def test_raw_curve_matches_translation(rng):
    for _ in range(10):
        a, b = rand_rat(rng, nonzero=True), rand_rat(rng)
        c, d, e, f = (rand_rat(rng) for _ in range(4))
        m, P, Q = Line(a, b, 1), Point(c, d), Point(e, f)
        if m.value(P) == 0 or P == Q:
            continue
        cub = cubic_from_config(m, P, Q)
        assert raw_curve(a, b, c, d, e, f) == cub.global_curve()


def test_membership_random(rng):
    for _ in range(50):
        m = Line(rand_rat(rng), rand_rat(rng, nonzero=True), rand_rat(rng))
        P, Q = Point(rand_rat(rng), rand_rat(rng)), Point(rand_rat(rng), rand_rat(rng))
        if m.value(P) == 0 or P == Q:
            continue
        cub = cubic_from_line(m, P, Q)
        for _ in range(5):
            assert cub.contains(point_for_parameter(cub, rand_rat(rng, 30, 7))) == 0


def test_origin_directrix_form():
    m, P, Q = Line(1, -1, 0), Point(2, 0), Point(-1, 3)
    cub = cubic_from_line(m, P, Q)
    for u in (Fraction(0), Fraction(3, 2), Fraction(-5)):
        assert cub.contains(point_for_parameter(cub, u)) == 0
    with pytest.raises(ChartError):
        cubic_from_config(m, P, Q)


def test_focus_on_directrix():
    with pytest.raises(NotAParabolaError):
        cubic_from_config(Line(0, 1, 1), Point(3, -1), Point(0, 0))


class TestConfigFromCubic:
    def test_examples(self):
        with pytest.warns(UserWarning, match="reducible"):
            assert config_from_cubic(1, 0, 0, 0, 1, 0) == (-1, -1, 1, 0)
        assert config_from_cubic(0, 1, 0, 1, 0, 0) == (1, 0, 0, 0)

    def test_roundtrip(self, rng):
        for _ in range(30):
            t = [rand_rat(rng) for _ in range(4)]
            e, f = rand_rat(rng), rand_rat(rng)
            if t[1] + t[3] - 2 * t[0] * f - 2 * e == 0:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                a, b, c, d = config_from_cubic(*t, e, f)
            assert b == t[0] * a
            assert tuple(x / a for x in t_coefficients(a, b, c, d, e, f)) == tuple(t[1:])

    def test_opposite_sign_denominator_breaks_roundtrip(self):
        # a = 2/(2 t0 f - t1 - t3 + 2e): the sign-flipped alternative
        t0, t1, t2, t3, e, f = map(Fraction, (1, 2, 0, 1, 1, 0))
        a_bad = 2 / (2 * t0 * f - t1 - t3 + 2 * e)
        _, b, c, d = config_from_cubic(t0, t1, t2, t3, e, f)
        got = t_coefficients(a_bad, t0 * a_bad, c, d, e, f)[0] / a_bad
        assert got != t1

    def test_origin_directrix(self):
        with pytest.raises(ChartError):
            config_from_cubic(0, 1, 0, 1, 1, 0)

    def test_focus_on_directrix_warns(self):
        # a = 1, b = 0, c = -1: the focus sits on x + 1 = 0
        with pytest.warns(UserWarning):
            a, b, c, d = config_from_cubic(0, 2, 0, 0, 0, 0)
        assert a * c + b * d + 1 == 0


class TestSampling:
    def test_points_on_curve(self):
        cub = cubic_from_line(Line(1, 0, 2), Point(-4, -1), Point(1, 2))
        pts = sample_curve(cub, (-6, -6, 6, 6), 200)
        assert len(pts) > 50
        g = cub.global_curve()
        for p in pts:
            x, y = p.as_float()
            assert abs(g.eval(x, y)) < 1e-6 * (1 + (x * x + y * y) ** 1.5)

    def test_isolated_node_emitted(self):
        # Q inside the parabola: the node is an isolated real point
        cub = cubic_from_line(Line(0, 1, 1), Point(0, 1), Point(0, 3))
        pts = sample_curve(cub, (-5, -5, 5, 5), 100)
        assert any(p.as_float() == (0.0, 3.0) for p in pts)
        others = [p for p in pts if p.as_float() != (0.0, 3.0)]
        assert all(math.dist(p.as_float(), (0.0, 3.0)) > 0.1 for p in others)

    def test_empty_window(self):
        cub = cubic_from_line(Line(0, 1, 1), Point(0, 1), Point(0, 0))
        assert sample_curve(cub, (1, 1, 1, 2), 10) == []
        with pytest.raises(ValueError):
            sample_curve(cub, (0, 0, 1, 1), 0)

    def test_trace_chord_bound(self):
        cub = cubic_from_line(Line(0, 1, 2), Point(0, 0), Point(1, -1))
        lines = trace_curve(cub, (-5, -5, 5, 5), 0.01)
        assert lines and all(len(l) > 1 for l in lines)
        g = cub.global_curve()
        for l in lines:
            for x, y in l:
                assert abs(g.eval(x, y)) < 1e-6 * (1 + abs(x) + abs(y)) ** 3
