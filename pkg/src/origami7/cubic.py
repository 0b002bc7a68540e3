"""Origami cubic curves.

Folding a point Q across every tangent of the parabola with focus P and
directrix m traces a circular nodal cubic with its node at Q.  In
coordinates X = x - e, Y = y - f centered at Q = (e, f) it reads::

    (X^2 + Y^2)(a X + b Y) + t1 X^2 + t2 X Y + t3 Y^2 = 0

for the directrix a x + b y + 1 = 0 and focus (c, d).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ChartError, GeometryError, NotAParabolaError
from .exactmath import Poly2, as_rat, rat_to_str
from .geometry import Line, ParabolaFold, Point, reflect_point

XY = ("X", "Y")


def t_coefficients(a, b, c, d, e, f) -> tuple:
    """The quadratic coefficients (t1, t2, t3) of the shifted cubic."""
    t1 = -a * c + 2 * a * e + b * d + 1
    t2 = -2 * a * d + 2 * a * f - 2 * b * c + 2 * b * e
    t3 = a * c - b * d + 2 * b * f + 1
    return t1, t2, t3


def shifted_curve(lu, lv, q1, q2, q3) -> Poly2:
    """(X^2+Y^2)(lu X + lv Y) + q1 X^2 + q2 XY + q3 Y^2."""
    return Poly2(
        {(3, 0): lu, (2, 1): lv, (1, 2): lu, (0, 3): lv, (2, 0): q1, (1, 1): q2, (0, 2): q3}, XY
    )


def raw_curve(a, b, c, d, e, f) -> Poly2:
    """The expanded cubic in the original x, y coordinates."""
    T = {
        (3, 0): a,
        (2, 1): b,
        (2, 0): -a * c - a * e + b * d - b * f + 1,
        (1, 2): a,
        (1, 1): -2 * a * d - 2 * b * c,
        (1, 0): 2 * a * c * e + 2 * a * d * f - a * e**2 - a * f**2 + 2 * b * c * f - 2 * b * d * e - 2 * e,
        (0, 3): b,
        (0, 2): a * c - a * e - b * d - b * f + 1,
        (0, 1): -2 * a * c * f + 2 * a * d * e + 2 * b * c * e + 2 * b * d * f - b * e**2 - b * f**2 - 2 * f,
        (0, 0): -a * c * e**2 + a * c * f**2 - 2 * a * d * e * f + a * e**3 + a * e * f**2
        - 2 * b * c * e * f + b * d * e**2 - b * d * f**2 + b * e**2 * f + b * f**3 + e**2 + f**2,
    }
    return Poly2(T, ("x", "y"))


@dataclass(frozen=True)
class OrigamiCubic:
    """An origami cubic; ``curve`` lives in coordinates shifted to the node (e, f).

    ``source`` holds (a, b, c, d, e, f) when the cubic came from a directrix
    in the a*x + b*y + 1 = 0 chart, ``normalized`` holds (t0, t1, t2, t3, e, f)
    for the form divided by a.  Either may be absent.
    """

    curve: Poly2
    e: Fraction
    f: Fraction
    source: tuple | None = None
    normalized: tuple | None = None
    parabola: ParabolaFold | None = field(default=None, compare=False)

    @classmethod
    def from_normalized(cls, t0, t1, t2, t3, e, f) -> "OrigamiCubic":
        vals = tuple(as_rat(v) for v in (t0, t1, t2, t3, e, f))
        t0, t1, t2, t3, e, f = vals
        return cls(shifted_curve(Fraction(1), t0, t1, t2, t3), e, f, normalized=vals)

    # leading form (X^2+Y^2)(lu X + lv Y)
    @property
    def lu(self) -> Fraction:
        return self.curve.coeff(3, 0)

    @property
    def lv(self) -> Fraction:
        return self.curve.coeff(0, 3)

    @property
    def quad(self) -> tuple:
        return self.curve.coeff(2, 0), self.curve.coeff(1, 1), self.curve.coeff(0, 2)

    @property
    def node(self) -> Point:
        return Point(self.e, self.f)

    def global_curve(self) -> Poly2:
        """The same curve in the unshifted x, y coordinates."""
        return Poly2(self.curve.terms, ("x", "y")).translate(self.e, self.f)

    def contains(self, p: Point):
        """Curve value at a point given in global coordinates."""
        return self.curve.eval(p.x - self.e, p.y - self.f)

    def is_proportional(self, other: "OrigamiCubic") -> bool:
        a, b = self.global_curve(), other.global_curve()
        k = next(iter(a.terms))
        if k not in b.terms:
            return False
        return a * b.terms[k] == b * a.terms[k]

    def to_json(self) -> dict:
        out = {"e": rat_to_str(self.e), "f": rat_to_str(self.f), "curve": self.curve.to_json()}
        if self.source is not None:
            out["source"] = dict(zip("abcdef", map(rat_to_str, self.source)))
        if self.normalized is not None:
            out["normalized"] = dict(zip(("t0", "t1", "t2", "t3", "e", "f"), map(rat_to_str, self.normalized)))
        return out


def cubic_from_config(m: Line, P: Point, Q: Point) -> OrigamiCubic:
    """The cubic traced by Q folded across tangents of the parabola (P, m).

    ``m`` must have an a*x + b*y + 1 = 0 form; use :func:`cubic_from_line`
    for directrices through the origin.
    """
    a, b = m.chart()
    if not (P.exact and Q.exact and m.exact):
        raise GeometryError("cubic_from_config needs exact data")
    c, d = P
    e, f = Q
    if a * c + b * d + 1 == 0:
        raise NotAParabolaError("P lies on m")
    if P == Q:
        raise GeometryError("Q must differ from P")
    t1, t2, t3 = t_coefficients(a, b, c, d, e, f)
    norm = (b / a, t1 / a, t2 / a, t3 / a, e, f) if a != 0 else None
    return OrigamiCubic(shifted_curve(a, b, t1, t2, t3), e, f, source=(a, b, c, d, e, f),
                        normalized=norm, parabola=ParabolaFold(P, m))


def cubic_from_line(m: Line, P: Point, Q: Point) -> OrigamiCubic:
    """Like :func:`cubic_from_config` but for any directrix u*x + v*y + w = 0.

    The curve is the chart form multiplied by w, which stays valid when the
    directrix passes through the origin.
    """
    if m.w != 0:
        return cubic_from_config(m, P, Q)
    u, v, w = m.u, m.v, m.w
    c, d = P
    e, f = Q
    if m.value(P) == 0:
        raise NotAParabolaError("P lies on m")
    q1 = -u * c + 2 * u * e + v * d + w
    q2 = -2 * u * d + 2 * u * f - 2 * v * c + 2 * v * e
    q3 = u * c - v * d + 2 * v * f + w
    return OrigamiCubic(shifted_curve(u, v, q1, q2, q3), e, f, parabola=ParabolaFold(P, m))


def config_from_cubic(t0, t1, t2, t3, e, f) -> tuple:
    """Directrix a*x + b*y + 1 = 0 and focus (c, d) producing the normalized cubic.

    Solves -c + 2e + t0 d + 1/a = t1, -2d + 2f - 2 t0 c + 2 t0 e = t2,
    c - t0 d + 2 t0 f + 1/a = t3 with b = t0 a.
    """
    t0, t1, t2, t3, e, f = (as_rat(v) if not isinstance(v, float) else v for v in (t0, t1, t2, t3, e, f))
    den = t1 + t3 - 2 * t0 * f - 2 * e
    if den == 0:
        raise ChartError("directrix passes through the origin (t1 + t3 = 2 t0 f + 2 e)")
    a = 2 / den
    b = t0 * a
    c = (2 * t0**2 * e - t0 * t2 - t1 + t3 + 2 * e) / (2 * t0**2 + 2)
    d = (2 * t0**2 * f + t0 * t1 - t0 * t3 - t2 + 2 * f) / (2 * t0**2 + 2)
    if a * c + b * d + 1 == 0:
        warnings.warn("focus lies on the directrix; the cubic is reducible", stacklevel=2)
    return a, b, c, d


def sample_curve(cub: OrigamiCubic, window: tuple, budget: int) -> list[Point]:
    """Points of the curve inside ``window = (xmin, ymin, xmax, ymax)``.

    Sweeps the tangent parameter u = tan(theta) over ``budget`` values and
    reflects the node across each tangent; the node itself (an isolated real
    point when it sits inside the parabola) is always included if in view.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    xmin, ymin, xmax, ymax = window
    if xmin >= xmax or ymin >= ymax:
        return []
    par = cub.parabola
    if par is None:
        raise GeometryError("sampling needs the generating parabola")
    scale = _foot_scale(par, window)
    out = []
    node = cub.node
    if xmin <= node.x <= xmax and ymin <= node.y <= ymax:
        out.append(Point(float(node.x), float(node.y)))
    for k in range(budget):
        theta = -math.pi / 2 + math.pi * (k + 0.5) / budget
        pt = point_for_parameter(cub, Fraction(scale * math.tan(theta)))
        fx, fy = pt.as_float()
        if xmin <= fx <= xmax and ymin <= fy <= ymax:
            out.append(Point(fx, fy))
    return out


def _foot_scale(par: ParabolaFold, window) -> float:
    xmin, ymin, xmax, ymax = window
    n = math.hypot(float(par.directrix.u), float(par.directrix.v))
    return max(xmax - xmin, ymax - ymin) / n


def point_for_parameter(cub: OrigamiCubic, u) -> Point:
    """Exact reflection of the node across the tangent with foot parameter u."""
    return reflect_point(Point(cub.e, cub.f), cub.parabola.tangent_at(u))


def trace_curve(cub: OrigamiCubic, window: tuple, max_dev: float, depth: int = 12, start: int = 64) -> list[list[tuple]]:
    """Polylines of the curve in ``window`` with chord deviation <= ``max_dev``.

    Adaptive subdivision of the tangent-angle sweep; polylines break where
    the curve leaves the window.
    """
    par = cub.parabola
    scale = _foot_scale(par, window)
    xmin, ymin, xmax, ymax = window
    margin = max(xmax - xmin, ymax - ymin)

    def pt(theta):
        p = point_for_parameter(cub, Fraction(scale * math.tan(theta)))
        return p.as_float()

    def inside(p, slack=0.0):
        return xmin - slack <= p[0] <= xmax + slack and ymin - slack <= p[1] <= ymax + slack

    thetas = [-math.pi / 2 + math.pi * (k + 0.5) / start for k in range(start)]
    samples = [(t, pt(t)) for t in thetas]
    refined: list[tuple] = [samples[0]]
    for (t0, p0), (t1, p1) in zip(samples, samples[1:]):
        refined.extend(_subdivide(pt, t0, p0, t1, p1, max_dev, depth, inside, margin))
    lines: list[list[tuple]] = []
    current: list[tuple] = []
    for _, p in refined:
        if inside(p, 0.05 * margin):
            current.append(p)
        else:
            if len(current) > 1:
                lines.append(current)
            current = []
    if len(current) > 1:
        lines.append(current)
    return lines


def _subdivide(pt, t0, p0, t1, p1, max_dev, depth, inside, margin):
    tm = (t0 + t1) / 2
    pm = pt(tm)
    if depth > 0 and (inside(p0, margin) or inside(p1, margin) or inside(pm, margin)):
        dev = _chord_dev(p0, p1, pm)
        if dev > max_dev:
            return (_subdivide(pt, t0, p0, tm, pm, max_dev, depth - 1, inside, margin)
                    + _subdivide(pt, tm, pm, t1, p1, max_dev, depth - 1, inside, margin))
    return [(tm, pm), (t1, p1)]


def _chord_dev(a, b, m) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = math.hypot(dx, dy)
    if L == 0:
        return math.hypot(m[0] - a[0], m[1] - a[1])
    return abs(dy * (m[0] - a[0]) - dx * (m[1] - a[1])) / L
