"""Intersections of two origami cubics and the fold-slope septic.

Two circular cubics share the circular points at infinity, so of the nine
Bezout intersections at most seven are affine.  Every affine intersection G
gives an AL6ab8 fold: l1 folds Q onto G, l2 folds S onto G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cubic import OrigamiCubic, cubic_from_line
from .errors import GeometryError, SharedComponentError
from .exactmath import (
    AlgebraicReal,
    Poly1,
    Poly2,
    as_rat,
    isolate_real_roots,
    resultant,
)
from .geometry import (
    FoldConfig,
    FoldSolution,
    Point,
    al6ab8_residual,
    perpendicular_bisector,
)

SPECIALIZED = "specialized"  # W = X/Y at the origin, second parabola y = x^2/4
SLOPE = "slope"  # slope of the second fold line l2


@dataclass(frozen=True)
class SlopePolynomial:
    """Polynomial satisfied by the fold variable.

    In the ``specialized`` frame the variable is W = X/Y of the intersection
    point seen from S = (0, 0); the slope of l2 is then -W.  In the ``slope``
    frame the variable is the slope of l2 itself.
    """

    poly: Poly1
    frame: str
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "frame": self.frame, "notes": list(self.notes)}


def septic_specialized(t0, t1, t2, t3, e, f) -> SlopePolynomial:
    """The septic in W for the normalized first cubic against y = x^2/4 folding the origin."""
    t0, t1, t2, t3, e, f = (as_rat(v) for v in (t0, t1, t2, t3, e, f))
    h = Fraction(1, 2)
    q = Fraction(1, 4)
    o = Fraction(1, 8)
    c6 = 3 * h * e + h * f * t0 + t0 - h * t1
    c5 = 3 * q * e**2 + h * e * f * t0 + e * t0 - h * e * t1 + q * f**2 - q * f * t2 + f - h * t2
    c4 = (o * e**3 + o * e**2 * f * t0 + q * e**2 * t0 - o * e**2 * t1 + o * e * f**2 - o * e * f * t2
          + h * e * f - q * e * t2 + h * e + o * f**3 * t0 + 3 * q * f**2 * t0 - o * f**2 * t3
          + 3 * h * f * t0 - h * f * t3 - h * t3)
    c3 = 3 * q * e**2 + h * e * f * t0 - h * e * t1 + q * f**2 - q * f * t2
    c2 = (q * e**3 + q * e**2 * f * t0 + q * e**2 * t0 - q * e**2 * t1 + q * e * f**2 - q * e * f * t2
          + h * e * f - q * e * t2 + q * f**3 * t0 + 3 * q * f**2 * t0 - q * f**2 * t3 - h * f * t3)
    c0 = (o * e**3 + o * e**2 * f * t0 - o * e**2 * t1 + o * e * f**2 - o * e * f * t2
          + o * f**3 * t0 - o * f**2 * t3)
    notes = ("degenerate: Q at the shared origin",) if e == 0 and f == 0 else ()
    return SlopePolynomial(Poly1([c0, 0, c2, c3, c4, c5, c6, 1], "W"), SPECIALIZED, notes)


def specialized_second_cubic() -> OrigamiCubic:
    """Second cubic of the fixed setup: n: y = -1, R = (0, 1), S = (0, 0)."""
    from .geometry import Line

    return cubic_from_line(Line(0, 1, 1), Point(0, 1), Point(0, 0))


def cubics_for_config(cfg: FoldConfig) -> tuple[OrigamiCubic, OrigamiCubic]:
    return cubic_from_line(cfg.m, cfg.P, cfg.Q), cubic_from_line(cfg.n, cfg.R, cfg.S)


def _check_distinct(c1: OrigamiCubic, c2: OrigamiCubic):
    if c1.is_proportional(c2):
        raise SharedComponentError("the two cubics coincide")


def slope_eliminant(c1: OrigamiCubic, c2: OrigamiCubic) -> Poly1:
    """Resultant, in the slope s of l2, of c1 and the pencil of lines through c2's node.

    A point G = S + Y*(-s, 1) on the line through the node S lies on c2 iff
    (s^2+1)(lv - lu s) Y + (q1 s^2 - q2 s + q3) = 0 (after removing the node's
    double root Y = 0).  The fold line l2, bisecting S and G, has slope s.
    """
    lu, lv = c2.lu, c2.lv
    q1, q2, q3 = c2.quad
    V = ("s", "Y")
    s = Poly2.x(V)
    Y = Poly2.y(V)
    line_eq = (s * s + 1) * (Poly2.const(lv, V) - s * lu) * Y + (s * s * q1 - s * q2 + q3)
    g1 = Poly2(c1.global_curve().terms, V)
    on_c1 = g1.compose(Poly2.const(c2.e, V) - s * Y, Poly2.const(c2.f, V) + Y)
    return resultant(line_eq, on_c1, eliminate="Y")


def septic_general(c1: OrigamiCubic, c2: OrigamiCubic) -> SlopePolynomial:
    """Square-free integer polynomial satisfied by the slope of l2 at every affine intersection."""
    _check_distinct(c1, c2)
    res = slope_eliminant(c1, c2)
    if res.is_zero():
        raise SharedComponentError("eliminant vanishes identically; the cubics share a component")
    circ = Poly1([1, 0, 1], "s")
    removed = 0
    while res.degree >= 2:
        q, r = divmod(res, circ)
        if not r.is_zero():
            break
        res = q
        removed += 1
    notes = [f"removed (s^2+1)^{removed} (circular points)"]
    sq = res.squarefree()
    if sq.degree < res.degree:
        notes.append("eliminant had repeated roots (tangential intersection)")
    poly = sq.primitive().with_var("y")
    if poly.degree < 7:
        notes.append(f"degree {poly.degree} < 7: vertical fold lines or node incidences")
    return SlopePolynomial(poly, SLOPE, tuple(notes))


def slope_polynomial_for_config(cfg: FoldConfig) -> SlopePolynomial:
    return septic_general(*cubics_for_config(cfg))


@dataclass(frozen=True)
class IntersectionPoint:
    point: Point  # rational approximation at the requested precision
    coord_root: AlgebraicReal  # certified root of the eliminant
    residual: float

    def as_float(self) -> tuple[float, float]:
        return self.point.as_float()

    def to_json(self, digits: int = 20) -> dict:
        return {
            "x": mpmath.nstr(_mpf(self.point.x), digits),
            "y": mpmath.nstr(_mpf(self.point.y), digits),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class IntersectionSet:
    points: tuple[IntersectionPoint, ...]
    eliminant: Poly1
    eliminated: str
    count_at_infinity: int
    notes: tuple[str, ...] = field(default=())

    @property
    def affine_count(self) -> int:
        return self.eliminant.degree

    def to_json(self, digits: int = 20) -> dict:
        return {
            "points": [p.to_json(digits) for p in self.points],
            "eliminant": self.eliminant.to_json(),
            "eliminated": self.eliminated,
            "count_at_infinity": self.count_at_infinity,
            "notes": list(self.notes),
        }


def _mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def _specialize_mp(g: Poly2, var: int, value) -> list:
    """Coefficients (lowest first, mpf) of g with ``var`` fixed to ``value``."""
    other = 1 - var
    deg = g.degree_in(other)
    out = [mpmath.mpf(0)] * (deg + 1)
    for k, c in g.terms.items():
        out[k[other]] += _mpf(c) * value ** k[var]
    return out


def _poly_abs_scale(coeffs, z) -> mpmath.mpf:
    return sum(abs(c) * abs(z) ** k for k, c in enumerate(coeffs)) or mpmath.mpf(1)


def intersect_cubics(c1: OrigamiCubic, c2: OrigamiCubic, precision: float = 1e-30) -> IntersectionSet:
    """All real affine intersection points of two origami cubics.

    The eliminant's real roots are isolated exactly (Sturm); the second
    coordinate is back-substituted at ``precision`` and kept only where both
    curves vanish.
    """
    _check_distinct(c1, c2)
    g1, g2 = c1.global_curve(), c2.global_curve()
    # a constant top coefficient in the eliminated variable rules out spurious roots
    if c1.lv != 0 or c2.lv != 0:
        var = 1
    else:
        var = 0
    elim = resultant(g1, g2, eliminate=var)
    if elim.is_zero():
        raise SharedComponentError("eliminant vanishes identically")
    elim = elim.primitive()
    notes = []
    sq = elim.squarefree()
    if sq.degree < elim.degree:
        notes.append("eliminant has repeated roots (tangency or aligned intersections)")
    at_inf = 9 - elim.degree
    if at_inf > 2:
        notes.append(f"{at_inf} intersections at infinity (non-generic)")
    digits = max(20, int(-mpmath.log10(precision)) + 15)
    pts: list[IntersectionPoint] = []
    # prefer solving the cubic with constant leading coefficient in the free variable
    solve_g, check_g = (g1, g2) if (c1.lv if var == 1 else c1.lu) != 0 else (g2, g1)
    free = 1 - var
    for root in isolate_real_roots(sq):
        r = root.refine(Fraction(1, 10 ** (digits + 5)))
        with mpmath.workdps(digits + 10):
            x0 = _mpf(r.mid)
            coeffs = _specialize_mp(solve_g, free, x0)
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            if len(coeffs) < 2:
                continue
            cands = mpmath.polyroots(coeffs[::-1], maxsteps=400, extraprec=3 * digits)
            check = _specialize_mp(check_g, free, x0)
            tol = mpmath.mpf(10) ** (-(digits // 2))
            seen = []
            for z in cands:
                if abs(mpmath.im(z)) > tol * (1 + abs(z)):
                    continue
                y0 = mpmath.re(z)
                val = sum(c * y0**k for k, c in enumerate(check))
                if abs(val) > tol * _poly_abs_scale(check, y0):
                    continue
                if any(abs(y0 - s) < tol * (1 + abs(s)) for s in seen):
                    continue
                seen.append(y0)
                # var==1 eliminates y, so the isolated root is x
                px, py = (x0, y0) if var == 1 else (y0, x0)
                pt = Point(as_rat(px), as_rat(py))
                resid = max(abs(float(g1.eval(pt.x, pt.y))), abs(float(g2.eval(pt.x, pt.y))))
                pts.append(IntersectionPoint(pt, r, resid))
    pts.sort(key=lambda p: (p.point.x, p.point.y))
    return IntersectionSet(tuple(pts), elim, "xy"[var], at_inf, tuple(notes))


def intersect_config(cfg: FoldConfig, precision: float = 1e-30) -> IntersectionSet:
    return intersect_cubics(*cubics_for_config(cfg), precision=precision)


def fold_solution_from_point(cfg: FoldConfig, G: Point) -> FoldSolution:
    """Fold lines superposing Q and S on G, with the AL6ab8 residual."""
    if G == cfg.Q or G == cfg.S:
        raise GeometryError("G must differ from Q and S")
    l1 = perpendicular_bisector(cfg.Q, G)
    l2 = perpendicular_bisector(cfg.S, G)
    return FoldSolution(l1, l2, G, al6ab8_residual(cfg, l1, l2))


def fold_solutions(cfg: FoldConfig, precision: float = 1e-30) -> list[FoldSolution]:
    return [fold_solution_from_point(cfg, p.point) for p in intersect_config(cfg, precision).points]
