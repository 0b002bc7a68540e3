"""Points, lines, parabolas given by focus and directrix, and the AL6ab8 check.

Points carry either rational or float coordinates.  Rational inputs give
rational outputs everywhere in this module; nothing is rounded behind the
caller's back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import ChartError, GeometryError, NotAParabolaError
from .exactmath import as_rat, rat_to_str


def _coerce(v):
    if isinstance(v, (Fraction, float)):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return _parse_num(v)
    return as_rat(v)


def _parse_num(s: str):
    s = s.strip()
    if any(ch in s for ch in ".eE") and "/" not in s:
        return float(s)
    return Fraction(s)


def _num_json(v) -> str:
    return rat_to_str(v) if isinstance(v, Fraction) else repr(float(v))


@dataclass(frozen=True)
class Point:
    x: Fraction | float
    y: Fraction | float

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    @property
    def exact(self) -> bool:
        return isinstance(self.x, Fraction) and isinstance(self.y, Fraction)

    def __iter__(self):
        yield self.x
        yield self.y

    def as_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def __sub__(self, other: "Point") -> tuple:
        return self.x - other.x, self.y - other.y

    def dist2(self, other: "Point"):
        dx, dy = self - other
        return dx * dx + dy * dy

    def to_json(self) -> list[str]:
        return [_num_json(self.x), _num_json(self.y)]

    @classmethod
    def from_json(cls, data) -> "Point":
        return cls(_parse_num(str(data[0])), _parse_num(str(data[1])))


@dataclass(frozen=True)
class Line:
    """The line u*x + v*y + w = 0.

    Exact lines are normalized to coprime integers with the first nonzero
    coefficient positive; float lines to a unit normal.
    """

    u: Fraction | float
    v: Fraction | float
    w: Fraction | float

    def __post_init__(self):
        u, v, w = (_coerce(t) for t in (self.u, self.v, self.w))
        if u == 0 and v == 0:
            raise GeometryError("line needs (u, v) != (0, 0)")
        if all(isinstance(t, Fraction) for t in (u, v, w)):
            den = reduce(math.lcm, (t.denominator for t in (u, v, w)), 1)
            ints = [int(t * den) for t in (u, v, w)]
            g = reduce(math.gcd, ints)
            first = next(t for t in ints if t != 0)
            if first < 0:
                g = -g
            u, v, w = (Fraction(t // g) for t in ints)
        else:
            u, v, w = float(u), float(v), float(w)
            n = math.hypot(u, v)
            first = next(t for t in (u, v, w) if t != 0)
            n = n if first > 0 else -n
            u, v, w = u / n, v / n, w / n
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @property
    def exact(self) -> bool:
        return isinstance(self.u, Fraction)

    @classmethod
    def from_chart(cls, a, b) -> "Line":
        """The line a*x + b*y + 1 = 0."""
        return cls(a, b, 1)

    def chart(self) -> tuple:
        """Return (a, b) with the line written as a*x + b*y + 1 = 0."""
        if self.w == 0:
            raise ChartError("line passes through the origin; no a*x + b*y + 1 = 0 form")
        return self.u / self.w, self.v / self.w

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        dx, dy = q - p
        return cls(dy, -dx, dx * p.y - dy * p.x)

    def value(self, p: Point):
        return self.u * p.x + self.v * p.y + self.w

    def contains(self, p: Point) -> bool:
        return self.value(p) == 0

    def dist2(self, p: Point):
        val = self.value(p)
        return val * val / (self.u * self.u + self.v * self.v)

    @property
    def direction(self) -> tuple:
        return self.v, -self.u

    def slope(self):
        if self.v == 0:
            return math.inf
        return -self.u / self.v

    def foot_of_origin(self) -> Point:
        n2 = self.u * self.u + self.v * self.v
        return Point(-self.w * self.u / n2, -self.w * self.v / n2)

    def to_json(self) -> dict:
        return {"u": _num_json(self.u), "v": _num_json(self.v), "w": _num_json(self.w)}

    @classmethod
    def from_json(cls, data: dict) -> "Line":
        return cls(*(_parse_num(str(data[k])) for k in ("u", "v", "w")))


def reflect_point(p: Point, l: Line) -> Point:
    s = 2 * l.value(p) / (l.u * l.u + l.v * l.v)
    return Point(p.x - s * l.u, p.y - s * l.v)


def perpendicular_bisector(p: Point, q: Point) -> Line:
    if p == q:
        raise GeometryError("perpendicular bisector of a point with itself")
    dx, dy = q - p
    # points z with |z-p|^2 = |z-q|^2
    return Line(2 * dx, 2 * dy, p.x * p.x + p.y * p.y - q.x * q.x - q.y * q.y)


@dataclass(frozen=True)
class ParabolaFold:
    focus: Point
    directrix: Line

    def __post_init__(self):
        if self.directrix.value(self.focus) == 0:
            raise NotAParabolaError("focus lies on the directrix")

    def foot(self, u) -> Point:
        """Directrix point at parameter ``u`` (signed steps along (v, -u) from the origin's foot)."""
        base = self.directrix.foot_of_origin()
        du, dv = self.directrix.direction
        u = _coerce(u)
        return Point(base.x + u * du, base.y + u * dv)

    def tangent_at_foot(self, foot: Point) -> Line:
        return perpendicular_bisector(self.focus, foot)

    def tangent_at(self, u) -> Line:
        return self.tangent_at_foot(self.foot(u))

    def point_at(self, u) -> Point:
        """The parabola point whose tangent is tangent_at(u)."""
        f = self.foot(u)
        # point on the perpendicular to the directrix through the foot, equidistant from focus
        nu, nv = self.directrix.u, self.directrix.v
        fx, fy = f.x - self.focus.x, f.y - self.focus.y
        # |f + k n - focus|^2 = k^2 |n|^2 (k measured along the normal)
        k = -(fx * fx + fy * fy) / (2 * (fx * nu + fy * nv))
        return Point(f.x + k * nu, f.y + k * nv)

    def to_json(self) -> dict:
        return {"focus": self.focus.to_json(), "directrix": self.directrix.to_json()}


def tangent_at(par: ParabolaFold, u) -> Line:
    return par.tangent_at(u)


@dataclass(frozen=True)
class FoldConfig:
    """An AL6ab8 instance: fold P onto m and R onto n so that Q and S land together."""

    m: Line
    P: Point
    Q: Point
    n: Line
    R: Point
    S: Point

    def __post_init__(self):
        if self.m.value(self.P) == 0:
            raise NotAParabolaError("P lies on m")
        if self.n.value(self.R) == 0:
            raise NotAParabolaError("R lies on n")
        if self.P == self.Q:
            raise GeometryError("Q must differ from P")
        if self.R == self.S:
            raise GeometryError("S must differ from R")

    @property
    def first(self) -> ParabolaFold:
        return ParabolaFold(self.P, self.m)

    @property
    def second(self) -> ParabolaFold:
        return ParabolaFold(self.R, self.n)

    @property
    def exact(self) -> bool:
        return all(obj.exact for obj in (self.m, self.P, self.Q, self.n, self.R, self.S))

    def to_json(self) -> dict:
        return {
            "m": self.m.to_json(), "P": self.P.to_json(), "Q": self.Q.to_json(),
            "n": self.n.to_json(), "R": self.R.to_json(), "S": self.S.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FoldConfig":
        return cls(
            Line.from_json(data["m"]), Point.from_json(data["P"]), Point.from_json(data["Q"]),
            Line.from_json(data["n"]), Point.from_json(data["R"]), Point.from_json(data["S"]),
        )


@dataclass(frozen=True)
class FoldSolution:
    l1: Line
    l2: Line
    G: Point
    residual: float

    def to_json(self) -> dict:
        return {"l1": self.l1.to_json(), "l2": self.l2.to_json(), "G": self.G.to_json(),
                "residual": self.residual}


def al6ab8_errors2(cfg: FoldConfig, l1: Line, l2: Line) -> tuple:
    """Squared errors of the three AL6ab8 alignments (exact when inputs are)."""
    q1 = reflect_point(cfg.Q, l1)
    s2 = reflect_point(cfg.S, l2)
    return (q1.dist2(s2), cfg.m.dist2(reflect_point(cfg.P, l1)), cfg.n.dist2(reflect_point(cfg.R, l2)))


def al6ab8_residual(cfg: FoldConfig, l1: Line, l2: Line) -> float:
    return math.sqrt(float(max(al6ab8_errors2(cfg, l1, l2))))


def verify_AL6ab8(cfg: FoldConfig, sol: FoldSolution, tol: float) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    errs = al6ab8_errors2(cfg, sol.l1, sol.l2)
    if all(isinstance(e, Fraction) for e in errs):
        bound = Fraction(tol) ** 2
        return all(e <= bound for e in errs)
    return all(float(e) <= tol * tol for e in errs)
