"""Exact rational polynomial algebra and certified real-root isolation.

Rationals are plain :class:`fractions.Fraction`.  Univariate polynomials are
dense (lowest degree first), bivariate ones are sparse maps ``(i, j) -> c``
for the monomial ``x**i * y**j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import mpmath

from .errors import BadPrimeError, DegenerateEliminationError

Rat = Fraction

DEFAULT_EPS = Fraction(1, 10**12)


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions, floats and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        if not mpmath.isfinite(value):
            raise ValueError(f"cannot convert {value!r} to a rational")
        sign, man, exp, _ = value._mpf_
        r = Fraction(int(man)) * Fraction(2) ** int(exp)
        return -r if sign else r
    raise TypeError(f"cannot convert {value!r} to a rational")


def rat_to_str(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


def is_perfect_square(r) -> bool:
    """True iff ``r`` is the square of a rational number."""
    r = as_rat(r)
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _to_mpf(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


# ---------------------------------------------------------------------------
# univariate


class Poly1:
    """Dense univariate polynomial over Q; ``coeffs[k]`` multiplies ``var**k``."""

    __slots__ = ("coeffs", "var", "_ints")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var
        self._ints = None

    def _scaled_ints(self) -> tuple[int, list[int]]:
        """(L, ints) with L * self == sum(ints[k] x^k) and L > 0."""
        if self._ints is None:
            L = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
            self._ints = (L, [c.numerator * (L // c.denominator) for c in self.coeffs])
        return self._ints

    def _homog(self, x: Fraction) -> int:
        """L * d^n * p(n/d) as an integer, for x = n/d with d > 0."""
        _, ints = self._scaled_ints()
        n, d = x.numerator, x.denominator
        acc = 0
        dk = 1
        for c in reversed(ints):
            acc = acc * n + c * dk
            dk *= d
        return acc

    # construction helpers
    @classmethod
    def from_high(cls, coeffs: Sequence, var: str = "x") -> "Poly1":
        return cls(list(coeffs)[::-1], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "Poly1":
        return cls([0] * k + [c], var)

    @classmethod
    def const(cls, c, var: str = "x") -> "Poly1":
        return cls([c], var)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly1([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            body = rat_to_str(a) if (a != 1 or k == 0) else ""
            if body and mono:
                body += "*"
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    # arithmetic
    def _lift(self, other) -> "Poly1":
        if isinstance(other, Poly1):
            return other
        return Poly1([other], self.var)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1([self.coeff(k) + other.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly1([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            c = as_rat(other)
            return Poly1([c * a for a in self.coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return Poly1([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly1(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly1([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly1"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly1([], self.var), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly1(quot, self.var), Poly1(rem[:dq], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation; works for Fractions, floats, mpf, complex."""
        if isinstance(x, (mpmath.mpf, mpmath.mpc)):
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + _to_mpf(c)
            return acc
        if isinstance(x, (float, complex)):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        x = as_rat(x)
        if not self.coeffs:
            return Fraction(0)
        L, _ = self._scaled_ints()
        return Fraction(self._homog(x), L * x.denominator ** self.degree)

    def sign_at(self, x) -> int:
        if not self.coeffs:
            return 0
        v = self._homog(as_rat(x))
        return (v > 0) - (v < 0)

    def derivative(self) -> "Poly1":
        return Poly1([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def content_primitive(self) -> tuple[Fraction, "Poly1"]:
        """Split into (content, primitive integer polynomial with lc > 0)."""
        if self.is_zero():
            return Fraction(0), self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly1([Fraction(i // g) for i in ints], self.var)

    def primitive(self) -> "Poly1":
        return self.content_primitive()[1]

    def int_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def shift(self, c) -> "Poly1":
        """Return p(x + c)."""
        c = as_rat(c)
        out = Poly1([], self.var)
        lin = Poly1([c, 1], self.var)
        for a in reversed(self.coeffs):
            out = out * lin + a
        return out

    def scale_arg(self, k) -> "Poly1":
        """Return p(k*x)."""
        k = as_rat(k)
        return Poly1([c * k**i for i, c in enumerate(self.coeffs)], self.var)

    def reverse(self) -> "Poly1":
        """Return x**n * p(1/x) for n = deg p."""
        return Poly1(self.coeffs[::-1], self.var)

    def with_var(self, var: str) -> "Poly1":
        return Poly1(self.coeffs, var)

    def gcd(self, other: "Poly1") -> "Poly1":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "Poly1":
        if self.degree < 1:
            return self
        g = self.gcd(self.derivative())
        return self // g if g.degree > 0 else self

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "x") -> "Poly1":
        return cls([rat_from_str(s) for s in data], var)

    def mp_roots(self, dps: int = 50):
        """All complex roots as mpmath numbers (not certified)."""
        with mpmath.workdps(dps):
            cs = [_to_mpf(c) for c in reversed(self.coeffs)]
            return mpmath.polyroots(cs, maxsteps=500, extraprec=4 * dps)


# ---------------------------------------------------------------------------
# bivariate


class Poly2:
    """Sparse bivariate polynomial: ``terms[(i, j)]`` multiplies ``x**i y**j``."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: dict | None = None, vars: tuple[str, str] = ("x", "y")):
        self.terms: dict[tuple[int, int], Fraction] = {}
        for k, v in (terms or {}).items():
            v = as_rat(v)
            if v != 0:
                self.terms[k] = v
        self.vars = vars

    @classmethod
    def x(cls, vars=("x", "y")):
        return cls({(1, 0): 1}, vars)

    @classmethod
    def y(cls, vars=("x", "y")):
        return cls({(0, 1): 1}, vars)

    @classmethod
    def const(cls, c, vars=("x", "y")):
        return cls({(0, 0): c}, vars)

    @classmethod
    def from_poly1(cls, p: Poly1, which: int = 0, vars=("x", "y")) -> "Poly2":
        if which == 0:
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)}, vars)
        return cls({(0, k): c for k, c in enumerate(p.coeffs)}, vars)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly2({self.terms!r})"

    def _lift(self, other):
        return other if isinstance(other, Poly2) else Poly2.const(other, self.vars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly2(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -v for k, v in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            c = as_rat(other)
            return Poly2({k: v * c for k, v in self.terms.items()}, self.vars)
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, Fraction(0)) + a * b
        return Poly2(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly2.const(1, self.vars)
        for _ in range(n):
            out = out * self
        return out

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((k[var] for k in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly2":
        return Poly2({k: v for k, v in self.terms.items() if sum(k) == d}, self.vars)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def eval(self, x, y):
        if any(isinstance(t, (float, mpmath.mpf, mpmath.mpc, complex)) for t in (x, y)):
            conv = float if not any(isinstance(t, (mpmath.mpf, mpmath.mpc)) for t in (x, y)) else _to_mpf
            return sum((conv(v) * x**i * y**j for (i, j), v in self.terms.items()), conv(0) if conv is float else mpmath.mpf(0))
        x, y = as_rat(x), as_rat(y)
        return sum((v * x**i * y**j for (i, j), v in self.terms.items()), Fraction(0))

    __call__ = eval

    def translate(self, dx, dy) -> "Poly2":
        """Return p(x - dx, y - dy), i.e. move the curve by (dx, dy)."""
        X = Poly2({(1, 0): 1, (0, 0): -as_rat(dx)}, self.vars)
        Y = Poly2({(0, 1): 1, (0, 0): -as_rat(dy)}, self.vars)
        return self.compose(X, Y)

    def compose(self, X: "Poly2", Y: "Poly2") -> "Poly2":
        """Substitute polynomials for both variables."""
        out = Poly2({}, self.vars)
        xp: dict[int, Poly2] = {0: Poly2.const(1, self.vars)}
        yp: dict[int, Poly2] = {0: Poly2.const(1, self.vars)}
        for (i, j), v in self.terms.items():
            for cache, base, n in ((xp, X, i), (yp, Y, j)):
                for m in range(max(cache) + 1, n + 1):
                    cache[m] = cache[m - 1] * base
            out = out + xp[i] * yp[j] * v
        return out

    def as_poly_in(self, var: int) -> list[Poly1]:
        """Coefficients (Poly1 in the other variable) of powers of ``var``."""
        other = 1 - var
        deg = self.degree_in(var)
        rows: list[dict] = [dict() for _ in range(deg + 1)]
        for k, v in self.terms.items():
            rows[k[var]][k[other]] = v
        return [Poly1([r.get(m, 0) for m in range(max(r, default=-1) + 1)], self.vars[other]) for r in rows]

    def specialize(self, var: int, value) -> Poly1:
        """Fix ``var`` to a rational value; result is a Poly1 in the other variable."""
        value = as_rat(value)
        other = 1 - var
        out: dict[int, Fraction] = {}
        for k, v in self.terms.items():
            out[k[other]] = out.get(k[other], Fraction(0)) + v * value ** k[var]
        n = max(out, default=-1) + 1
        return Poly1([out.get(m, 0) for m in range(n)], self.vars[other])

    def to_json(self) -> dict:
        return {f"{i},{j}": rat_to_str(v) for (i, j), v in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: dict, vars=("x", "y")) -> "Poly2":
        return cls({tuple(int(s) for s in k.split(",")): rat_from_str(v) for k, v in data.items()}, vars)


# ---------------------------------------------------------------------------
# determinants, resultants, discriminants


def det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, n):
            factor = m[r][col] / pv
            if factor:
                row, prow = m[r], m[col]
                for c in range(col, n):
                    row[c] -= factor * prow[c]
    return sign * result


def sylvester(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[list[Fraction]]:
    """Sylvester matrix from lowest-first coefficient lists with *formal* degrees."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant1(p: Poly1, q: Poly1) -> Fraction:
    """Sylvester resultant of two univariate polynomials."""
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    return det(sylvester(p.coeffs, q.coeffs))


def _interpolate(xs: list[Fraction], ys: list[Fraction], var: str) -> Poly1:
    # Newton divided differences
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly1([coef[-1]], var)
    for i in range(n - 2, -1, -1):
        out = out * Poly1([-xs[i], 1], var) + coef[i]
    return out


_VAR_INDEX = {"x": 0, "y": 1}


def resultant(p: Poly2, q: Poly2, eliminate: str | int = "y") -> Poly1:
    """Sylvester resultant of two bivariate polynomials, eliminating one variable.

    The Sylvester matrix is built with the formal degrees of ``p`` and ``q`` in
    the eliminated variable, so its determinant specializes correctly under
    evaluation; the result is recovered by interpolation at enough points.
    """
    var = eliminate if isinstance(eliminate, int) else p.vars.index(eliminate)
    pc, qc = p.as_poly_in(var), q.as_poly_in(var)
    m, n = len(pc) - 1, len(qc) - 1
    if m < 1 and n < 1:
        raise DegenerateEliminationError(
            f"both polynomials are constant in {p.vars[var]!r}; nothing to eliminate"
        )
    if p.is_zero() or q.is_zero():
        raise DegenerateEliminationError("zero polynomial in resultant")
    other = p.vars[1 - var]
    dp = max(c.degree for c in pc)
    dq = max(c.degree for c in qc)
    bound = n * max(dp, 0) + m * max(dq, 0)
    xs = [Fraction(k) for k in range(-(bound // 2), bound - bound // 2 + 1)]
    ys = []
    for x0 in xs:
        pv = [c.eval(x0) for c in pc]
        qv = [c.eval(x0) for c in qc]
        ys.append(det(sylvester(pv, qv)) if m + n > 0 else Fraction(1))
    return _interpolate(xs, ys, other)


def discriminant(p: Poly1) -> Fraction:
    """disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p)."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant1(p, p.derivative()) / p.lc


# ---------------------------------------------------------------------------
# real roots


def sturm_sequence(p: Poly1) -> list[Poly1]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    # scale to primitive form to keep coefficients small; signs preserved
    return [s * (1 / abs(s.content_primitive()[0])) if not s.is_zero() else s for s in seq]


def _sign_variations(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(seq: list[Poly1], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi]."""
    return _sign_variations(s.sign_at(lo) for s in seq) - _sign_variations(s.sign_at(hi) for s in seq)


def _sturm_variations_at_inf(seq: list[Poly1], positive: bool) -> int:
    vals = []
    for s in seq:
        sgn = 1 if s.lc > 0 else -1
        if not positive and s.degree % 2:
            sgn = -sgn
        vals.append(sgn)
    return _sign_variations(vals)


def count_real_roots(p: Poly1) -> int:
    """Number of distinct real roots, from the Sturm sequence at ±infinity."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p.squarefree())
    return _sturm_variations_at_inf(seq, False) - _sturm_variations_at_inf(seq, True)


def cauchy_bound(p: Poly1) -> Fraction:
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of ``minpoly`` pinned down by the isolating interval [lo, hi]."""

    minpoly: Poly1
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self):
        return float(self.mid)

    def refine(self, eps=DEFAULT_EPS) -> "AlgebraicReal":
        return refine(self, eps)

    def to_mpf(self, dps: int = 50):
        r = self.refine(Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps):
            return _to_mpf(r.mid)

    def approx(self, dps: int = 50) -> Fraction:
        """A rational within 10**-dps of the root."""
        return self.refine(Fraction(1, 10 ** (dps + 1))).mid

    def to_json(self) -> dict:
        return {"minpoly": self.minpoly.to_json(), "lo": rat_to_str(self.lo), "hi": rat_to_str(self.hi),
                "approx": mpmath.nstr(self.to_mpf(30), 25)}

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicReal":
        return cls(Poly1.from_json(data["minpoly"]), Fraction(data["lo"]), Fraction(data["hi"]))


def isolate_real_roots(p: Poly1) -> list[AlgebraicReal]:
    """One AlgebraicReal per distinct real root, sorted ascending."""
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if p.degree < 1:
        return []
    sq = p.squarefree().primitive()
    seq = sturm_sequence(sq)
    bound = cauchy_bound(sq)
    out: list[AlgebraicReal] = []

    def var_at(x):
        return _sign_variations(s.sign_at(x) for s in seq)

    stack = [(-bound, bound, var_at(-bound), var_at(bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1 and not (sq.sign_at(lo) == 0 and sq.sign_at(hi) != 0):
            if sq.sign_at(hi) == 0:
                out.append(AlgebraicReal(sq, hi, hi))
            else:
                out.append(AlgebraicReal(sq, lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = var_at(mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort(key=lambda r: r.lo)
    return out


def _dyadic_round(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def _log2inv(w: Fraction) -> int:
    return max(0, w.denominator.bit_length() - w.numerator.bit_length())


def _refine_mp(p: Poly1, lo: Fraction, hi: Fraction, slo: int, eps: Fraction) -> AlgebraicReal | None:
    """Newton in floating point, accepted only if an exact sign change brackets the result."""
    digits = max(20, _log2inv(eps) * 3 // 10 + 10)
    with mpmath.workdps(digits):
        cs = [_to_mpf(c) for c in p.coeffs]
        dcs = [k * c for k, c in enumerate(cs)][1:]
        x = _to_mpf((lo + hi) / 2)
        a, b = _to_mpf(lo), _to_mpf(hi)
        for _ in range(200):
            fx = mpmath.polyval(cs[::-1], x)
            dx = mpmath.polyval(dcs[::-1], x)
            if dx == 0:
                return None
            nx = x - fx / dx
            if not a <= nx <= b:
                return None
            if abs(nx - x) <= abs(x) * mpmath.eps * 4 or nx == x:
                x = nx
                break
            x = nx
        else:
            return None
        c = as_rat(x)
    half = eps / 2
    a, b = max(lo, c - half), min(hi, c + half)
    if a >= b:
        return None
    sa, sb = p.sign_at(a), p.sign_at(b)
    if sa == 0:
        return AlgebraicReal(p, a, a)
    if sb == 0:
        return AlgebraicReal(p, b, b)
    if sa == slo and sb != slo:
        return AlgebraicReal(p, a, b)
    return None


def refine(r: AlgebraicReal, eps=DEFAULT_EPS) -> AlgebraicReal:
    """Shrink the isolating interval to width <= eps.

    Bisection, switching to Newton steps once p' has no zero on the interval.
    A Newton step is only kept if the small bracket around it still shows a
    sign change, so the bracketed root never changes.
    """
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    p = r.minpoly
    lo, hi = r.lo, r.hi
    if hi - lo <= eps:
        return r
    if p.sign_at(lo) == 0:
        return AlgebraicReal(p, lo, lo)
    if p.sign_at(hi) == 0:
        return AlgebraicReal(p, hi, hi)
    slo = p.sign_at(lo)
    fast = _refine_mp(p, lo, hi, slo, eps)
    if fast is not None:
        return fast
    dp = p.derivative()
    dseq = sturm_sequence(dp) if dp.degree >= 1 else None
    monotone = False
    step = 0
    while hi - lo > eps:
        if not monotone and step % 4 == 0:
            monotone = dp.sign_at(lo) != 0 and (dseq is None or sturm_count(dseq, lo, hi) == 0)
        step += 1
        if monotone:
            w = hi - lo
            mid = (lo + hi) / 2
            bits = min(2 * _log2inv(w) + 8, _log2inv(eps) + 16)
            c = _dyadic_round(mid - p.eval(mid) / dp.eval(mid), bits)
            delta = max(w * w, eps / 4)
            a, b = max(lo, c - delta), min(hi, c + delta)
            if a < b and (b - a) <= w / 2:
                sa, sb = p.sign_at(a), p.sign_at(b)
                if sa == 0:
                    return AlgebraicReal(p, a, a)
                if sb == 0:
                    return AlgebraicReal(p, b, b)
                if sa == slo and sb != slo:
                    lo, hi = a, b
                    continue
        mid = (lo + hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            return AlgebraicReal(p, mid, mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return AlgebraicReal(p, lo, hi)


def real_roots_mp(p: Poly1, dps: int = 50) -> list:
    """Certified real roots as mpmath numbers accurate to ~dps digits."""
    return [r.to_mpf(dps) for r in isolate_real_roots(p)]


# ---------------------------------------------------------------------------
# arithmetic mod p


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _pdiv(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    inv = pow(b[-1], -1, p)
    while len(_trim(a)) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
    return _trim(q)


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def distinct_degree_profile(poly: Poly1, prime: int, disc: Fraction | None = None) -> tuple[int, ...]:
    """Degrees of the irreducible factors of ``poly`` mod ``prime``, descending.

    Raises :class:`BadPrimeError` when ``prime`` divides the leading
    coefficient or the discriminant of the integer-scaled polynomial.
    """
    ints = poly.int_coeffs()
    if ints[-1] % prime == 0:
        raise BadPrimeError(prime, "divides the leading coefficient")
    if disc is None:
        disc = discriminant(poly.primitive())
    if disc == 0 or disc.numerator % prime == 0:
        raise BadPrimeError(prime, "divides the discriminant")
    inv = pow(ints[-1], -1, prime)
    f = [c * inv % prime for c in ints]
    degrees: list[int] = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppowmod(h, prime, f, prime)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % prime
        g = _pgcd(f, _trim(diff), prime)
        dg = len(g) - 1
        if dg > 0:
            degrees.extend([i] * (dg // i))
            f = _pdiv(f, g, prime)
            h = _pmod(h, f, prime) if len(f) > 1 else [0]
    if len(f) - 1 > 0:
        degrees.append(len(f) - 1)
    return tuple(sorted(degrees, reverse=True))


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for k in range(2, math.isqrt(n) + 1):
        if sieve[k]:
            sieve[k * k :: k] = bytearray(len(sieve[k * k :: k]))
    return [k for k in range(n + 1) if sieve[k]]
