"""The three construction pipelines: generic septics, septisection, seventh roots.

Each ends in the same tail: from (s1, s2, s3, s4, e, f) compute t0..t3, then the
first directrix and focus, with the second parabola fixed to y = x^2/4
(directrix y = -1, focus (0, 1)) folding S = (0, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..cubic import config_from_cubic
from ..errors import (
    BranchSearchFailed,
    ChartError,
    DegenerateA,
    DegenerateDenominator,
    GeometryError,
    NoRealE,
    NormalFormUnreachable,
    PipelineError,
    SearchExhausted,
    SolveFailed,
    ZeroRootError,
)
from ..exactmath import (
    AlgebraicReal,
    Poly1,
    _to_mpf,
    as_rat,
    count_real_roots,
    isolate_real_roots,
)
from ..geometry import FoldConfig, FoldSolution, Line, Point
from ..intersect import fold_solution_from_point
from .chain import Step, TransformChain
from .formulas import (
    c1_value,
    c2_value,
    flat_septic_coefficients,
    root7_curve,
    root7_curve_coefficients,
    root7_f_of_w,
    septisection_s1,
    septisection_s3,
    septisection_sextic,
    t_from_s,
)
from .normal_form import (
    SepticNormalForm,
    normal_form_routes,
    normalize_septic,
    pe_polynomial,
    s_from_sigma,
    sigma_equations,
)
from .plan import DPS, ConstructionPlan, Quantity, q_approx, q_exact, verify_plan

SECOND_DIRECTRIX = Line(0, 1, 1)
SECOND_FOCUS = Point(0, 1)
SECOND_NODE = Point(0, 0)


def _mp(v):
    return _to_mpf(v) if isinstance(v, (Fraction, int)) else mpmath.mpf(v)


def _small(v, scale=1, digits=None) -> bool:
    digits = DPS // 2 if digits is None else digits
    return abs(v) <= mpmath.mpf(10) ** (-digits) * max(1, abs(scale))


def _strip_e(pe: Poly1) -> Poly1:
    """Remove the factor e^k so that e = 0 is never offered as a root."""
    k = 0
    while k < pe.degree and pe.coeff(k) == 0:
        k += 1
    return Poly1(pe.coeffs[k:], pe.var)


def _order_e_roots(roots: list[AlgebraicReal]) -> list[AlgebraicReal]:
    return sorted(roots, key=lambda r: (abs(r.mid), r.mid < 0))


def fold_tail(s: tuple, e, f) -> tuple[FoldConfig, dict[str, Quantity]]:
    """t0..t3 and the first parabola for given s1..s4, e, f (numbers at working precision)."""
    s1, s2, s3, s4 = (_mp(v) for v in s)
    e, f = _mp(e), _mp(f)
    if _small(e) or _small(f + 2):
        raise DegenerateDenominator("e (f + 2) vanishes", e=mpmath.nstr(e, 20), f=mpmath.nstr(f, 20))
    ts = t_from_s(s1, s2, s3, s4, e, f)
    t_rat = [as_rat(t) for t in ts]
    e_rat, f_rat = as_rat(e), as_rat(f)
    try:
        a, b, c, d = config_from_cubic(*t_rat, e_rat, f_rat)
        cfg = FoldConfig(Line.from_chart(a, b), Point(c, d), Point(e_rat, f_rat),
                         SECOND_DIRECTRIX, SECOND_FOCUS, SECOND_NODE)
    except (ChartError, GeometryError, ZeroDivisionError) as exc:
        raise DegenerateDenominator(f"first parabola degenerates: {exc}") from exc
    qs = {}
    for name, v in zip(("t0", "t1", "t2", "t3"), t_rat):
        qs[name] = q_approx(name, v, "closed form in s1..s4, e, f")
    for name, v in zip("abcd", (a, b, c, d)):
        qs[name] = q_approx(name, v, "inverse of the cubic's coefficient map")
    return cfg, qs


# ---------------------------------------------------------------------------
# generic septics


def _polyroots(coeffs_low: list):
    cs = list(coeffs_low)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) < 2:
        return []
    return mpmath.polyroots(cs[::-1], maxsteps=500, extraprec=4 * DPS)


def _peval(coeffs_low, x):
    acc = 0
    for c in reversed(coeffs_low):
        acc = acc * x + c
    return acc


def _pscale(coeffs_low, x):
    return sum(abs(c) * abs(x) ** k for k, c in enumerate(coeffs_low)) or 1


def solve_sigma(nf: SepticNormalForm, e) -> list:
    """Real common roots of the two sigma conditions for a given e."""
    g1, g2 = sigma_equations(nf, e)
    base = g2 if any(c != 0 for c in g2[1:]) else g1
    other = g1 if base is g2 else g2
    out = []
    for z in _polyroots(base):
        if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-DPS // 3) * (1 + abs(z)):
            continue
        x = mpmath.re(z)
        if x == 0:
            continue
        # polish on g1, which has the common root as a simple root generically
        d1 = [k * c for k, c in enumerate(g1)][1:]
        for _ in range(8):
            dv = _peval(d1, x)
            if dv == 0:
                break
            x = x - _peval(g1, x) / dv
        if _small(_peval(other, x), _pscale(other, x)) and _small(_peval(g1, x), _pscale(g1, x)):
            if all(abs(x - y) > mpmath.mpf(10) ** (-DPS // 3) * (1 + abs(y)) for y in out):
                out.append(x)
    return out


def forward_check(nf: SepticNormalForm, s: tuple, e) -> float:
    """Relative mismatch between the normal form and the f = 0 septic pulled back by W = s1 / Z."""
    s1 = s[0]
    F = flat_septic_coefficients(*s, e)
    # Z^7 F(s1 / Z) / F[0], lowest power of Z first
    pulled = [F[7 - j] * s1 ** (7 - j) / F[0] for j in range(8)]
    want = [_mp(c) for c in nf.poly().coeffs]
    scale = max(abs(c) for c in want)
    return float(max(abs(p - w) for p, w in zip(pulled, want)) / scale)


def solve_generic(nf: SepticNormalForm, tol: float = 1e-8, target: Poly1 | None = None,
                  chain: TransformChain | None = None, seed: int | None = None) -> ConstructionPlan:
    """Fold configuration realizing the normal form's real roots (or ``target``'s, through ``chain``)."""
    if target is None:
        target, chain = nf.poly("x"), TransformChain()
    chain = chain or TransformChain()
    pe = pe_polynomial(nf)
    e_roots = _order_e_roots(isolate_real_roots(_strip_e(pe)))
    if not e_roots:
        raise NoRealE("p_e has no real nonzero root", sign_quantity=str(nf.sign_quantity()))
    expected = isolate_real_roots(target)
    attempts = []
    with mpmath.workdps(DPS):
        for er in e_roots:
            e = er.to_mpf(DPS + 10)
            sigmas = solve_sigma(nf, e)
            if not sigmas:
                attempts.append({"e": mpmath.nstr(e, 20), "failure": "no real common sigma"})
                continue
            for sigma in sigmas:
                s = s_from_sigma(nf, sigma)
                mismatch = forward_check(nf, s, e)
                if mismatch > 1e-25:
                    attempts.append({"e": mpmath.nstr(e, 20), "failure": f"forward check {mismatch:.3g}"})
                    continue
                try:
                    cfg, qs = fold_tail(s, e, 0)
                except PipelineError as exc:
                    attempts.append({"e": mpmath.nstr(e, 20), "failure": str(exc)})
                    continue
                full = chain + TransformChain.of(Step("scale", as_rat(sigma)), Step("invert"))
                quantities = {
                    "e": q_approx("e", as_rat(e), "real root of p_e (quartic in e^2)", pe),
                    "f": q_exact("f", 0, "fixed"),
                    "s1": q_approx("s1", as_rat(s[0]), "common root of the two sigma conditions"),
                    "s2": q_approx("s2", as_rat(s[1]), "a4 s1^2 / a5"),
                    "s3": q_approx("s3", as_rat(s[2]), "a3 s1^3 / a5"),
                    "s4": q_approx("s4", as_rat(s[3]), "a2 s1^4 / a5"),
                    **qs,
                }
                plan = ConstructionPlan("generic", target, full, quantities, cfg, expected, tol,
                                        notes=[f"normal form {nf.to_json()}"], seed=seed)
                report = verify_plan(plan, tol)
                if report.ok:
                    return plan
                attempts.append({"e": mpmath.nstr(e, 20), "failure": f"verification error {report.max_error:.3g}"})
    raise SolveFailed("no root of p_e led to a verified fold", attempts=attempts)


# ---------------------------------------------------------------------------
# lambda search


def lambda_transform(p: Poly1, lam) -> Poly1:
    """Monic polynomial whose roots are w + lam / w for the roots w of p."""
    return Step("lambda", as_rat(lam)).apply_poly(p)


def rationals_by_height(max_height: int):
    """Nonzero rationals p/q with max(|p|, q) increasing, each followed by its negative."""
    for h in range(1, max_height + 1):
        vals = {Fraction(h, q) for q in range(1, h + 1) if math.gcd(h, q) == 1}
        vals |= {Fraction(p, h) for p in range(1, h) if math.gcd(p, h) == 1}
        for v in sorted(vals):
            yield v
            yield -v


def _pe_has_real_root(nf: SepticNormalForm) -> bool:
    return count_real_roots(_strip_e(pe_polynomial(nf))) > 0


def lambda_candidates(p: Poly1, max_height: int = 64, seen: list | None = None):
    """Yield (lambda, nf, chain) in search order; lambda = 0 stands for the identity."""
    if p.coeff(0) == 0:
        raise ZeroRootError("w = 0 is a root; factor it out first")
    try:
        for _, nf, chain in normal_form_routes(p):
            if _pe_has_real_root(nf):
                yield Fraction(0), nf, chain
    except NormalFormUnreachable:
        pass
    for lam in rationals_by_height(max_height):
        q = lambda_transform(p, lam)
        if not q.is_squarefree() or q.coeff(0) == 0:
            continue
        try:
            routes = normal_form_routes(q)
        except PipelineError:
            continue
        for _, nf, chain in routes:
            sq = nf.sign_quantity()
            if seen is not None:
                seen.append((str(lam), float(sq)))
            if sq > 0 and _pe_has_real_root(nf):
                yield lam, nf, TransformChain.of(Step("lambda", lam)) + chain


def lambda_search(p: Poly1, max_height: int = 64) -> tuple[Fraction, SepticNormalForm, TransformChain]:
    seen: list = []
    for cand in lambda_candidates(p, max_height, seen):
        return cand
    raise SearchExhausted(f"no lambda of height <= {max_height} works", signs=seen[:200])


def solve_septic(p: Poly1, tol: float = 1e-8, max_height: int = 64, seed: int | None = None) -> ConstructionPlan:
    """Normalize, lambda-search when needed, solve and verify a rational septic."""
    p = p.monic()
    failures = []
    for lam, nf, chain in lambda_candidates(p, max_height):
        try:
            plan = solve_generic(nf, tol, target=p, chain=chain, seed=seed)
        except PipelineError as exc:
            failures.append({"lambda": str(lam), "error": str(exc)})
            continue
        if lam != 0:
            plan.quantities["lambda"] = q_exact("lambda", lam, "first rational by height that works")
        return plan
    raise SearchExhausted("no candidate normal form could be solved", failures=failures[:50])


# ---------------------------------------------------------------------------
# septisection

A_EPS = 1e-6


def septisection_target(A: Fraction) -> Poly1:
    return Poly1([-A, -7, 0, 14, 0, -7, 0, 1], "x")


@dataclass
class SeptisectionPlan:
    phi: float
    A: float
    e_minpoly: Poly1 | None
    s1: object
    s3: object
    all_angles: list[float]
    branch0: object = None
    branch0_solution: FoldSolution | None = None
    fallback: str | None = None

    @property
    def s2(self):
        return 0

    @property
    def s4(self):
        return 0

    def to_json(self) -> dict:
        return {
            "phi": self.phi,
            "A": self.A,
            "e_minpoly": self.e_minpoly.to_json() if self.e_minpoly is not None else None,
            "s1": mpmath.nstr(self.s1, 25) if self.s1 is not None else None,
            "s2": "0",
            "s3": mpmath.nstr(self.s3, 25) if self.s3 is not None else None,
            "s4": "0",
            "all_angles": self.all_angles,
            "branch0": mpmath.nstr(self.branch0, 25) if self.branch0 is not None else None,
            "branch0_solution": self.branch0_solution.to_json() if self.branch0_solution else None,
            "fallback": self.fallback,
        }


def _branch_angles(phi: float) -> list[float]:
    return [(phi + 2 * math.pi * k) / 7 for k in range(7)]


def _septisect_fallback(phi: float, A_mp, tol: float) -> tuple[SeptisectionPlan, ConstructionPlan]:
    angles = _branch_angles(phi)
    if abs(A_mp) < A_EPS:
        # x (x^6 - 7x^4 + 14x^2 - 7): the sextic is a cubic in u = x^2
        u_roots = [r.to_mpf(DPS) for r in isolate_real_roots(Poly1([-7, 14, -7, 1], "u"))]
        roots = [mpmath.mpf(0)] + [sg * mpmath.sqrt(u) for u in u_roots for sg in (1, -1)]
        A_rat = Fraction(0)
        how = "A = 0: x (x^6 - 7x^4 + 14x^2 - 7), a cubic in x^2"
    else:
        roots = [2 * mpmath.cos((mpmath.mpf(phi) + 2 * mpmath.pi * k) / 7) for k in range(7)]
        A_rat = as_rat(A_mp)
        how = "A near +-2: roots 2cos((phi + 2 pi k)/7) evaluated directly"
    target = septisection_target(A_rat)
    x0 = 2 * mpmath.cos(mpmath.mpf(phi) / 7)
    branch0 = min(roots, key=lambda r: abs(r - x0))
    quantities = {"A": q_approx("A", as_rat(A_mp), "2 cos(phi)")}
    plan = ConstructionPlan("septisection-fallback", target, TransformChain(), quantities, None,
                            isolate_real_roots(target), tol, notes=[how], direct_roots=roots)
    sp = SeptisectionPlan(phi, float(A_mp), None, None, None, angles, branch0, None, how)
    return sp, plan


def septisect(phi: float, tol: float = 1e-9, fallback: bool = True) -> tuple[SeptisectionPlan, ConstructionPlan]:
    """Fold realizing x = 2cos(phi/7) and its six companions."""
    if not (0 < phi < 2 * math.pi):
        raise ValueError("phi must lie in (0, 2 pi)")
    with mpmath.workdps(DPS):
        phi_mp = mpmath.mpf(phi)
        A_mp = 2 * mpmath.cos(phi_mp)
        if abs(A_mp) < A_EPS or abs(abs(A_mp) - 2) < A_EPS:
            if not fallback:
                raise DegenerateA("2cos(phi) is too close to 0 or +-2", A=float(A_mp))
            return _septisect_fallback(phi, A_mp, tol)
        A = as_rat(A_mp)
        target = septisection_target(A)
        nf, chain = normalize_septic(target)
        sextic = septisection_sextic(A)
        expected = isolate_real_roots(target)
        attempts = []
        for er in _order_e_roots(isolate_real_roots(sextic)):
            e = er.to_mpf(DPS + 10)
            Am = _to_mpf(A)
            try:
                s1 = septisection_s1(Am, e)
                s3 = septisection_s3(Am, e)
            except ZeroDivisionError:
                attempts.append({"e": mpmath.nstr(e, 20), "failure": "s-formula denominator vanishes"})
                continue
            s = (s1, mpmath.mpf(0), s3, mpmath.mpf(0))
            mismatch = forward_check(nf, s, e)
            if mismatch > 1e-25:
                attempts.append({"e": mpmath.nstr(e, 20), "failure": f"forward check {mismatch:.3g}"})
                continue
            try:
                cfg, qs = fold_tail(s, e, 0)
            except PipelineError as exc:
                attempts.append({"e": mpmath.nstr(e, 20), "failure": str(exc)})
                continue
            full = chain + TransformChain.of(Step("scale", as_rat(s1)), Step("invert"))
            quantities = {
                "A": q_approx("A", A, "2 cos(phi)"),
                "e": q_approx("e", as_rat(e), "real root of the sextic (cubic in e^2)", sextic),
                "f": q_exact("f", 0, "fixed"),
                "s1": q_approx("s1", as_rat(s1), "closed form in A and e"),
                "s2": q_exact("s2", 0, "fixed"),
                "s3": q_approx("s3", as_rat(s3), "closed form in A and e"),
                "s4": q_exact("s4", 0, "fixed"),
                **qs,
            }
            plan = ConstructionPlan("septisection", target, full, quantities, cfg, expected, tol,
                                    notes=[f"phi = {phi!r}"])
            report = verify_plan(plan, tol)
            if not report.ok:
                attempts.append({"e": mpmath.nstr(e, 20), "failure": f"verification error {report.max_error:.3g}"})
                continue
            x0 = 2 * mpmath.cos(phi_mp / 7)
            best = min((r for r in report.realized), key=lambda r: abs(r.root - x0))
            G = _point_for_W(cfg, best.W)
            sol = fold_solution_from_point(cfg, G)
            sp = SeptisectionPlan(phi, float(A_mp), sextic, s1, s3, _branch_angles(phi), best.root, sol)
            return sp, plan
    raise SolveFailed("no root of the sextic gave a verified fold", attempts=attempts)


def _point_for_W(cfg: FoldConfig, W) -> Point:
    """Intersection point on the second cubic along the direction (W, 1) from S."""
    from ..intersect import intersect_config

    pts = intersect_config(cfg, precision=1e-40).points
    return min(pts, key=lambda p: abs(_to_mpf(p.point.x) / _to_mpf(p.point.y) - W)).point


# ---------------------------------------------------------------------------
# seventh roots

ROOT7_T_MAX = Fraction(8, 3)


def root7_scaling(s: Fraction) -> int:
    """Smallest k >= 0 with (s / 2^(7k))^2 < 8/3."""
    k = 0
    while (s / Fraction(2) ** (7 * k)) ** 2 >= ROOT7_T_MAX:
        k += 1
    return k


def seventh_root(s, tol: float = 1e-8) -> ConstructionPlan:
    """Fold realizing the real root -s^(1/7) of x^7 + s."""
    s = as_rat(s)
    if s <= 0:
        raise ValueError("s must be positive (use x -> -x for negative radicands)")
    target = Poly1([s, 0, 0, 0, 0, 0, 0, 1], "x")
    k = root7_scaling(s)
    r = Fraction(1, 2**k)
    sr = s * r**7
    T = sr * sr
    wpoly = Poly1([3 * T - 8, 7 * T, 5 * T, T], "w")  # T (w+1)^2 (w+3) - 8
    wpos = [x for x in (r.refine(Fraction(1, 10**40)) for r in isolate_real_roots(wpoly)) if x.lo > 0]
    if not wpos:
        raise BranchSearchFailed("no positive w", T=str(T))
    wroot = wpos[0]
    candidates = []
    with mpmath.workdps(DPS):
        w = wroot.to_mpf(DPS + 10)
        ratio = 2 * w / (w + 7)
        q = mpmath.sqrt(ratio)
        t = ratio**7 * _to_mpf(T)
        sqrt_t = _to_mpf(sr) * q**7
        curve = root7_curve_coefficients(t)
        fs = [mpmath.re(z) for z in _polyroots(curve) if abs(mpmath.im(z)) < mpmath.mpf(10) ** (-DPS // 3)]
        fs.sort(key=abs)
        f_closed = root7_f_of_w(w)
        for f in fs:
            if _small(f + 2) or _small(f):
                continue
            a2, a1, a0 = f / 2 + 1, f**3 + 4 * f**2 - 8 * f, f**5 / 2 + 3 * f**4
            disc = a1 * a1 - 4 * a2 * a0
            if disc < 0:
                candidates.append({"f": mpmath.nstr(f, 20), "failure": "no real e^2"})
                continue
            for E in ((-a1 + mpmath.sqrt(disc)) / (2 * a2), (-a1 - mpmath.sqrt(disc)) / (2 * a2)):
                if E <= 0:
                    candidates.append({"f": mpmath.nstr(f, 20), "e2": mpmath.nstr(E, 20), "failure": "e^2 <= 0"})
                    continue
                e = mpmath.sqrt(E)
                if c2_value(0, 0, 0, 0, e, f) < 0:
                    e = -e  # C2 is odd in e
                c1 = c1_value(0, 0, 0, 0, e, f)
                c2 = c2_value(0, 0, 0, 0, e, f)
                if not (_small(c1, 1 + abs(f) ** 5) and _small(c2 - sqrt_t, sqrt_t)):
                    candidates.append({"f": mpmath.nstr(f, 20), "e": mpmath.nstr(e, 20),
                                       "C1": mpmath.nstr(c1, 5), "C2": mpmath.nstr(c2, 20)})
                    continue
                try:
                    cfg, qs = fold_tail((0, 0, 0, 0), e, f)
                except PipelineError as exc:
                    candidates.append({"f": mpmath.nstr(f, 20), "failure": str(exc)})
                    continue
                chain = TransformChain.of(*([Step("scale", 1 / r)] if k else []), Step("scale", 1 / as_rat(q)))
                quantities = {
                    "s": q_exact("s", s, "input"),
                    "r": q_exact("r", r, "2^-k making the scaled T below 8/3"),
                    "T": q_exact("T", T, "(s r^7)^2"),
                    "w": q_approx("w", as_rat(w), "positive root of T (w+1)^2 (w+3) = 8", wpoly),
                    "t": q_approx("t", as_rat(t), "(2w/(w+7))^7 T"),
                    "q": q_approx("q", as_rat(q), "sqrt(2w/(w+7))"),
                    "f": q_approx("f", as_rat(f), "real root of the degree-10 curve at t"),
                    "f_closed": q_approx("f_closed", as_rat(f_closed), "8w/(w^2+4w+7), cross-check"),
                    "e": q_approx("e", as_rat(e), "root of C1 = 0 (quadratic in e^2), sign from C2 = sqrt(t)"),
                    "curve_residual": q_approx("curve_residual", as_rat(abs(root7_curve(f, t))),
                                               "degree-10 curve at (f, t)"),
                    **qs,
                }
                for name in ("s1", "s2", "s3", "s4"):
                    quantities[name] = q_exact(name, 0, "fixed")
                plan = ConstructionPlan("root7", target, chain, quantities, cfg, isolate_real_roots(target), tol)
                report = verify_plan(plan, tol)
                if report.ok:
                    return plan
                candidates.append({"f": mpmath.nstr(f, 20), "e": mpmath.nstr(e, 20),
                                   "failure": f"verification error {report.max_error:.3g}"})
    raise BranchSearchFailed("no (f, e) branch passed the forward check", candidates=candidates)
