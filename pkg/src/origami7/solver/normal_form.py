"""The septic normal form W^7 + a1 W^5 + a2 W^4 + a3 W^3 + a4 W^2 + a5 W + a5 and p_e."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NormalFormUnreachable, ZeroRootError
import mpmath

from ..exactmath import Poly1, _to_mpf, as_rat, rat_to_str
from .chain import Step, TransformChain


@dataclass(frozen=True)
class SepticNormalForm:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a5: Fraction

    def __post_init__(self):
        for k in ("a1", "a2", "a3", "a4", "a5"):
            object.__setattr__(self, k, as_rat(getattr(self, k)))
        if self.a5 == 0:
            raise ValueError("a5 must be nonzero")

    @property
    def coeffs(self) -> tuple:
        return self.a1, self.a2, self.a3, self.a4, self.a5

    def poly(self, var: str = "W") -> Poly1:
        a1, a2, a3, a4, a5 = self.coeffs
        return Poly1([a5, a5, a4, a3, a2, a1, 0, 1], var)

    @classmethod
    def from_poly(cls, p: Poly1) -> "SepticNormalForm":
        p = p.monic()
        if p.degree != 7 or p.coeff(6) != 0 or p.coeff(0) != p.coeff(1):
            raise ValueError("polynomial is not in normal form")
        return cls(p.coeff(5), p.coeff(4), p.coeff(3), p.coeff(2), p.coeff(1))

    def sign_quantity(self) -> Fraction:
        """a5 (a1 a2 - 2 a4); positive values guarantee a real root of p_e."""
        return self.a5 * (self.a1 * self.a2 - 2 * self.a4)

    def to_json(self) -> dict:
        return {k: rat_to_str(v) for k, v in zip(("a1", "a2", "a3", "a4", "a5"), self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "SepticNormalForm":
        return cls(*(Fraction(data[k]) for k in ("a1", "a2", "a3", "a4", "a5")))


def _lift(nf: SepticNormalForm, like) -> tuple:
    if isinstance(like, (mpmath.mpf, mpmath.mpc)):
        return tuple(_to_mpf(c) for c in nf.coeffs)
    return nf.coeffs


def _is_binomial(p: Poly1) -> bool:
    return all(c == 0 for c in p.coeffs[1:-1])


def _scale_to_nf(q: Poly1, steps: list[Step]) -> tuple[SepticNormalForm, TransformChain]:
    """Finish a route whose polynomial already lacks the degree-6 term."""
    q0, q1 = q.coeff(0), q.coeff(1)
    if q0 == 0 or q1 == 0:
        raise NormalFormUnreachable("linear or constant coefficient vanishes",
                                    suggestion="apply a lambda step first", q0=rat_to_str(q0), q1=rat_to_str(q1))
    kappa = q0 / q1
    if kappa != 1:
        st = Step("scale", kappa)
        steps = steps + [st]
        q = st.apply_poly(q)
    return SepticNormalForm.from_poly(q), TransformChain(tuple(steps))


def _check_septic(p: Poly1) -> Poly1:
    if p.degree != 7:
        raise ValueError(f"expected degree 7, got {p.degree}")
    p = p.monic()
    if p.coeff(0) == 0:
        raise ZeroRootError("constant term is zero; factor out W first")
    if not p.is_squarefree():
        raise NormalFormUnreachable("polynomial has repeated roots")
    if _is_binomial(p):
        raise NormalFormUnreachable("binomial W^7 + c: no linear substitution reaches the normal form",
                                    route="root7")
    return p


def normal_form_routes(p: Poly1) -> list[tuple[str, SepticNormalForm, TransformChain]]:
    """Every rational route to the normal form, in order of preference.

    * ``scale``: the W^6 term is already absent, only W -> kappa W is needed;
    * ``invert``: the W^1 term is absent, so W -> 1/W removes the W^6 term;
    * ``shift``: x -> x + c6/7 removes the W^6 term in general.
    Each route ends with the scaling that makes the constant equal the linear coefficient.
    """
    p = _check_septic(p)
    routes = []
    errors = []
    if p.coeff(6) == 0:
        try:
            routes.append(("scale", *_scale_to_nf(p, [])))
        except NormalFormUnreachable as exc:
            errors.append(exc)
    if p.coeff(1) == 0:
        inv = Step("invert")
        try:
            routes.append(("invert", *_scale_to_nf(inv.apply_poly(p), [inv])))
        except NormalFormUnreachable as exc:
            errors.append(exc)
    if p.coeff(6) != 0:
        sh = Step("shift", p.coeff(6) / 7)
        try:
            routes.append(("shift", *_scale_to_nf(sh.apply_poly(p), [sh])))
        except NormalFormUnreachable as exc:
            errors.append(exc)
    if not routes:
        raise errors[0]
    return routes


def normalize_septic(p: Poly1) -> tuple[SepticNormalForm, TransformChain]:
    """Bring a degree-7 polynomial to normal form by rational substitutions.

    The returned chain maps roots of ``p`` to roots of the normal form; see
    :func:`normal_form_routes` for the alternatives.
    """
    _, nf, chain = normal_form_routes(p)[0]
    return nf, chain


def pe_coefficients(a1, a2, a3, a4, a5) -> list:
    """Coefficients of p_e in e^0, e^2, e^4, e^6, e^8 (a3 does not occur)."""
    c6 = (48*a1**2*a2*a5**2 + 40*a1*a2**4*a5 - 176*a1*a2**2*a5**2 - 56*a1*a4*a5**2 + 112*a1*a5**3
          + 4*a2**7 - 40*a2**5*a5 - 40*a2**3*a4*a5 + 128*a2**3*a5**2 + 136*a2*a4*a5**2
          - 128*a2*a5**3) / a5**3
    c4 = (368*a1**4*a2**2*a5**2 + 448*a1**4*a5**3 - 64*a1**3*a2**5*a5 - 192*a1**3*a2**3*a5**2
          - 1248*a1**3*a2*a4*a5**2 - 1280*a1**3*a2*a5**3 + 448*a1**2*a2**4*a4*a5 - 96*a1**2*a2**4*a5**2
          + 1888*a1**2*a2**2*a4*a5**2 + 128*a1**2*a2**2*a5**3 + 896*a1**2*a4**2*a5**2
          - 896*a1**2*a4*a5**3 + 1792*a1**2*a5**4 + 128*a1*a2**5*a4*a5 - 64*a1*a2**5*a5**2
          - 1184*a1*a2**3*a4**2*a5 - 544*a1*a2**3*a4*a5**2 + 512*a1*a2**3*a5**3 - 320*a1*a2*a4**2*a5**2
          - 640*a1*a2*a4*a5**3 - 1024*a1*a2*a5**4 - 32*a2**6*a4**2 + 64*a2**6*a4*a5 - 16*a2**6*a5**2
          + 352*a2**4*a4**2*a5 - 736*a2**4*a4*a5**2 + 192*a2**4*a5**3 + 800*a2**2*a4**3*a5
          - 1600*a2**2*a4**2*a5**2 + 2816*a2**2*a4*a5**3 - 768*a2**2*a5**4 - 896*a4**3*a5**2
          + 3584*a4**2*a5**3 - 3584*a4*a5**4 + 1024*a5**5) / a5**4
    c2 = (256*a1**7*a5**3 + 1024*a1**6*a2*a5**3 - 1024*a1**5*a2**2*a4*a5**2 + 1536*a1**5*a2**2*a5**3
          - 3584*a1**5*a4*a5**3 - 2048*a1**4*a2**3*a4*a5**2 + 1024*a1**4*a2**3*a5**3
          + 4608*a1**4*a2*a4**2*a5**2 - 8704*a1**4*a2*a4*a5**3 + 512*a1**3*a2**4*a4**2*a5
          - 1024*a1**3*a2**4*a4*a5**2 + 256*a1**3*a2**4*a5**3 + 12800*a1**3*a2**2*a4**2*a5**2
          - 6656*a1**3*a2**2*a4*a5**3 - 3584*a1**3*a4**3*a5**2 + 14336*a1**3*a4**2*a5**3
          - 3072*a1**2*a2**3*a4**3*a5 + 6144*a1**2*a2**3*a4**2*a5**2 - 1536*a1**2*a2**3*a4*a5**3
          - 27648*a1**2*a2*a4**3*a5**2 + 15360*a1**2*a2*a4**2*a5**3 + 7168*a1*a2**2*a4**4*a5
          - 12288*a1*a2**2*a4**3*a5**2 + 3072*a1*a2**2*a4**2*a5**3 + 14336*a1*a4**4*a5**2
          - 14336*a1*a4**3*a5**3 + 64*a2**5*a4**4 - 768*a2**3*a4**4*a5 - 4608*a2*a4**5*a5
          + 11264*a2*a4**4*a5**2 - 2048*a2*a4**3*a5**3) / a5**5
    c0 = (-1024*a1**3*a2**3*a4**4 + 6144*a1**2*a2**2*a4**5 - 12288*a1*a2*a4**6 + 8192*a4**7) / a5**5
    return [c0, c2, c4, c6, 1 + 0 * a5]


def pe_polynomial(nf: SepticNormalForm) -> Poly1:
    c0, c2, c4, c6, c8 = pe_coefficients(*nf.coeffs)
    return Poly1([c0, 0, c2, 0, c4, 0, c6, 0, c8], "e")


def pe_at_zero_closed_form(a1, a2, a3, a4, a5):
    return -1024 * a4**4 * (a1 * a2 - 2 * a4) ** 3 / a5**5


def sigma_equations(nf: SepticNormalForm, e) -> tuple[list, list]:
    """Two polynomials in sigma = s1 (lowest first) whose common root fixes the s-system.

    Writing c0 = sigma^7 / a5 for the constant of the f = 0 septic, matching the
    reversed-and-scaled septic to the normal form gives s4 = a2 c0 / sigma^3,
    s3 = a3 c0 / sigma^4, s2 = a4 c0 / sigma^5 and the two conditions below.
    """
    a1, a2, a3, a4, a5 = _lift(nf, e)
    g1 = [a5 * e**3, 0, 0, 0, -4 * e * a2, 0, 0, 16]
    g2 = [-a5 * e**3, 4 * e**2 * a5, -8 * e * a4, 0, -4 * e * a2, 16 * a1]
    return g1, g2


def s_from_sigma(nf: SepticNormalForm, sigma) -> tuple:
    a1, a2, a3, a4, a5 = _lift(nf, sigma)
    c0 = sigma**7 / a5
    return sigma, a4 * c0 / sigma**5, a3 * c0 / sigma**4, a2 * c0 / sigma**3
