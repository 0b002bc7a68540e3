"""Closed forms for the fixed-second-parabola setup.

All functions work on Fractions and on mpmath numbers alike.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactmath import Poly1


def t_from_s(s1, s2, s3, s4, e, f) -> tuple:
    """(t0, t1, t2, t3) making the fold septic W^7 + s1 W^6 + ... + s4 W^3 + C1 W^2 + C2."""
    t0 = (2 * s1 * e + s2 * f - 3 * e**2 / 2 - f**2 / 2 - s4 * (f + 2)) / (e * f + 2 * e)
    t1 = 3 * e + f * t0 + 2 * t0 - 2 * s1
    t2 = (4 * s1 * e - 3 * e**2 + f**2 + 4 * f - 4 * s2) / (2 + f)
    t3 = (-2 * s1 * e**2 + 4 * s2 * e + e**3 + 4 * e + f**3 * t0 + 6 * f**2 * t0 + 12 * f * t0 - 8 * s3) / (
        4 * f + 4 + f**2
    )
    return t0, t1, t2, t3


def c1_value(s1, s2, s3, s4, e, f):
    num = (
        -2 * s1 * e**3 * f - 4 * s1 * e**3 - 2 * s1 * e * f**3 - 12 * s1 * e * f**2
        - s2 * e**2 * f**2 + 2 * s2 * e**2 * f + 8 * s2 * e**2 - s2 * f**4 - 6 * s2 * f**3
        + 8 * s3 * e * f**2 + 16 * s3 * e * f
        + s4 * e**2 * f**2 + 4 * s4 * e**2 * f + 4 * s4 * e**2 + s4 * f**4 + 8 * s4 * f**3 + 12 * s4 * f**2
        + e**4 * f / 2 + e**4 + e**2 * f**3 + 4 * e**2 * f**2 - 8 * e**2 * f + f**5 / 2 + 3 * f**4
    )
    return num / (4 * (e * f**2 + 4 * e * f + 4 * e))


def c2_value(s1, s2, s3, s4, e, f):
    num = (
        -2 * s1 * e**3 * f**2 - 4 * s1 * e**3 * f - 2 * s1 * e * f**4 - 8 * s1 * e * f**3
        - s2 * e**2 * f**3 + 4 * s2 * e**2 * f - s2 * f**5 - 4 * s2 * f**4
        + 4 * s3 * e * f**3 + 8 * s3 * e * f**2
        + s4 * e**2 * f**3 + 6 * s4 * e**2 * f**2 + 12 * s4 * e**2 * f + 8 * s4 * e**2
        + s4 * f**5 + 6 * s4 * f**4 + 8 * s4 * f**3
        + e**4 * f**2 / 2 - 2 * e**4 + e**2 * f**4 + 2 * e**2 * f**3 - 6 * e**2 * f**2 + f**6 / 2 + 2 * f**5
    )
    return num / (4 * (e * f**3 + 6 * e * f**2 + 12 * e * f + 8 * e))


def fold_septic_coefficients(s1, s2, s3, s4, e, f) -> list:
    """Coefficients, lowest first, of W^7 + s1 W^6 + s2 W^5 + s3 W^4 + s4 W^3 + C1 W^2 + C2."""
    zero = 0 * e
    return [c2_value(s1, s2, s3, s4, e, f), zero, c1_value(s1, s2, s3, s4, e, f), s4, s3, s2, s1, 1 + zero]


def fold_septic_poly(s1, s2, s3, s4, e, f) -> Poly1:
    return Poly1(fold_septic_coefficients(s1, s2, s3, s4, e, f), "W")


def flat_septic_coefficients(s1, s2, s3, s4, e) -> list:
    """The f = 0 specialization, lowest first."""
    w2 = (e**3 - 4 * e**2 * s1 + 8 * e * s2 + 4 * e * s4) / 16
    w0 = -(e**3) / 16 + e * s4 / 4
    zero = 0 * e
    return [w0, zero, w2, s4, s3, s2, s1, 1 + zero]


def flat_septic_poly(s1, s2, s3, s4, e) -> Poly1:
    return Poly1(flat_septic_coefficients(s1, s2, s3, s4, e), "W")


def root7_curve_coefficients(t) -> list:
    """Coefficients in f (lowest first) of the degree-10 curve relating f and t = s^2."""
    return [
        3072 * t**2,
        14336 * t**2,
        29952 * t**2,
        36864 * t**2 - 6144 * t,
        29568 * t**2 + 3584 * t,
        16128 * t**2 + 5376 * t,
        6048 * t**2 - 1008 * t,
        1536 * t**2 - 1264 * t,
        252 * t**2 - 84 * t,
        24 * t**2 + 24 * t,
        t**2 + 2 * t + 1,
    ]


def root7_curve(f, t):
    return sum(c * f**k for k, c in enumerate(root7_curve_coefficients(t)))


def root7_t_of_w(w):
    return 2**10 * w**7 / ((w + 7) ** 7 * (w + 1) ** 2 * (w + 3))


def root7_T_of_w(w):
    return 8 / ((w + 1) ** 2 * (w + 3))


def root7_f_of_w(w):
    """Rational parameterization of f, found by factoring the curve under t = t(w)."""
    return 8 * w / (w**2 + 4 * w + 7)


def septisection_sextic(A: Fraction) -> Poly1:
    A2 = A * A
    return Poly1(
        [-210827008 / A2, 0, (-7529536 * A2**2 + 210827008 * A2 - 843308032) / A2**3, 0, -38416 / A2, 0, 1],
        "e",
    )


def septisection_s1(A, e):
    A2 = A * A
    den = 153664 * A2 * (21952 - 784 * A2 - 252 * A2**2 + A2**3)
    num = (4302592 * (-28 + A2) * (-196 + 14 * A2 + 3 * A2**2) * e
           + 196 * A2**2 * (5488 + 560 * A2 + A2**2) * e**3 - A2**3 * (28 + 3 * A2) * e**5)
    return num / den


def septisection_s3(A, e):
    A2 = A * A
    den = 5488 * (21952 - 784 * A2 - 252 * A2**2 + A2**3)
    num = -3764768 * (-112 + A2**2) * e - 98 * A2 * (784 + 280 * A2 + A2**2) * e**3 + A2**3 * e**5
    return num / den
