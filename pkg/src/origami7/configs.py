"""The two worked configurations: Galois groups A7 and PSL(3, 2)."""

from __future__ import annotations

from fractions import Fraction

from .exactmath import Poly1
from .geometry import FoldConfig, Line, Point

# m: x = -2, P = (-4, -1), Q = (1, 2); n: y = -1, R = (0, 1), S = (1, 0)
A7_CONFIG = FoldConfig(Line(1, 0, 2), Point(-4, -1), Point(1, 2), Line(0, 1, 1), Point(0, 1), Point(1, 0))
A7_SEPTIC = Poly1.from_high([1, 1, -8, 3, 1, -3, 2, -1], "y")
A7_DISCRIMINANT = Fraction(2**8 * 31**2 * 157**2)

# m: y = x/2 - 1, P = (-16/5, -12/5), Q = (-3, -3); n: y = -2, R = (0, 0), S = (1, -1)
PSL_CONFIG = FoldConfig(Line(1, -2, -2), Point(Fraction(-16, 5), Fraction(-12, 5)), Point(-3, -3),
                        Line(0, 1, 2), Point(0, 0), Point(1, -1))
PSL_SEPTIC = Poly1.from_high([1, 3, 0, -3, 5, 1, -10, -1], "y")

EXAMPLES = {
    "a7": (A7_CONFIG, A7_SEPTIC, "A7"),
    "psl372": (PSL_CONFIG, PSL_SEPTIC, "PSL3F2"),
}
