"""Invertible root substitutions linking a target septic to the fold variable."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..exactmath import Poly1, Poly2, as_rat, rat_to_str, resultant

STEP_KINDS = ("shift", "scale", "invert", "lambda", "monicize")


@dataclass(frozen=True)
class Step:
    """One substitution; ``forward`` maps a root r of the input polynomial to a root of the output.

    shift(c):   r -> r + c
    scale(k):   r -> r / k        (the substitution W -> k W)
    invert:     r -> 1 / r
    lambda(l):  r -> r + l / r
    monicize(d): roots unchanged, polynomial divided by d
    """

    kind: str
    param: Fraction | None = None

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind in ("scale", "lambda", "monicize") and (self.param is None or self.param == 0):
            raise ValueError(f"{self.kind} step needs a nonzero parameter")

    def apply_poly(self, p: Poly1) -> Poly1:
        k = self.param
        if self.kind == "shift":
            return p.shift(-k).monic()
        if self.kind == "scale":
            return p.scale_arg(k).monic()
        if self.kind == "invert":
            if p.coeff(0) == 0:
                raise ZeroDivisionError("cannot invert a polynomial with a zero root")
            return p.reverse().monic()
        if self.kind == "lambda":
            V = ("w", "y")
            pw = Poly2({(i, 0): c for i, c in enumerate(p.coeffs)}, V)
            w, y = Poly2.x(V), Poly2.y(V)
            rel = w * w - w * y + k
            return resultant(pw, rel, eliminate="w").with_var(p.var).monic()
        return p * (1 / k)

    def forward(self, r):
        k = _num(self.param, r) if self.param is not None else None
        if self.kind == "shift":
            return r + k
        if self.kind == "scale":
            return r / k
        if self.kind == "invert":
            return 1 / r
        if self.kind == "lambda":
            return r + k / r
        return r

    def backward(self, z) -> list:
        """Candidate preimages of ``z`` (two for the lambda step)."""
        k = _num(self.param, z) if self.param is not None else None
        if self.kind == "shift":
            return [z - k]
        if self.kind == "scale":
            return [z * k]
        if self.kind == "invert":
            return [1 / z]
        if self.kind == "lambda":
            disc = z * z - 4 * k
            root = mpmath.sqrt(disc) if isinstance(z, (mpmath.mpf, mpmath.mpc)) else disc**0.5
            return [(z + root) / 2, (z - root) / 2]
        return [z]

    def to_json(self) -> dict:
        out: dict = {"step": self.kind}
        if self.param is not None:
            out["param"] = rat_to_str(self.param)
            out["approx"] = mpmath.nstr(mpmath.mpf(self.param.numerator) / self.param.denominator, 20)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Step":
        p = data.get("param")
        return cls(data["step"], Fraction(p) if p is not None else None)


def _num(k: Fraction, like):
    if isinstance(like, (mpmath.mpf, mpmath.mpc)):
        return mpmath.mpf(k.numerator) / k.denominator
    if isinstance(like, (float, complex)):
        return float(k)
    return k


@dataclass(frozen=True)
class TransformChain:
    steps: tuple[Step, ...] = field(default=())

    def __add__(self, other: "TransformChain") -> "TransformChain":
        return TransformChain(self.steps + other.steps)

    def __len__(self):
        return len(self.steps)

    @classmethod
    def of(cls, *steps: Step) -> "TransformChain":
        return cls(tuple(steps))

    def is_identity(self) -> bool:
        return not self.steps

    def polys(self, p: Poly1) -> list[Poly1]:
        """The polynomial before and after every step."""
        out = [p.monic()]
        for s in self.steps:
            out.append(s.apply_poly(out[-1]))
        return out

    def apply_poly(self, p: Poly1) -> Poly1:
        return self.polys(p)[-1]

    def forward(self, r):
        for s in self.steps:
            r = s.forward(r)
        return r

    def backward(self, z, target: Poly1 | None = None):
        """Map a root of the final polynomial back to a root of the target.

        Where a step has two preimages (the lambda step) the one closer to a
        root of the intermediate polynomial is kept, which needs ``target``.
        """
        inter = self.polys(target) if target is not None else None
        for i in range(len(self.steps) - 1, -1, -1):
            cands = self.steps[i].backward(z)
            if len(cands) == 1 or inter is None:
                z = cands[0]
            else:
                z = min(cands, key=lambda c: abs(inter[i].eval(c)))
        return z

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, data: list) -> "TransformChain":
        return cls(tuple(Step.from_json(d) for d in data))
