"""Construction plans and their end-to-end verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..exactmath import AlgebraicReal, Poly1, _to_mpf, as_rat, isolate_real_roots, rat_to_str
from ..geometry import FoldConfig
from ..intersect import fold_solution_from_point, intersect_config
from .chain import TransformChain

DPS = 60


@dataclass(frozen=True)
class Quantity:
    """A named number with a note on how it was obtained.

    ``exact`` is False when ``value`` is a rational stand-in for an
    irrational number (accurate to the working precision).
    """

    name: str
    value: object
    how: str
    poly: Poly1 | None = None
    exact: bool = False

    def to_mpf(self):
        return _to_mpf(self.value) if isinstance(self.value, Fraction) else mpmath.mpf(self.value)

    def to_json(self) -> dict:
        out = {"name": self.name, "value": mpmath.nstr(self.to_mpf(), 30), "how": self.how, "exact": self.exact}
        if self.exact and isinstance(self.value, Fraction):
            out["rational"] = rat_to_str(self.value)
        if self.poly is not None:
            out["poly"] = self.poly.to_json()
            out["poly_var"] = self.poly.var
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Quantity":
        if "rational" in data:
            value = Fraction(data["rational"])
        else:
            with mpmath.workdps(DPS):
                value = mpmath.mpf(data["value"])
        poly = Poly1.from_json(data["poly"], data.get("poly_var", "x")) if "poly" in data else None
        return cls(data["name"], value, data["how"], poly, data.get("exact", False))


@dataclass
class ConstructionPlan:
    """Everything needed to realize the real roots of ``target`` by one AL6ab8 fold.

    The intersection points G of the two cubics of ``fold_config`` give W = G.x / G.y
    (the second cubic's node S sits at the origin); ``chain.backward`` turns W
    into a root of ``target``.  Plans without a fold config (degenerate
    fallbacks) carry their roots in ``direct_roots``.
    """

    kind: str
    target: Poly1
    chain: TransformChain
    quantities: dict[str, Quantity]
    fold_config: FoldConfig | None
    expected_roots: list
    tol: float = 1e-8
    notes: list[str] = field(default_factory=list)
    seed: int | None = None
    direct_roots: list = field(default_factory=list)

    def q(self, name: str):
        return self.quantities[name].value

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target.to_json(),
            "target_var": self.target.var,
            "chain": self.chain.to_json(),
            "quantities": [q.to_json() for q in self.quantities.values()],
            "fold_config": self.fold_config.to_json() if self.fold_config else None,
            "expected_roots": [_root_json(r) for r in self.expected_roots],
            "direct_roots": [mpmath.nstr(r, 30) for r in self.direct_roots],
            "tol": self.tol,
            "notes": list(self.notes),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionPlan":
        target = Poly1.from_json(data["target"], data.get("target_var", "x"))
        quantities = {d["name"]: Quantity.from_json(d) for d in data.get("quantities", [])}
        cfg = FoldConfig.from_json(data["fold_config"]) if data.get("fold_config") else None
        with mpmath.workdps(DPS):
            expected = [_root_from_json(r) for r in data.get("expected_roots", [])]
            direct = [mpmath.mpf(r) for r in data.get("direct_roots", [])]
        return cls(data["kind"], target, TransformChain.from_json(data["chain"]), quantities, cfg,
                   expected, data.get("tol", 1e-8), list(data.get("notes", [])), data.get("seed"), direct)


def _root_json(r):
    if isinstance(r, AlgebraicReal):
        return r.to_json()
    return mpmath.nstr(r, 30)


def _root_from_json(d):
    if isinstance(d, dict):
        return AlgebraicReal.from_json(d)
    return mpmath.mpf(d)


def expected_real_roots(target: Poly1) -> list[AlgebraicReal]:
    return isolate_real_roots(target)


@dataclass
class RealizedRoot:
    W: object  # fold variable at the intersection point
    root: object  # W mapped back to the target
    poly_residual: float  # |target(root)|
    error: float  # distance to the nearest expected root
    matched: int | None
    al6ab8: float | None

    def to_json(self) -> dict:
        return {
            "W": mpmath.nstr(self.W, 25) if self.W is not None else None,
            "root": mpmath.nstr(self.root, 25),
            "poly_residual": self.poly_residual,
            "error": self.error,
            "matched": self.matched,
            "al6ab8_residual": self.al6ab8,
        }


@dataclass
class PlanReport:
    realized: list[RealizedRoot]
    unrealized: list[int]
    tol: float
    notes: list[str] = field(default_factory=list)

    @property
    def max_error(self) -> float:
        return max((r.error for r in self.realized), default=float("inf"))

    @property
    def min_error(self) -> float:
        return min((r.error for r in self.realized), default=float("inf"))

    @property
    def max_residual(self) -> float:
        return max((r.poly_residual for r in self.realized), default=float("inf"))

    @property
    def ok(self) -> bool:
        return bool(self.realized) and not self.unrealized and self.max_error <= self.tol

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "tol": self.tol,
            "max_error": self.max_error,
            "min_error": self.min_error,
            "max_poly_residual": self.max_residual,
            "realized": [r.to_json() for r in self.realized],
            "unrealized": self.unrealized,
            "notes": list(self.notes),
        }


def verify_plan(plan: ConstructionPlan, tol: float | None = None, precision: float = 1e-40) -> PlanReport:
    """Intersect the plan's cubics, map every W back and compare with the target's real roots."""
    tol = plan.tol if tol is None else tol
    notes: list[str] = []
    with mpmath.workdps(DPS):
        expected = [r.to_mpf(DPS) if isinstance(r, AlgebraicReal) else mpmath.mpf(r) for r in plan.expected_roots]
        found: list[tuple] = []  # (W, root, G)
        if plan.fold_config is None:
            notes.append("no fold step: roots come from a direct formula")
            found = [(None, mpmath.mpf(r), None) for r in plan.direct_roots]
        else:
            cfg = plan.fold_config
            inter = intersect_config(cfg, precision=precision)
            notes.extend(inter.notes)
            for ip in inter.points:
                gx, gy = (_to_mpf(v) for v in ip.point - cfg.S)
                if gy == 0:
                    notes.append("intersection on the horizontal through S skipped")
                    continue
                W = gx / gy
                root = plan.chain.backward(W, plan.target)
                if isinstance(root, mpmath.mpc):
                    if abs(root.imag) > mpmath.mpf(10) ** (-DPS // 2) * (1 + abs(root)):
                        notes.append("intersection maps to a non-real root (lambda step)")
                        continue
                    root = root.real
                found.append((W, root, ip.point))
        realized = []
        matched = set()
        for W, root, G in found:
            res = float(abs(plan.target.eval(root)))
            if expected:
                j = min(range(len(expected)), key=lambda i: abs(expected[i] - root))
                err = float(abs(expected[j] - root))
            else:
                j, err = None, float("inf")
            if j is not None and err <= tol:
                matched.add(j)
            else:
                j = None
            al = None
            if G is not None:
                al = fold_solution_from_point(plan.fold_config, G).residual
            realized.append(RealizedRoot(W, root, res, err, j, al))
        unrealized = [i for i in range(len(expected)) if i not in matched]
    if not realized:
        notes.append("no real intersection: zero realized roots")
    return PlanReport(realized, unrealized, tol, notes)


def q_exact(name: str, value, how: str, poly: Poly1 | None = None) -> Quantity:
    return Quantity(name, as_rat(value), how, poly, exact=True)


def q_approx(name: str, value, how: str, poly: Poly1 | None = None) -> Quantity:
    return Quantity(name, value, how, poly, exact=False)
