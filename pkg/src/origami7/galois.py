"""Heuristic Galois-group diagnostics for septics.

Frobenius cycle types are read off from factorization degrees modulo good
primes and compared with the cycle types of the transitive subgroups that
matter here.  The reference tables are computed by enumerating the groups
as permutations of seven points.  Nothing here is a proof.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BadPrimeError
from .exactmath import Poly1, discriminant, distinct_degree_profile, is_perfect_square, primes_up_to

S7, A7, PSL3F2, SOLVABLE, INCONCLUSIVE = "S7", "A7", "PSL3F2", "solvable-or-smaller", "inconclusive"
DEFAULT_PRIME_BOUND = 10_000
MIN_PRIME_BOUND = 100

FANO_LINES = tuple(frozenset(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7))


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def _is_even(ct: tuple[int, ...]) -> bool:
    return sum(c - 1 for c in ct) % 2 == 0


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def fano_automorphisms() -> tuple[tuple[int, ...], ...]:
    lines = set(FANO_LINES)
    out = []
    for perm in itertools.permutations(range(7)):
        if all(frozenset(perm[p] for p in L) in lines for L in FANO_LINES):
            out.append(perm)
    return tuple(out)


def affine_group_7() -> list[tuple[int, ...]]:
    """x -> a x + b on Z/7, the order-42 normalizer of a 7-cycle."""
    return [tuple((a * x + b) % 7 for x in range(7)) for a in range(1, 7) for b in range(7)]


@lru_cache(maxsize=None)
def cycle_type_tables() -> dict[str, frozenset]:
    s7 = frozenset(partitions(7))
    return {
        S7: s7,
        A7: frozenset(ct for ct in s7 if _is_even(ct)),
        PSL3F2: frozenset(cycle_type(g) for g in fano_automorphisms()),
        "AGL(1,7)": frozenset(cycle_type(g) for g in affine_group_7()),
    }


@dataclass
class CycleTypeCensus:
    polynomial: Poly1
    prime_bound: int
    counts: dict[tuple[int, ...], int]
    skipped_primes: list[int]
    discriminant: object = None

    @property
    def observed(self) -> frozenset:
        return frozenset(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "prime_bound": self.prime_bound,
            "counts": {" ".join(map(str, k)): v for k, v in sorted(self.counts.items(), reverse=True)},
            "skipped_primes": self.skipped_primes,
            "discriminant": str(self.discriminant),
        }

    def table(self) -> str:
        lines = [f"{'cycle type':<16}{'count':>8}{'share':>9}"]
        for ct, n in sorted(self.counts.items(), reverse=True):
            lines.append(f"{' '.join(map(str, ct)):<16}{n:>8}{n / self.total:>9.3f}")
        return "\n".join(lines)


def census(p: Poly1, prime_bound: int = DEFAULT_PRIME_BOUND) -> CycleTypeCensus:
    """Factorization patterns of p modulo every good prime up to ``prime_bound``."""
    if prime_bound < 50:
        raise ValueError("prime_bound must be at least 50")
    q = p.primitive()
    if not q.is_squarefree():
        raise ValueError("polynomial is not squarefree")
    disc = discriminant(q)
    counts: Counter = Counter()
    skipped = []
    for prime in primes_up_to(prime_bound):
        try:
            counts[distinct_degree_profile(q, prime, disc)] += 1
        except BadPrimeError:
            skipped.append(prime)
    return CycleTypeCensus(q, prime_bound, dict(counts), skipped, disc)


@dataclass
class GroupVerdict:
    candidate: str
    disc_square: bool
    census: CycleTypeCensus
    reasons: list[str] = field(default_factory=list)
    heuristic: bool = True

    def to_json(self) -> dict:
        return {
            "candidate": self.candidate,
            "heuristic": self.heuristic,
            "disc_square": self.disc_square,
            "prime_bound": self.census.prime_bound,
            "reasons": self.reasons,
            "census": self.census.to_json(),
        }


def classify(p: Poly1, prime_bound: int = DEFAULT_PRIME_BOUND) -> GroupVerdict:
    """Most plausible Galois group given the discriminant and the census (heuristic)."""
    cen = census(p, max(prime_bound, 50))
    tables = cycle_type_tables()
    square = is_perfect_square(cen.discriminant)
    seen = cen.observed
    reasons = [f"discriminant {'is' if square else 'is not'} a square"]
    if prime_bound < MIN_PRIME_BOUND:
        reasons.append(f"prime bound {prime_bound} below {MIN_PRIME_BOUND}")
        return GroupVerdict(INCONCLUSIVE, square, cen, reasons)
    if (7,) not in seen:
        reasons.append("no 7-cycle observed; transitivity not supported")
        return GroupVerdict(INCONCLUSIVE, square, cen, reasons)
    if seen <= tables["AGL(1,7)"]:
        reasons.append("all cycle types fit the order-42 affine group")
        return GroupVerdict(SOLVABLE, square, cen, reasons)
    outside_a7 = seen - tables[A7]
    if square and not outside_a7:
        if seen <= tables[PSL3F2]:
            reasons.append("all cycle types occur in the Fano-plane automorphism group")
            return GroupVerdict(PSL3F2, square, cen, reasons)
        extra = sorted(seen - tables[PSL3F2], reverse=True)
        reasons.append(f"types outside PSL3F2: {extra}")
        return GroupVerdict(A7, square, cen, reasons)
    if outside_a7:
        reasons.append(f"odd cycle types observed: {sorted(outside_a7, reverse=True)}")
        if square:
            reasons.append("odd types contradict the square discriminant")
            return GroupVerdict(INCONCLUSIVE, square, cen, reasons)
    return GroupVerdict(S7, square, cen, reasons)
