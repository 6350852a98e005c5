"""Closed-form bounding criteria, the Milnor/Dold bordism families, and scans.

Every family statement "H(...) is bordant to X" is enumerated up to a
dimension cap and checked by comparing full SW profiles.  The closed-form
bounding criteria are checked against the all-zero-profile test the same way.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from . import bordism
from .bordism import Partition, bordant, bounds, sw_profile
from .manifolds import (
    Dold,
    ManifoldExpr,
    Milnor,
    Product,
    RealProj,
    dimension,
    euler_mod2,
)

FAMILY_TAGS = ("Remark1", "Prop1", "Prop2", "Prop3", "Prop4")


def nu2(x: int) -> float:
    """2-adic valuation; ``nu2(0)`` is ``math.inf``."""
    if x < 0:
        raise ValueError("nu2 is defined for x >= 0")
    if x == 0:
        return math.inf
    return (x & -x).bit_length() - 1


def milnor_bounds_predicate(m: int, n: int) -> bool:
    """Closed-form test for H(m,n) to bound, with 0 <= m <= n."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got ({m}, {n})")
    return (
        m == n
        or m == 1
        or (m * n) % 2 == 1
        or (n % 4 == 2 and m + 1 < 2 ** nu2(n + 2))
    )


def dold_bounds_predicate(m: int, n: int) -> bool:
    """Closed-form test for P(m,n) to bound.

    With ``nu2(0) = inf`` the second clause holds for every m = n+1.
    """
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got ({m}, {n})")
    if n % 2 == 1:
        return True
    return m % 2 == 1 and m > n and 2 ** nu2(m - n - 1) > n


@dataclass(frozen=True)
class FamilyPair:
    milnor: Milnor
    partner: ManifoldExpr
    family_tag: str
    parameters: tuple[tuple[str, int], ...]

    @property
    def dim(self) -> int:
        return dimension(self.milnor)

    def params(self) -> dict[str, int]:
        return dict(self.parameters)

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.parameters)
        return f"{self.family_tag}[{args}]: {self.milnor} ~ {self.partner}"


def _pair(tag: str, milnor: Milnor, partner: ManifoldExpr, **params: int) -> FamilyPair:
    pair = FamilyPair(milnor, partner, tag, tuple(params.items()))
    assert dimension(milnor) == dimension(partner), pair
    return pair


def _remark1(cap: int) -> Iterator[FamilyPair]:
    for n in range(1, cap + 2):
        yield _pair("Remark1", Milnor(0, n), Dold(n - 1, 0), n=n)


def _prop1(cap: int) -> Iterator[FamilyPair]:
    alpha = 1
    while 2 * 2**alpha - 4 <= cap:  # smallest dim at n = 2^a - 1
        p = 2**alpha
        n = p - 1
        while p + n - 3 <= cap:
            yield _pair("Prop1", Milnor(p - 2, n), Dold(n - p + 1, p - 2), alpha=alpha, n=n)
            n += 1
        alpha += 1


def _prop2(cap: int) -> Iterator[FamilyPair]:
    # dim = 2m + 2^a B - 1 with 2^a >= m + 1
    for m in range(0, cap // 2 + 1):
        alpha = max(0, (m).bit_length())
        while 2 * m + 2**alpha - 1 <= cap:
            p = 2**alpha
            B = 1
            while 2 * m + p * B - 1 <= cap:
                yield _pair("Prop2", Milnor(m, m + p * B), Dold(p * B - 1, m), m=m, alpha=alpha, B=B)
                B += 1
            alpha += 1


def _prop3(cap: int) -> Iterator[FamilyPair]:
    # dim = 2^(a+1) B + 2^a - 1
    alpha = 1
    while 2 ** (alpha + 1) + 2**alpha - 1 <= cap:
        p = 2**alpha
        B = 1
        while 2 * p * B + p - 1 <= cap:
            yield _pair("Prop3", Milnor(p, 2 * p * B), Dold(2 * p * B - p - 1, p), alpha=alpha, B=B)
            B += 1
        alpha += 1


def _projective_product(*ns: int) -> ManifoldExpr:
    # RP^0 is a point, the unit for products
    factors = [RealProj(n) for n in ns if n > 0]
    if not factors:
        raise ValueError("all factors are points")
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _prop4(cap: int) -> Iterator[FamilyPair]:
    # dim = m + 2^a - 2 with 2^a > m + 1
    for m in range(0, cap + 1):
        alpha = (m + 1).bit_length()  # least alpha with 2^alpha > m + 1
        while m + 2**alpha - 2 <= cap:
            p = 2**alpha
            if m + p - 2 > 0:
                yield _pair("Prop4", Milnor(m, p - 1), _projective_product(m, p - 2), m=m, alpha=alpha)
            alpha += 1


_ENUMERATORS = {
    "Remark1": _remark1,
    "Prop1": _prop1,
    "Prop2": _prop2,
    "Prop3": _prop3,
    "Prop4": _prop4,
}


def enumerate_family_pairs(tag: str, dim_cap: int) -> list[FamilyPair]:
    """Every instantiation of a family with dimension <= ``dim_cap``, sorted by (dim, m, n)."""
    try:
        gen = _ENUMERATORS[tag]
    except KeyError:
        raise ValueError(f"unknown family tag {tag!r}; choose from {', '.join(FAMILY_TAGS)}") from None
    if dim_cap < 0:
        return []
    pairs = [p for p in gen(dim_cap) if p.dim <= dim_cap]
    return sorted(pairs, key=lambda p: (p.dim, p.milnor.m, p.milnor.n, p.parameters))


@dataclass
class PairVerification:
    pair: FamilyPair
    bordant: bool
    mismatches: list[Partition] = field(default_factory=list)


def verify_pair(pair: FamilyPair) -> PairVerification:
    ok = bordant(pair.milnor, pair.partner)
    miss = [] if ok else bordism.mismatched_partitions(pair.milnor, pair.partner)
    return PairVerification(pair, ok, miss)


def milnor_generators(dim_cap: int) -> list[ManifoldExpr]:
    """The generators RP^{2t} and H(2^k, t 2^(k+1)), t, k >= 1, up to ``dim_cap``."""
    gens: list[ManifoldExpr] = [RealProj(2 * t) for t in range(1, dim_cap // 2 + 1)]
    k = 1
    while 2**k + 2 ** (k + 1) - 1 <= dim_cap:
        t = 1
        while 2**k + t * 2 ** (k + 1) - 1 <= dim_cap:
            gens.append(Milnor(2**k, t * 2 ** (k + 1)))
            t += 1
        k += 1
    return sorted(gens, key=lambda g: (dimension(g), str(g)))


def dold_manifolds(d: int) -> list[Dold]:
    """All P(r,s) with r + 2s = d."""
    return [Dold(d - 2 * s, s) for s in range(d // 2 + 1)]


def milnor_manifolds(dim_cap: int) -> list[Milnor]:
    """All H(m,n), 0 <= m <= n, dimension <= cap, ordered by (dim, m, n)."""
    out = [Milnor(m, n) for n in range(1, dim_cap + 2) for m in range(0, n + 1) if m + n - 1 <= dim_cap]
    return sorted(out, key=lambda h: (dimension(h), h.m, h.n))


@dataclass
class Prop5Case:
    milnor: Milnor
    euler: int
    dolds: list[tuple[Dold, bool, int]]  # (P, bounds, euler_mod2)
    dold_matches: list[Dold]


@dataclass
class Prop5Report:
    dim_cap: int
    cases: list[Prop5Case]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def prop5_check(dim_cap: int) -> Prop5Report:
    """H(m,n) with m odd, n even, m < n, not bounding: Euler-characteristic
    obstruction plus a direct search over equal-dimension Dold manifolds."""
    cases = []
    violations = []
    for H in milnor_manifolds(dim_cap):
        m, n = H.m, H.n
        if not (m % 2 == 1 and n % 2 == 0 and m < n) or bounds(H):
            continue
        chi = euler_mod2(H)
        if chi != 0:
            violations.append(f"{H}: euler_mod2 = {chi}, expected 0")
        if bordism.sw_profile(H)[(dimension(H),)] != chi:
            violations.append(f"{H}: top SW number disagrees with euler_mod2")
        dolds = []
        matches = []
        for P in dold_manifolds(dimension(H)):
            b = bounds(P)
            e = euler_mod2(P)
            dolds.append((P, b, e))
            if not b and e != 1:
                violations.append(f"{H}: non-bounding {P} has euler_mod2 = {e}, expected 1")
            if bordant(H, P):
                matches.append(P)
                violations.append(f"{H} is bordant to {P}")
        cases.append(Prop5Case(H, chi, dolds, matches))
    return Prop5Report(dim_cap, cases, violations)


def family_index(dim_cap: int) -> dict[Milnor, FamilyPair]:
    """First family (in tag order) that covers each Milnor manifold."""
    index: dict[Milnor, FamilyPair] = {}
    for tag in FAMILY_TAGS:
        for pair in enumerate_family_pairs(tag, dim_cap):
            index.setdefault(pair.milnor, pair)
    return index


def in_prop5_class(H: Milnor) -> bool:
    return H.m % 2 == 1 and H.n % 2 == 0 and H.m < H.n


@dataclass
class ScanCandidate:
    milnor: Milnor
    dim: int
    bounds: bool
    covered_by: str | None
    parameters: dict[str, int] | None
    dold_matches: list[Dold]

    @property
    def residual(self) -> bool:
        return not self.bounds and self.covered_by is None

    def to_json(self) -> dict:
        return {
            "manifold": str(self.milnor),
            "dim": self.dim,
            "bounds": self.bounds,
            "covered_by": self.covered_by,
            "parameters": self.parameters,
            "dold_matches": [str(P) for P in self.dold_matches],
        }


@dataclass
class ScanReport:
    dim_cap: int
    candidates: list[ScanCandidate]

    def residual(self) -> list[ScanCandidate]:
        return [c for c in self.candidates if c.residual]

    def counterexamples(self) -> list[ScanCandidate]:
        return [c for c in self.residual() if c.dold_matches]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.candidates]


def _scan_one(H: Milnor) -> tuple[bool, list[Dold]]:
    if bounds(H):
        return True, []
    prof = sw_profile(H)
    return False, [P for P in dold_manifolds(dimension(H)) if sw_profile(P) == prof]


def conjecture_scan(dim_cap: int, jobs: int = 1) -> ScanReport:
    """Classify every H(m,n) up to ``dim_cap`` and search residual ones for Dold partners.

    A candidate is covered when a bordism family or the Euler-characteristic
    obstruction (tag ``Prop5``) accounts for it.  Dold matches are recorded
    for every non-bounding candidate, covered or not.
    """
    milnors = milnor_manifolds(dim_cap)
    if jobs > 1 and len(milnors) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, milnors, chunksize=4))
    else:
        results = [_scan_one(H) for H in milnors]
    index = family_index(dim_cap)
    candidates = []
    for H, (b, matches) in zip(milnors, results):
        pair = index.get(H)
        if pair is not None:
            tag, params = pair.family_tag, pair.params()
        elif in_prop5_class(H) and not b:
            tag, params = "Prop5", {"m": H.m, "n": H.n}
        else:
            tag, params = None, None
        candidates.append(ScanCandidate(H, dimension(H), b, tag, params, matches))
    return ScanReport(dim_cap, candidates)
