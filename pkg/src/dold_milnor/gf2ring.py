"""Truncated polynomial rings over GF(2) with graded generators.

A ring is ``Z_2[x_1, ..., x_r] / (x_1^T_1, ..., x_r^T_r)`` where every
generator carries a positive degree, and every monomial whose total degree
exceeds ``degree_cap`` is discarded.  Elements are sets of monomials; a
monomial is a tuple of exponents aligned with the generator list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Monomial = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class NotAUnitError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    truncation: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r}: degree must be >= 1")
        if self.truncation < 1:
            raise ValueError(f"generator {self.name!r}: truncation must be >= 1")


@dataclass(frozen=True)
class RingPresentation:
    """Generators plus a degree cap.

    ``degree_cap=None`` means the largest degree any surviving monomial can
    reach, so nothing is discarded beyond the truncation relations.
    """

    generators: tuple[GeneratorSpec, ...]
    degree_cap: int | None = None
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _truncations: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        top = sum(g.degree * (g.truncation - 1) for g in gens)
        if self.degree_cap is None:
            object.__setattr__(self, "degree_cap", top)
        elif self.degree_cap < 0:
            raise ValueError("degree_cap must be non-negative")
        object.__setattr__(self, "_degrees", tuple(g.degree for g in gens))
        object.__setattr__(self, "_truncations", tuple(g.truncation for g in gens))

    @classmethod
    def of(cls, *specs: tuple[str, int, int], degree_cap: int | None = None) -> RingPresentation:
        """Shorthand: ``RingPresentation.of(("a", 1, 3), ("b", 1, 5))``."""
        return cls(tuple(GeneratorSpec(*s) for s in specs), degree_cap)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def degree(self, mon: Monomial) -> int:
        return sum(e * d for e, d in zip(mon, self._degrees))

    def is_valid(self, mon: Monomial) -> bool:
        if len(mon) != self.rank:
            return False
        if any(e < 0 or e >= t for e, t in zip(mon, self._truncations)):
            return False
        return self.degree(mon) <= self.degree_cap

    def check_monomial(self, mon: Monomial) -> Monomial:
        mon = tuple(mon)
        if len(mon) != self.rank or any(e < 0 for e in mon):
            raise ValueError(f"{mon} is not an exponent vector for generators {self.names}")
        return mon

    def monomials(self) -> Iterator[Monomial]:
        """All surviving monomials, in canonical (lexicographic) order."""

        def rec(i: int, prefix: Monomial, deg: int):
            if i == self.rank:
                yield prefix
                return
            g = self.generators[i]
            for e in range(g.truncation):
                d = deg + e * g.degree
                if d > self.degree_cap:
                    break
                yield from rec(i + 1, prefix + (e,), d)

        return rec(0, (), 0)

    def zero(self) -> Gf2Poly:
        return Gf2Poly(self, frozenset())

    def one(self) -> Gf2Poly:
        return self.monomial((0,) * self.rank)

    def monomial(self, exponents: Sequence[int]) -> Gf2Poly:
        """The monomial with these exponents, or 0 if it is truncated away."""
        mon = self.check_monomial(exponents)
        return Gf2Poly(self, frozenset([mon]) if self.is_valid(mon) else frozenset())

    def gen(self, name: str) -> Gf2Poly:
        try:
            i = self.names.index(name)
        except ValueError:
            raise KeyError(f"no generator {name!r} in {self.names}") from None
        exps = [0] * self.rank
        exps[i] = 1
        return self.monomial(exps)

    def poly(self, monomials: Iterable[Sequence[int]]) -> Gf2Poly:
        """Sum of the given monomials; repeated monomials cancel in pairs."""
        terms: set[Monomial] = set()
        for m in monomials:
            m = self.check_monomial(m)
            if self.is_valid(m):
                terms ^= {m}
        return Gf2Poly(self, frozenset(terms))

    def format_monomial(self, mon: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, mon):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class Gf2Poly:
    ring: RingPresentation
    terms: frozenset[Monomial]

    def __post_init__(self):
        if not isinstance(self.terms, frozenset):
            object.__setattr__(self, "terms", frozenset(self.terms))

    def _same_ring(self, other: Gf2Poly):
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
        return None

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return mul(self, other)

    def __pow__(self, k: int) -> Gf2Poly:
        return pow_(self, k)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.ring.rank}

    def constant_term(self) -> int:
        return int((0,) * self.ring.rank in self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.ring.format_monomial(m) for m in self.sorted_terms())


def add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    p._same_ring(q)
    return Gf2Poly(p.ring, p.terms ^ q.terms)


def mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    p._same_ring(q)
    ring = p.ring
    if not p.terms or not q.terms:
        return ring.zero()
    if len(p.terms) > len(q.terms):
        p, q = q, p
    truncs = ring._truncations
    degs = ring._degrees
    cap = ring.degree_cap
    qdeg = [(y, ring.degree(y)) for y in q.terms]
    out: set[Monomial] = set()
    for x in p.terms:
        dx = ring.degree(x)
        for y, dy in qdeg:
            if dx + dy > cap:
                continue
            z = tuple(a + b for a, b in zip(x, y))
            if any(e >= t for e, t in zip(z, truncs)):
                continue
            if z in out:
                out.remove(z)
            else:
                out.add(z)
    return Gf2Poly(ring, frozenset(out))


def pow_(p: Gf2Poly, k: int) -> Gf2Poly:
    """``p**k`` by repeated squaring."""
    if k < 0:
        raise ValueError("negative exponent; use inverse_unit")
    result = p.ring.one()
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def inverse_unit(p: Gf2Poly) -> Gf2Poly:
    """Inverse of a polynomial with constant term 1.

    Writes ``p = 1 + q`` with ``q`` nilpotent and sums the geometric series
    ``1 + q + q^2 + ...``; every term of ``q`` has degree >= 1, so the series
    stops by ``q^(degree_cap + 1) = 0``.
    """
    ring = p.ring
    if not p.constant_term():
        raise NotAUnitError(f"{p} has zero constant term")
    q = add(p, ring.one())
    result = ring.one()
    term = ring.one()
    for _ in range(ring.degree_cap):
        term = mul(term, q)
        if not term:
            break
        result = add(result, term)
    return result


def graded_component(p: Gf2Poly, i: int) -> Gf2Poly:
    ring = p.ring
    return Gf2Poly(ring, frozenset(m for m in p.terms if ring.degree(m) == i))


def coefficient(p: Gf2Poly, mon: Sequence[int]) -> int:
    return int(p.ring.check_monomial(mon) in p.terms)


def binom_mod2(r: int, s: int) -> int:
    """C(r, s) mod 2 for r >= 0; zero when s < 0 or s > r.

    Lucas: C(r, s) is odd iff every binary digit of s is at most the
    corresponding digit of r.
    """
    if s < 0 or s > r:
        return 0
    return int(r & s == s)


def tensor_embed(p: Gf2Poly, source: RingPresentation, target: RingPresentation, slot: int) -> Gf2Poly:
    """Re-index ``p`` into ``target`` with its generators at ``target[slot:]``."""
    if p.ring != source:
        raise RingMismatchError("polynomial does not live in the source ring")
    block = target.generators[slot : slot + source.rank]
    if slot < 0 or len(block) != source.rank or any(
        (g.degree, g.truncation) != (h.degree, h.truncation) for g, h in zip(block, source.generators)
    ):
        raise ValueError(f"cannot embed {source.names} into {target.names} at slot {slot}")
    before = (0,) * slot
    after = (0,) * (target.rank - slot - source.rank)
    terms = (before + m + after for m in p.terms)
    return Gf2Poly(target, frozenset(t for t in terms if target.is_valid(t)))
