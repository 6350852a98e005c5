"""Closed manifolds from four families and their mod-2 cohomology models.

``RealProj(n)`` and ``CplxProj(n)`` are projective spaces, ``Dold(m, n)`` is
P(m,n) of dimension m+2n, and ``Milnor(m, n)`` is the degree-(1,1)
hypersurface H(m,n) in RP^m x RP^n of dimension m+n-1.  Products of the
first three families are supported too.

Milnor manifolds are never given an intrinsic cohomology ring.  Their
classes live in the ring of the ambient RP^m x RP^n, and evaluation on the
fundamental class first multiplies by the dual class a+b.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .gf2ring import (
    GeneratorSpec,
    Gf2Poly,
    Monomial,
    RingMismatchError,
    RingPresentation,
    coefficient,
    graded_component,
    inverse_unit,
    mul,
    pow_,
    tensor_embed,
)


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class RealProj:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DescriptorError(f"RP({self.n}): need n >= 1")

    def __str__(self):
        return f"RP({self.n})"


@dataclass(frozen=True)
class CplxProj:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DescriptorError(f"CP({self.n}): need n >= 1")

    def __str__(self):
        return f"CP({self.n})"


@dataclass(frozen=True)
class Dold:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DescriptorError(f"P({self.m},{self.n}): need m, n >= 0")

    def __str__(self):
        return f"P({self.m},{self.n})"


@dataclass(frozen=True)
class Milnor:
    """H(m,n); stored with m <= n since H(m,n) and H(n,m) are diffeomorphic."""

    m: int
    n: int

    def __post_init__(self):
        m, n = sorted((self.m, self.n))
        if m < 0:
            raise DescriptorError(f"H({self.m},{self.n}): need m, n >= 0")
        if n == 0:
            raise DescriptorError("H(0,0) is empty (dimension -1)")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    def __str__(self):
        return f"H({self.m},{self.n})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if len(factors) < 2:
            raise DescriptorError("a product needs at least two factors")
        for f in factors:
            if isinstance(f, Milnor):
                raise DescriptorError(f"Milnor factor {f} is not supported inside a product")
            if not isinstance(f, (RealProj, CplxProj, Dold)):
                raise DescriptorError(f"unsupported product factor {f!r}")

    def __str__(self):
        return " X ".join(str(f) for f in self.factors)


ManifoldExpr = Union[RealProj, CplxProj, Dold, Milnor, Product]


# -- descriptor text ---------------------------------------------------------

_ARITY = {"RP": 1, "CP": 1, "P": 2, "H": 2}


def parse(text: str) -> ManifoldExpr:
    """Parse ``RP(n)``, ``CP(n)``, ``P(m,n)``, ``H(m,n)`` and ``X``-products."""
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("<end>", len(text))

    def expect(kind: str) -> str:
        nonlocal i
        tok, at = peek()
        ok = tok.isdigit() if kind == "int" else tok == kind
        if not ok:
            want = "an integer" if kind == "int" else repr(kind)
            raise DescriptorError(f"expected {want} but found {tok!r} at position {at} in {text!r}")
        i += 1
        return tok

    factors = []
    while True:
        tok, at = peek()
        if tok not in _ARITY:
            raise DescriptorError(f"expected RP, CP, P or H but found {tok!r} at position {at} in {text!r}")
        i += 1
        expect("(")
        args = [int(expect("int"))]
        for _ in range(_ARITY[tok] - 1):
            expect(",")
            args.append(int(expect("int")))
        expect(")")
        factors.append({"RP": RealProj, "CP": CplxProj, "P": Dold, "H": Milnor}[tok](*args))
        tok, at = peek()
        if tok == "<end>":
            break
        expect("X")
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif text.startswith(("RP", "CP"), pos):
            out.append((text[pos : pos + 2], pos))
            pos += 2
        elif ch in "PHX(),":
            out.append((ch, pos))
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            out.append((text[start:pos], start))
        else:
            raise DescriptorError(f"unexpected character {ch!r} at position {pos} in {text!r}")
    return out


# -- dimensions and cohomology ----------------------------------------------

def dimension(M: ManifoldExpr) -> int:
    if isinstance(M, RealProj):
        return M.n
    if isinstance(M, CplxProj):
        return 2 * M.n
    if isinstance(M, Dold):
        return M.m + 2 * M.n
    if isinstance(M, Milnor):
        return M.m + M.n - 1
    if isinstance(M, Product):
        return sum(dimension(f) for f in M.factors)
    raise DescriptorError(f"not a manifold descriptor: {M!r}")


@dataclass(frozen=True)
class TopMonomial:
    """Evaluate on [M] by reading the coefficient of the top monomial."""

    monomial: Monomial


@dataclass(frozen=True)
class MilnorAmbient:
    """Evaluate on [H(m,n)] as the coefficient of a^m b^n in (a+b)*x."""

    m: int
    n: int


@dataclass(frozen=True)
class CohomologyModel:
    ring: RingPresentation
    pairing_rule: TopMonomial | MilnorAmbient


def _factor_gens(M: ManifoldExpr, suffix: str = "") -> list[GeneratorSpec]:
    if isinstance(M, RealProj):
        return [GeneratorSpec("u" + suffix, 1, M.n + 1)]
    if isinstance(M, CplxProj):
        return [GeneratorSpec("v" + suffix, 2, M.n + 1)]
    if isinstance(M, Dold):
        return [GeneratorSpec("c" + suffix, 1, M.m + 1), GeneratorSpec("d" + suffix, 2, M.n + 1)]
    raise DescriptorError(f"no intrinsic ring for {M}")


def _top(M: ManifoldExpr) -> Monomial:
    if isinstance(M, (RealProj, CplxProj)):
        return (M.n,)
    if isinstance(M, Dold):
        return (M.m, M.n)
    if isinstance(M, Product):
        return sum((_top(f) for f in M.factors), ())
    raise DescriptorError(f"no top monomial for {M}")


@lru_cache(maxsize=None)
def cohomology_model(M: ManifoldExpr) -> CohomologyModel:
    if isinstance(M, Milnor):
        ring = RingPresentation(
            (GeneratorSpec("a", 1, M.m + 1), GeneratorSpec("b", 1, M.n + 1)), M.m + M.n
        )
        return CohomologyModel(ring, MilnorAmbient(M.m, M.n))
    if isinstance(M, Product):
        gens = []
        for k, f in enumerate(M.factors, 1):
            gens.extend(_factor_gens(f, str(k)))
        ring = RingPresentation(tuple(gens), dimension(M))
    else:
        ring = RingPresentation(tuple(_factor_gens(M)), dimension(M))
    return CohomologyModel(ring, TopMonomial(_top(M)))


def _one_plus(ring: RingPresentation, *names: str) -> Gf2Poly:
    p = ring.one()
    for name in names:
        p = p + ring.gen(name)
    return p


@lru_cache(maxsize=None)
def total_sw_class(M: ManifoldExpr) -> Gf2Poly:
    ring = cohomology_model(M).ring
    if isinstance(M, RealProj):
        return pow_(_one_plus(ring, "u"), M.n + 1)
    if isinstance(M, CplxProj):
        return pow_(_one_plus(ring, "v"), M.n + 1)
    if isinstance(M, Dold):
        return mul(pow_(_one_plus(ring, "c"), M.m), pow_(_one_plus(ring, "c", "d"), M.n + 1))
    if isinstance(M, Milnor):
        num = mul(pow_(_one_plus(ring, "a"), M.m + 1), pow_(_one_plus(ring, "b"), M.n + 1))
        return mul(num, inverse_unit(_one_plus(ring, "a", "b")))
    if isinstance(M, Product):
        result = ring.one()
        slot = 0
        for f in M.factors:
            w = total_sw_class(f)
            result = mul(result, tensor_embed(w, w.ring, ring, slot))
            slot += w.ring.rank
        return result
    raise DescriptorError(f"not a manifold descriptor: {M!r}")


def sw_graded(M: ManifoldExpr, i: int) -> Gf2Poly:
    """The degree-i Stiefel-Whitney class w_i(M)."""
    return graded_component(total_sw_class(M), i)


def evaluate_pairing(M: ManifoldExpr, x: Gf2Poly) -> int:
    model = cohomology_model(M)
    if x.ring != model.ring:
        raise RingMismatchError(f"class does not live in the cohomology ring of {M}")
    rule = model.pairing_rule
    if isinstance(rule, TopMonomial):
        return coefficient(x, rule.monomial)
    # (a+b) * x hits a^m b^n exactly from a^m b^(n-1) and a^(m-1) b^n
    m, n = rule.m, rule.n
    bit = 0
    if n >= 1 and (m, n - 1) in x.terms:
        bit ^= 1
    if m >= 1 and (m - 1, n) in x.terms:
        bit ^= 1
    return bit


def euler_mod2(M: ManifoldExpr) -> int:
    """Euler characteristic mod 2, from the fibrations RP^{n-1} -> H(m,n) -> RP^m
    and CP^n -> P(m,n) -> RP^m."""
    if isinstance(M, RealProj):
        return (M.n + 1) % 2
    if isinstance(M, CplxProj):
        return (M.n + 1) % 2
    if isinstance(M, Dold):
        return ((M.m + 1) % 2) * ((M.n + 1) % 2)
    if isinstance(M, Milnor):
        return ((M.m + 1) % 2) * (M.n % 2)
    if isinstance(M, Product):
        bit = 1
        for f in M.factors:
            bit &= euler_mod2(f)
        return bit
    raise DescriptorError(f"not a manifold descriptor: {M!r}")
