import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dold_milnor.gf2ring import (
    NotAUnitError,
    RingMismatchError,
    RingPresentation,
    add,
    binom_mod2,
    coefficient,
    graded_component,
    inverse_unit,
    mul,
    pow_,
    tensor_embed,
)

U3 = RingPresentation.of(("u", 1, 3))
U4 = RingPresentation.of(("u", 1, 4))
U8 = RingPresentation.of(("u", 1, 8))
CD = RingPresentation.of(("c", 1, 3), ("d", 2, 3))
AB35 = RingPresentation.of(("a", 1, 3), ("b", 1, 5))
AB22 = RingPresentation.of(("a", 1, 2), ("b", 1, 2), degree_cap=2)


def one_plus(ring, *names):
    p = ring.one()
    for n in names:
        p = p + ring.gen(n)
    return p


# -- add / mul / pow ---------------------------------------------------------

def test_add_examples():
    c, d = CD.gen("c"), CD.gen("d")
    assert add(one_plus(CD, "c"), one_plus(CD, "c")).is_zero()
    assert add(one_plus(CD, "c"), c + d) == one_plus(CD, "d")
    ab = AB35.gen("a") + AB35.gen("b")
    assert ab + AB35.zero() == ab


def test_add_rejects_other_ring():
    with pytest.raises(RingMismatchError):
        U3.one() + U4.one()
    with pytest.raises(RingMismatchError):
        U3.one() * U4.one()


def test_mul_examples():
    u = U3.gen("u")
    assert mul(U3.one() + u, U3.one() + u) == U3.poly([(0,), (2,)])
    sq = pow_(one_plus(U4, "u"), 2)
    assert mul(sq, sq).is_one()
    a, b = AB35.gen("a"), AB35.gen("b")
    assert mul(a + b, AB35.monomial((2, 3))) == AB35.monomial((2, 4))


def test_pow_examples():
    assert pow_(one_plus(U3, "u"), 0).is_one()
    assert pow_(one_plus(U3, "u"), 3) == U3.poly([(0,), (1,), (2,)])
    assert pow_(one_plus(U8, "u"), 8).is_one()


def test_truncation_one_generator_is_zero():
    ring = RingPresentation.of(("a", 1, 1), ("b", 1, 4))
    assert ring.gen("a").is_zero()
    assert list(ring.monomials()) == [(0, 0), (0, 1), (0, 2), (0, 3)]


def test_degree_cap_discards_high_monomials():
    ring = RingPresentation.of(("u", 1, 10), degree_cap=4)
    assert pow_(ring.gen("u"), 4) == ring.monomial((4,))
    assert pow_(ring.gen("u"), 5).is_zero()


# -- inverse_unit --------------------------------------------------------------

def test_inverse_unit_examples():
    assert inverse_unit(U4.one()).is_one()
    assert inverse_unit(one_plus(AB22, "a", "b")) == one_plus(AB22, "a", "b")
    assert inverse_unit(one_plus(U4, "u")) == U4.poly([(0,), (1,), (2,), (3,)])


def test_inverse_unit_rejects_non_unit():
    with pytest.raises(NotAUnitError):
        inverse_unit(U4.gen("u"))


# -- graded components and coefficients ---------------------------------------

def test_graded_component_examples():
    p = one_plus(CD, "c", "d")
    assert graded_component(p, 2) == CD.gen("d")
    assert graded_component(p, 0).is_one()
    assert graded_component(pow_(one_plus(U3, "u"), 3), 2) == U3.monomial((2,))


def test_coefficient_examples():
    p = one_plus(U3, "u")
    assert coefficient(p, (1,)) == 1
    assert coefficient(p, (2,)) == 0
    assert coefficient(pow_(p, 3), (2,)) == 1


# -- binomials mod 2 ----------------------------------------------------------

def pascal_mod2(rows):
    tri = [[1]]
    for r in range(1, rows + 1):
        prev = tri[-1]
        tri.append([1] + [(prev[s - 1] + prev[s]) % 2 for s in range(1, r)] + [1])
    return tri


def test_binom_mod2_examples():
    assert all(binom_mod2(n, 0) == 1 for n in range(100))
    assert binom_mod2(4, 2) == 0
    assert binom_mod2(5, 1) == 1
    assert binom_mod2(3, -1) == 0 and binom_mod2(3, 4) == 0


def test_binom_mod2_matches_pascal_up_to_64():
    tri = pascal_mod2(64)
    for r in range(65):
        for s in range(-2, r + 3):
            expected = tri[r][s] if 0 <= s <= r else 0
            assert binom_mod2(r, s) == expected, (r, s)


# -- tensor_embed ----------------------------------------------------------------

def test_tensor_embed_examples():
    target = RingPresentation.of(("u", 1, 3), ("v", 1, 3))
    assert tensor_embed(U3.one(), U3, target, 0).is_one()
    assert tensor_embed(U3.gen("u"), U3, target, 0) == target.gen("u")
    assert tensor_embed(U3.gen("u"), U3, target, 1) == target.gen("v")


def test_tensor_embed_incompatible():
    target = RingPresentation.of(("u", 1, 4), ("v", 2, 3))
    with pytest.raises(ValueError):
        tensor_embed(U3.gen("u"), U3, target, 0)
    with pytest.raises(ValueError):
        tensor_embed(U3.gen("u"), U3, target, 1)


def test_duplicate_generator_names_rejected():
    with pytest.raises(ValueError):
        RingPresentation.of(("u", 1, 3), ("u", 1, 3))


# -- algebraic laws on random elements ----------------------------------------

SMALL_RINGS = [
    RingPresentation.of(("u", 1, 5)),
    RingPresentation.of(("c", 1, 3), ("d", 2, 3)),
    RingPresentation.of(("a", 1, 3), ("b", 1, 4), degree_cap=4),
    RingPresentation.of(("x", 1, 2), ("y", 1, 3), ("z", 2, 2)),
]


@st.composite
def ring_elements(draw, n=3):
    ring = draw(st.sampled_from(SMALL_RINGS))
    mons = list(ring.monomials())
    elems = [ring.poly(draw(st.lists(st.sampled_from(mons), max_size=len(mons)))) for _ in range(n)]
    return ring, elems


@settings(max_examples=150, deadline=None)
@given(ring_elements())
def test_ring_laws(data):
    ring, (p, q, r) = data
    assert (p + p).is_zero()
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * ring.one() == p


@settings(max_examples=150, deadline=None)
@given(ring_elements(n=1))
def test_graded_components_sum_to_whole(data):
    ring, (p,) = data
    total = ring.zero()
    for i in range(ring.degree_cap + 1):
        total = total + graded_component(p, i)
    assert total == p


@settings(max_examples=150, deadline=None)
@given(ring_elements(n=1))
def test_unit_inverse_round_trip(data):
    ring, (p,) = data
    if not p.constant_term():
        p = p + ring.one()
    assert (p * inverse_unit(p)).is_one()


@pytest.mark.parametrize("k", range(6))
@pytest.mark.parametrize("trunc", [2, 3, 5, 8, 17, 33])
def test_frobenius_on_one_plus_generator(k, trunc):
    ring = RingPresentation.of(("u", 1, trunc))
    u = ring.gen("u")
    assert pow_(ring.one() + u, 2**k) == ring.one() + pow_(u, 2**k)


@pytest.mark.parametrize("trunc", [4, 9, 20])
def test_pow_coefficients_are_lucas_binomials(trunc):
    ring = RingPresentation.of(("u", 1, trunc))
    for r in range(40):
        p = pow_(ring.one() + ring.gen("u"), r)
        for s in range(trunc):
            assert coefficient(p, (s,)) == binom_mod2(r, s), (r, s)
