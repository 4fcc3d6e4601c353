"""Exact ring arithmetic, units, enumeration and hom validation."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from meadows import rings
from meadows.errors import DescriptorMismatch, InfiniteCarrier, NotAUnit, TableIncomplete

Z2 = rings.Mod(2)
Z3 = rings.Mod(3)
Z5 = rings.Mod(5)
Z6 = rings.Mod(6)
QX = rings.Poly(rings.Q, "x")

FINITE_DESCRIPTORS = [
    rings.ZERO,
    Z2,
    Z3,
    Z6,
    rings.Mod(8),
    rings.Product((Z2, Z2)),
    rings.Product((Z2, Z3)),
]


def v(desc, raw):
    return rings.ring_value(desc, raw)


# -- basic arithmetic ---------------------------------------------------------


def test_rational_addition_exact():
    got = rings.add(v(rings.Q, "1/2"), v(rings.Q, "1/3"))
    assert got == v(rings.Q, "5/6")


def test_mod6_multiplication_wraps():
    assert rings.mul(v(Z6, 4), v(Z6, 3)) == v(Z6, 0)


def test_zero_ring_operations_return_token():
    tok = v(rings.ZERO, None)
    assert rings.add(tok, tok) == tok
    assert rings.mul(tok, tok) == tok
    assert rings.ring_arith(rings.ZERO, "add", tok, tok) == tok


def test_descriptor_mismatch_is_refused():
    with pytest.raises(DescriptorMismatch):
        rings.add(v(Z2, 1), v(Z3, 1))


def test_descriptor_invariants():
    with pytest.raises(ValueError):
        rings.Mod(1)
    with pytest.raises(ValueError):
        rings.Poly(rings.Mod(4))  # 4 is not prime
    with pytest.raises(ValueError):
        rings.Product(())
    with pytest.raises(ValueError):
        rings.Product((rings.ZERO,))


@given(st.fractions(), st.fractions())
def test_rational_ops_agree_with_fraction_oracle(x, y):
    a, b = v(rings.Q, x), v(rings.Q, y)
    assert rings.add(a, b).payload == x + y
    assert rings.mul(a, b).payload == x * y
    assert rings.neg(a).payload == -x


@given(st.integers(), st.integers(min_value=1))
def test_rationals_canonical_lowest_terms(num, den):
    f = v(rings.Q, Fraction(num, den)).payload
    import math

    assert f.denominator > 0
    assert math.gcd(f.numerator, f.denominator) == 1


def test_polynomial_canonical_trailing_zeros_stripped():
    p = v(QX, [Fraction(1), Fraction(0), Fraction(0)])
    assert p.payload == (Fraction(1),)
    assert v(QX, []).payload == ()


# -- units and inverses --------------------------------------------------------


def brute_force_units(desc):
    elems = rings.enumerate_ring(desc)
    one = rings.one_value(desc)
    return {x for x in elems if any(rings.mul(x, w) == one for w in elems)}


def test_integer_5_is_not_a_unit():
    assert not rings.is_unit(v(rings.Z, 5))
    assert rings.is_unit(v(rings.Z, -1))


def test_mod6_units_match_brute_force():
    expected = brute_force_units(Z6)
    for x in rings.enumerate_ring(Z6):
        assert rings.is_unit(x) == (x in expected)
    assert rings.is_unit(v(Z6, 5))


def test_zero_ring_token_is_a_unit():
    assert rings.is_unit(v(rings.ZERO, None))


def test_rational_inverse():
    assert rings.unit_inverse(v(rings.Q, 2)) == v(rings.Q, "1/2")


def test_mod5_inverse_matches_exhaustive_search():
    x = v(Z5, 3)
    expected = next(w for w in rings.enumerate_ring(Z5) if rings.mul(x, w) == rings.one_value(Z5))
    assert rings.unit_inverse(x) == expected == v(Z5, 2)


def test_integer_self_inverses():
    assert rings.unit_inverse(v(rings.Z, -1)) == v(rings.Z, -1)
    with pytest.raises(NotAUnit):
        rings.unit_inverse(v(rings.Z, 5))


@pytest.mark.parametrize("desc", FINITE_DESCRIPTORS)
def test_every_unit_inverts_exhaustively(desc):
    one = rings.one_value(desc)
    for x in rings.enumerate_ring(desc):
        if rings.is_unit(x):
            assert rings.mul(x, rings.unit_inverse(x)) == one
        else:
            with pytest.raises(NotAUnit):
                rings.unit_inverse(x)


def test_poly_units_are_nonzero_constants():
    assert rings.is_unit(v(QX, [Fraction(3)]))
    assert not rings.is_unit(v(QX, [Fraction(0), Fraction(1)]))
    assert not rings.is_unit(v(QX, []))


# -- ring axioms on finite descriptors -----------------------------------------


@pytest.mark.parametrize("desc", FINITE_DESCRIPTORS)
def test_ring_axioms_exhaustive(desc):
    elems = rings.enumerate_ring(desc)
    zero, one = rings.zero_value(desc), rings.one_value(desc)
    for x in elems:
        assert rings.add(x, zero) == x
        assert rings.mul(x, one) == x
        assert rings.add(x, rings.neg(x)) == zero
    for x, y in itertools.product(elems, repeat=2):
        assert rings.add(x, y) == rings.add(y, x)
        assert rings.mul(x, y) == rings.mul(y, x)
    for x, y, z in itertools.product(elems, repeat=3):
        assert rings.add(rings.add(x, y), z) == rings.add(x, rings.add(y, z))
        assert rings.mul(rings.mul(x, y), z) == rings.mul(x, rings.mul(y, z))
        assert rings.mul(x, rings.add(y, z)) == rings.add(rings.mul(x, y), rings.mul(x, z))


# -- enumeration ---------------------------------------------------------------


def test_enumerate_zero_ring():
    assert rings.enumerate_ring(rings.ZERO) == [v(rings.ZERO, None)]


def test_enumerate_mod3():
    assert [x.payload for x in rings.enumerate_ring(Z3)] == [0, 1, 2]


def test_enumerate_product_order():
    got = [tuple(c.payload for c in x.payload) for x in rings.enumerate_ring(rings.Product((Z2, Z2)))]
    assert got == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_enumerate_infinite_raises():
    with pytest.raises(InfiniteCarrier):
        rings.enumerate_ring(rings.Z)
    with pytest.raises(InfiniteCarrier):
        rings.enumerate_ring(QX)


# -- homomorphisms ---------------------------------------------------------------


def test_reduce_mod_canonical():
    h = rings.reduce_mod(6)
    assert rings.hom_apply(h, v(rings.Z, 14)) == v(Z6, 2)


def test_unit_map_into_mod5():
    h = rings.unit_map(Z5)
    assert rings.hom_apply(h, v(rings.Z, 7)) == v(Z5, 2)


def test_poly_eval_matches_substitution_oracle():
    h = rings.poly_eval_at(QX, Fraction(0))
    p = v(QX, [Fraction(3), Fraction(2)])  # 3 + 2x
    # oracle: substitute and simplify with plain Fraction arithmetic
    point = Fraction(0)
    expected = sum(c * point**k for k, c in enumerate(p.payload))
    assert rings.hom_apply(h, p) == v(rings.Q, expected) == v(rings.Q, 3)
    h7 = rings.poly_eval_at(QX, Fraction(7, 2))
    q = v(QX, [Fraction(1), Fraction(-1), Fraction(2)])
    oracle = sum(c * Fraction(7, 2) ** k for k, c in enumerate(q.payload))
    assert rings.hom_apply(h7, q) == v(rings.Q, oracle)


def test_identity_hom_validates_exhaustively():
    report = rings.hom_validate(rings.identity_hom(Z6))
    assert report.ok
    assert report.mode == "exhaustive"
    additive = next(c for c in report.checks if c.name == "additive")
    assert additive.checked == 36


def test_swap_table_is_not_a_hom():
    h = rings.table_hom(Z2, Z2, [(0, 1), (1, 0)])
    report = rings.hom_validate(h)
    assert not report.ok
    names = [c.name for c in report.failures()]
    assert "preserves_zero" in names


def test_composite_reduction_agrees_with_direct():
    composite = rings.compose_homs(rings.reduce_mod(6), rings.mod_to_mod(6, 3))
    direct = rings.reduce_mod(3)
    import random

    rng = random.Random(7)
    for _ in range(256):
        x = rings.random_value(rings.Z, rng)
        assert rings.hom_apply(composite, x) == rings.hom_apply(direct, x)


def test_compose_applies_left_to_right():
    h = rings.compose_homs(rings.include_rationals(), rings.identity_hom(rings.Q))
    assert rings.hom_apply(h, v(rings.Z, 3)) == v(rings.Q, 3)


def test_table_incomplete():
    h = rings.table_hom(Z3, Z3, [(0, 0), (1, 1)])
    with pytest.raises(TableIncomplete):
        rings.hom_apply(h, v(Z3, 2))


def test_pair_and_project_round_trip():
    prod = rings.Product((Z2, Z3))
    paired = rings.pair_hom((rings.reduce_mod(2), rings.reduce_mod(3)))
    assert paired.target == prod
    img = rings.hom_apply(paired, v(rings.Z, 5))
    assert rings.hom_apply(rings.project(prod, 0), img) == v(Z2, 1)
    assert rings.hom_apply(rings.project(prod, 1), img) == v(Z3, 2)


def test_constant_embed_and_eval_cancel():
    emb = rings.constant_embed(QX)
    ev = rings.poly_eval_at(QX, Fraction(5))
    x = v(rings.Q, "2/7")
    assert rings.hom_apply(ev, rings.hom_apply(emb, x)) == x


def test_collapse_hom():
    h = rings.collapse_hom(rings.Z)
    assert rings.hom_apply(h, v(rings.Z, 42)) == v(rings.ZERO, None)


def test_mod_to_mod_requires_divisibility():
    with pytest.raises(ValueError):
        rings.mod_to_mod(6, 4)


def test_hom_injective_analysis():
    assert rings.hom_injective(rings.include_rationals()) == (True, None)
    verdict, witness = rings.hom_injective(rings.reduce_mod(6))
    assert verdict is False
    assert rings.hom_apply(rings.reduce_mod(6), witness[0]) == rings.hom_apply(
        rings.reduce_mod(6), witness[1]
    )
    verdict, _ = rings.hom_injective(rings.mod_to_mod(6, 3))
    assert verdict is False
    verdict, _ = rings.hom_injective(rings.identity_hom(Z6))
    assert verdict is True


def test_is_field():
    assert rings.is_field(Z5)
    assert not rings.is_field(Z6)
    assert rings.is_field(rings.Q)
    assert not rings.is_field(rings.Z)
    assert not rings.is_field(rings.Product((Z2, Z2)))
