"""Ring, division, substitution, and serialization behavior of the exact
Laurent-polynomial core."""

import pytest
from hypothesis import given, settings, strategies as st

from octanet.laurent import (
    DivideByZero,
    LaurentPoly,
    NegativeExponent,
    NotDivisible,
    NotInvertible,
    VarTable,
    lp_canonical_text,
    lp_deserialize,
    lp_div_exact,
    lp_eval_rational,
    lp_parse_canonical,
    lp_serialize,
    lp_subst_zero,
    lp_substitute,
)

from fractions import Fraction


@pytest.fixture()
def tb():
    return VarTable()


def t(tb, i, j):
    return tb.poly("t[%d,%d]" % (i, j))


# -- construction and predicates -----------------------------------------------


def test_zero_one_const(tb):
    assert LaurentPoly.zero().is_zero()
    assert LaurentPoly.one().is_one()
    assert LaurentPoly.const(0).is_zero()
    assert LaurentPoly.const(7).as_int() == 7
    assert (LaurentPoly.const(3) + LaurentPoly.const(-3)).is_zero()


def test_unit_predicate(tb):
    x = t(tb, 1, 1)
    assert x.is_unit()
    assert (-x).is_unit()
    assert not (2 * x).is_unit()
    assert not (x + 1).is_unit()
    assert not LaurentPoly.zero().is_unit()


def test_additive_inverse(tb):
    x = t(tb, 1, 1)
    assert (x + (-x)).is_zero()


def test_monomial_cancellation(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    xinv_y = lp_div_exact(x, y)
    assert xinv_y * y == x


def test_difference_of_squares(tb):
    x = t(tb, 1, 1)
    assert (x + 1) * (x - 1) == x * x - 1


# -- exact division ------------------------------------------------------------


def test_div_monomial(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = x * x * y + x
    assert lp_div_exact(p, x) == x * y + 1


def test_div_by_unit_always_exact(tb):
    # in the Laurent ring a monomial divisor can never obstruct; the quotient
    # just picks up negative exponents (mutation relies on this)
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    q = lp_div_exact(x * y + 1, x)
    assert q * x == x * y + 1
    assert q.has_negative_exponents()


def test_div_multi_term_obstruction(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    with pytest.raises(NotDivisible) as exc:
        lp_div_exact(x * x + y, x + 1)
    assert not exc.value.remainder.is_zero()


def test_div_perfect_square(tb):
    y = t(tb, 1, 2)
    assert lp_div_exact(y * y + 2 * y + 1, y + 1) == y + 1


def test_div_by_zero(tb):
    with pytest.raises(DivideByZero):
        lp_div_exact(t(tb, 1, 1), LaurentPoly.zero())


def test_div_zero_numerator(tb):
    assert lp_div_exact(LaurentPoly.zero(), t(tb, 1, 1)).is_zero()


def test_div_with_negative_exponents(tb):
    # the divisor's minimal-monomial shift must clear t^-1 before dividing
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    xinv = lp_div_exact(LaurentPoly.one(), x)
    p = (xinv + y) * (x + y)
    assert lp_div_exact(p, xinv + y) == x + y
    assert lp_div_exact(p, x + y) == xinv + y


# -- substitution ---------------------------------------------------------------


def test_substitute_rename(tb):
    x = t(tb, 1, 1)
    v2 = tb.var("t[1,2]")
    v3 = tb.var("t[1,3]")
    image = tb.poly("t[1,2]") * tb.poly("t[1,3]")
    out = lp_substitute(x + 1, {tb.var("t[1,1]"): image})
    assert out == image + 1
    assert out.variables() == {v2, v3}


def test_substitute_is_homomorphism(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    sigma = {tb.var("t[1,1]"): y + 1}
    p, q = x + y, x * y - 2
    assert lp_substitute(p * q, sigma) == lp_substitute(p, sigma) * lp_substitute(q, sigma)
    assert lp_substitute(p + q, sigma) == lp_substitute(p, sigma) + lp_substitute(q, sigma)


def test_substitute_noninvertible_image(tb):
    x = t(tb, 1, 1)
    xinv = lp_div_exact(LaurentPoly.one(), x)
    with pytest.raises(NotInvertible):
        lp_substitute(xinv, {tb.var("t[1,1]"): t(tb, 1, 2) + 1})


def test_substitute_unit_image_through_negative_exponent(tb):
    x = t(tb, 1, 1)
    xinv = lp_div_exact(LaurentPoly.one(), x)
    out = lp_substitute(xinv, {tb.var("t[1,1]"): -t(tb, 1, 2)})
    assert out * (-t(tb, 1, 2)) == LaurentPoly.one()


def test_eval_rational(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = lp_div_exact(x, y) + 1
    got = lp_eval_rational(p, {tb.var("t[1,1]"): Fraction(3), tb.var("t[1,2]"): Fraction(2)})
    assert got == Fraction(5, 2)


def test_subst_zero_drops_terms(tb):
    a = tb.poly("a[1]")
    x = t(tb, 1, 1)
    assert lp_subst_zero(1 + a * x, [tb.var("a[1]")]) == LaurentPoly.one()


def test_subst_zero_product_term(tb):
    a1, a2 = tb.poly("a[1]"), tb.poly("a[2]")
    x = t(tb, 1, 1)
    vids = [tb.var("a[1]"), tb.var("a[2]")]
    assert lp_subst_zero(x + a1 * a2, vids) == x


def test_subst_zero_pole(tb):
    a = tb.poly("a[1]")
    ainv = lp_div_exact(LaurentPoly.one(), a)
    with pytest.raises(NegativeExponent) as exc:
        lp_subst_zero(ainv, [tb.var("a[1]")])
    assert exc.value.monomial


# -- canonical text and serialization -------------------------------------------


def test_canonical_text_zero(tb):
    assert lp_canonical_text(LaurentPoly.zero(), tb) == "0"


def test_canonical_text_frozen_example(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = lp_div_exact(x, y) + 1
    assert lp_canonical_text(p, tb) == "+1 +1·t[1,1]^1·t[1,2]^-1"


def test_canonical_text_equality_iff_equal(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = (x + y) * (x - y)
    q = x * x - y * y
    assert lp_canonical_text(p, tb) == lp_canonical_text(q, tb)
    assert lp_canonical_text(p, tb) != lp_canonical_text(p + 1, tb)


def test_parse_canonical_round_trip(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = 3 * x * x - lp_div_exact(y, x) + 5
    text = lp_canonical_text(p, tb)
    assert lp_parse_canonical(text, tb) == p
    assert lp_parse_canonical("0", tb).is_zero()


def test_serialize_round_trip(tb):
    x, y = t(tb, 1, 1), t(tb, 1, 2)
    p = 2 * x - 7 * lp_div_exact(LaurentPoly.one(), y) + 1
    blob = lp_serialize(p, tb)
    assert lp_deserialize(blob, tb) == p
    assert isinstance(blob, list)


# -- property tests --------------------------------------------------------------


def _pelems(tb):
    vids = [tb.var("t[1,%d]" % m) for m in range(1, 4)]

    def build(spec):
        out = LaurentPoly.zero()
        for coeff, exps in spec:
            mono = LaurentPoly.const(coeff)
            for vid, e in zip(vids, exps):
                mono = mono * LaurentPoly.variable(vid, e)
            out = out + mono
        return out

    return build


poly_spec = st.lists(
    st.tuples(
        st.integers(min_value=-4, max_value=4),
        st.tuples(
            st.integers(min_value=-3, max_value=3),
            st.integers(min_value=-3, max_value=3),
            st.integers(min_value=-3, max_value=3),
        ),
    ),
    max_size=8,
)


@settings(max_examples=60, deadline=None)
@given(poly_spec, poly_spec, poly_spec)
def test_ring_axioms(sp, sq, sr):
    tb2 = VarTable()
    build = _pelems(tb2)
    p, q, r = build(sp), build(sq), build(sr)
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=60, deadline=None)
@given(poly_spec, poly_spec)
def test_division_inverts_multiplication(sp, sq):
    tb2 = VarTable()
    build = _pelems(tb2)
    p, q = build(sp), build(sq)
    if q.is_zero():
        with pytest.raises(DivideByZero):
            lp_div_exact(p * q, q)
    else:
        assert lp_div_exact(p * q, q) == p


@settings(max_examples=60, deadline=None)
@given(poly_spec)
def test_canonical_text_round_trips(sp):
    tb2 = VarTable()
    build = _pelems(tb2)
    p = build(sp)
    assert lp_parse_canonical(lp_canonical_text(p, tb2), tb2) == p
    assert lp_deserialize(lp_serialize(p, tb2), tb2) == p
