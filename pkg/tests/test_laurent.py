"""Laurent polynomial arithmetic: golden examples and ring properties."""

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from gca.errors import NegativePowerAtZero, NotDivisible, ZeroPolynomial
from gca.laurent import (
    LaurentPoly,
    decompose_by_variable,
    divide_exact,
    gcd,
    leading_term_wrt,
    rational_rank,
    specialize,
)

from corpus import GOLDEN_X3, GOLDEN_X5, H, X1, X2, lp, to_sympy
from oracles import exchange_poly_reference

ZERO = LaurentPoly.zero()
ONE = LaurentPoly.constant(1)


def coeffs(lo=-4, hi=4):
    return st.integers(lo, hi)


def monos():
    return st.dictionaries(st.integers(1, 3), st.integers(-3, 3), max_size=3)


def polys():
    return st.lists(st.tuples(monos(), coeffs()), max_size=4).map(
        lambda items: sum(
            (LaurentPoly.term(c, m) for m, c in items), LaurentPoly.zero()
        )
    )


# -- add ------------------------------------------------------------------


def test_add_cancellation():
    assert (ONE + X1) + (-X1) == ONE


def test_add_zero():
    assert ZERO + ZERO == ZERO


def test_add_assembles_exchange_polynomial():
    # Independent assembly of the degree-2 exchange sum for the golden seed.
    oracle = exchange_poly_reference(
        {1: sp.Symbol("x1"), 2: sp.Symbol("x2"), 3: sp.Symbol("x3")},
        {2: -2},
        2,
        [sp.Integer(1), sp.Symbol("x3"), sp.Integer(1)],
    )
    mine = (X2**2 + H * X2) + ONE
    assert sp.expand(to_sympy(mine) - oracle) == 0


# -- multiply -------------------------------------------------------------


def test_multiply_difference_of_squares():
    assert (ONE + X1) * (ONE - X1) == ONE - X1**2


def test_multiply_monomial_recovers_golden_variable():
    p1 = X2**2 + H * X2 + ONE
    assert lp(1, x1=-1) * p1 == GOLDEN_X3


def test_multiply_exchange_polynomials():
    p1 = X2**2 + H * X2 + ONE
    p2 = ONE + X1
    expected = sp.expand(to_sympy(p1) * to_sympy(p2))
    assert sp.expand(to_sympy(p1 * p2) - expected) == 0
    assert p1 * p2 == (
        X2**2 + H * X2 + ONE + X1 * X2**2 + H * X1 * X2 + X1
    )


# -- divide_exact ---------------------------------------------------------


def test_divide_by_monomial():
    assert divide_exact(ONE + X1, X2) == lp(1, x2=-1) + lp(1, x1=1, x2=-1)


def test_divide_round_trip_on_exchange_polynomial():
    p1 = X2**2 + H * X2 + ONE
    assert divide_exact(X1 * p1, p1) == X1


def test_divide_coprime_fails():
    with pytest.raises(NotDivisible):
        divide_exact(ONE + X1, ONE + X2)


def test_divide_integer_content():
    with pytest.raises(NotDivisible):
        divide_exact(X1 + ONE, LaurentPoly.constant(2))
    assert divide_exact(2 * X1 + 2 * X2, LaurentPoly.constant(2)) == X1 + X2


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        divide_exact(X1, ZERO)


# -- gcd ------------------------------------------------------------------


def test_gcd_coprime_exchange_polynomials():
    g = gcd(X2**2 + H * X2 + ONE, ONE + X1)
    assert g == ONE
    # Corroborate with an independent gcd.
    s = sp.gcd(to_sympy(X2**2 + H * X2 + ONE), to_sympy(ONE + X1))
    assert s == 1


def test_gcd_idempotent():
    p = X1**2 - X2**2
    g = gcd(p, p)
    assert g == p or g == -p
    assert divide_exact(p, g) in (ONE, -ONE)


def test_gcd_difference_of_squares():
    g = gcd(X1**2 - X2**2, X1 - X2)
    assert g == X1 - X2
    assert divide_exact(X1**2 - X2**2, g) == X1 + X2


def test_gcd_strips_monomial_content():
    g = gcd(lp(1, x1=-1) * (ONE + X2), lp(3, x1=2) * (ONE + X2))
    assert g == ONE + X2


def test_gcd_keeps_integer_content():
    assert gcd(LaurentPoly.constant(2), LaurentPoly.constant(2)) == LaurentPoly.constant(2)
    assert gcd(2 * X1 + 2, 4 * X1 + 4) == 2 * X1 + 2


@given(polys(), polys(), polys())
def test_gcd_divides_and_scales(p, q, r):
    if p.is_zero() and q.is_zero():
        return
    g = gcd(p, q)
    if not p.is_zero():
        divide_exact(p, g)
    if not q.is_zero():
        divide_exact(q, g)
    if not r.is_zero():
        left = gcd(p * r, q * r)
        right = gcd(g * r, g * r)  # g*r up to normalization
        assert left == right


# -- ring axioms ----------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + (-p) == ZERO


@given(polys(), polys())
def test_division_round_trip(p, q):
    if q.is_zero():
        return
    assert divide_exact(p * q, q) == p


# -- decomposition --------------------------------------------------------


def test_decompose_golden_variable():
    comps = decompose_by_variable(GOLDEN_X5, 1)
    assert set(comps) == {-1, 0, 1}
    assert comps[-1] == ONE + lp(1, x2=-1, x3=1) + lp(1, x2=-2)
    assert comps[0] == lp(1, x2=-1, x3=1) + lp(2, x2=-2)
    assert comps[1] == lp(1, x2=-2)


def test_decompose_constant_and_power():
    assert decompose_by_variable(ONE, 1) == {0: ONE}
    assert decompose_by_variable(X1**3, 1) == {3: ONE}


@given(polys(), st.integers(1, 3))
def test_decompose_reassembles(p, v):
    comps = decompose_by_variable(p, v)
    assert sum(
        (c * LaurentPoly.term(1, {v: k}) for k, c in comps.items()), ZERO
    ) == p
    assert all(v not in c.variables() for c in comps.values())


# -- leading term ---------------------------------------------------------


def test_leading_term_golden():
    a, c = leading_term_wrt(GOLDEN_X5, 1)
    assert (a, c) == (-1, ONE + lp(1, x2=-1, x3=1) + lp(1, x2=-2))


def test_leading_term_trivial():
    assert leading_term_wrt(X1, 1) == (1, ONE)
    assert leading_term_wrt(ONE + X1, 1) == (0, ONE)
    with pytest.raises(ZeroPolynomial):
        leading_term_wrt(ZERO, 1)


# -- specialize -----------------------------------------------------------


def test_specialize_zero_is_the_pivot_evaluation():
    assert specialize(lp(1, x2=-1) + lp(1, x1=1, x2=-1), 1, 0) == lp(1, x2=-1)


def test_specialize_identity():
    p = GOLDEN_X5
    assert specialize(p, 1, X1) == p


def test_specialize_negative_power_at_zero():
    with pytest.raises(NegativePowerAtZero):
        specialize(lp(1, x1=-1), 1, 0)


@given(polys(), st.integers(1, 3))
def test_specialize_zero_drops_terms(p, v):
    if any(e < 0 for m in p.terms for var, e in m if var == v):
        return
    expected = LaurentPoly(
        {m: c for m, c in p.terms.items() if all(var != v for var, _ in m)}
    )
    assert specialize(p, v, 0) == expected


# -- rational rank --------------------------------------------------------


def test_rank_duplicates_and_distinct():
    assert rational_rank([X1, X2, X1]) == 2
    assert rational_rank([ONE, X1, X1**2]) == 3


@given(st.permutations([0, 1, 2]), st.integers(1, 5))
def test_rank_invariances(perm, scale):
    rows = [X1 + X2, X1 - X2, lp(1, x1=1, x2=1)]
    base = rational_rank(rows)
    shuffled = [rows[i] for i in perm]
    shuffled[0] = shuffled[0] * scale
    assert rational_rank(shuffled) == base
