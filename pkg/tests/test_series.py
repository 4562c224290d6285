import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgeworth_lab.errors import UsageError
from edgeworth_lab.series import (
    InvNPoly,
    TruncatedTaylor,
    compose_inverse_sqrt,
    invn_div,
    invn_eval,
    invn_mul,
    invn_sqrt,
    invn_truncate,
    poly_add,
    poly_mul,
)


def poly(terms, d=2, cap=3):
    return TruncatedTaylor(d, cap, terms)


def assert_poly_close(a, b, tol=1e-14):
    keys = set(a.terms) | set(b.terms)
    for k in keys:
        assert a.coefficient(k) == pytest.approx(b.coefficient(k), abs=tol)


# ---------------------------------------------------------------------------
# addition
# ---------------------------------------------------------------------------


def test_add_identity():
    a = poly({(1, 0): 2.0, (0, 2): -0.5})
    zero = TruncatedTaylor.zero(2, 3)
    assert_poly_close(poly_add(a, zero), a)


def test_add_doubles_a_variable():
    x1 = TruncatedTaylor.variable(0, 2, 3)
    assert poly_add(x1, x1).coefficient((1, 0)) == 2.0


def test_add_round_trip_random():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = poly({(i, j): rng.normal() for i in range(3) for j in range(3 - i)})
        b = poly({(i, j): rng.normal() for i in range(3) for j in range(3 - i)})
        assert_poly_close(poly_add(poly_add(a, b), b.scaled(-1.0)), a, tol=1e-14)


def test_add_rejects_mismatches():
    with pytest.raises(UsageError):
        poly_add(TruncatedTaylor.zero(2, 3), TruncatedTaylor.zero(3, 3))
    with pytest.raises(UsageError):
        poly_add(TruncatedTaylor.zero(2, 3), TruncatedTaylor.zero(2, 2))


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------


def test_mul_difference_of_squares():
    one_plus = poly({(0, 0): 1.0, (1, 0): 1.0}, cap=2)
    one_minus = poly({(0, 0): 1.0, (1, 0): -1.0}, cap=2)
    product = poly_mul(one_plus, one_minus)
    assert_poly_close(product, poly({(0, 0): 1.0, (2, 0): -1.0}, cap=2))


def test_mul_binomial_square():
    s = poly({(1, 0): 1.0, (0, 1): 1.0}, cap=2)
    sq = poly_mul(s, s)
    assert_poly_close(sq, poly({(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}, cap=2))


def test_mul_truncates_silently():
    x = poly({(1, 0): 1.0}, cap=2)
    x2 = poly({(2, 0): 1.0}, cap=2)
    assert poly_mul(x, x2).terms == {}


def test_mul_rejects_dimension_mismatch():
    with pytest.raises(UsageError):
        poly_mul(TruncatedTaylor.zero(2, 3), TruncatedTaylor.zero(3, 3))


def test_pow_matches_repeated_multiplication():
    from edgeworth_lab.series import poly_pow

    s = poly({(1, 0): 0.5, (0, 1): -0.25, (0, 0): 1.0})
    assert_poly_close(poly_pow(s, 3), poly_mul(poly_mul(s, s), s))
    assert poly_pow(s, 0).terms == {(0, 0): 1.0}
    with pytest.raises(UsageError):
        poly_pow(s, -1)


coeffs = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda k: sum(k) <= 3),
    coeffs,
    max_size=6,
).map(lambda t: TruncatedTaylor(2, 3, t))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_laws(a, b, c):
    assert_poly_close(poly_mul(a, b), poly_mul(b, a), tol=1e-12)
    assert_poly_close(
        poly_mul(poly_mul(a, b), c), poly_mul(a, poly_mul(b, c)), tol=1e-12
    )
    assert_poly_close(
        poly_mul(a, poly_add(b, c)),
        poly_add(poly_mul(a, b), poly_mul(a, c)),
        tol=1e-12,
    )


# ---------------------------------------------------------------------------
# inverse square root composition
# ---------------------------------------------------------------------------


def test_inverse_sqrt_of_zero_is_one():
    u = TruncatedTaylor.zero(2, 3)
    result = compose_inverse_sqrt(u)
    assert result.terms == {(0, 0): 1.0}


def test_inverse_sqrt_single_variable_coefficients():
    u = TruncatedTaylor.variable(0, 1, 3)
    result = compose_inverse_sqrt(u)
    # binomial(-1/2, k) computed independently
    for k in range(4):
        expected = math.comb(2 * k, k) / (-4.0) ** k
        assert result.coefficient((k,)) == pytest.approx(expected, rel=1e-15)


def test_inverse_sqrt_numeric_check():
    u = TruncatedTaylor.variable(0, 1, 3)
    result = compose_inverse_sqrt(u)
    assert result.evaluate([0.01]) == pytest.approx(1.01**-0.5, abs=1e-8)


def test_inverse_sqrt_rejects_constant_term():
    u = TruncatedTaylor.constant(0.5, 2, 3)
    with pytest.raises(UsageError):
        compose_inverse_sqrt(u)


small_u = st.dictionaries(
    st.tuples(st.integers(0, 1), st.integers(0, 1)).filter(lambda k: 1 <= sum(k) <= 2),
    st.floats(min_value=-0.1, max_value=0.1, allow_nan=False),
    max_size=4,
).map(lambda t: TruncatedTaylor(2, 3, t))


@settings(max_examples=60, deadline=None)
@given(small_u)
def test_inverse_sqrt_defining_property(u):
    inv = compose_inverse_sqrt(u)
    one_plus_u = poly_add(TruncatedTaylor.constant(1.0, 2, 3), u)
    product = poly_mul(poly_mul(inv, inv), one_plus_u)
    assert_poly_close(product, TruncatedTaylor.constant(1.0, 2, 3), tol=1e-12)


# ---------------------------------------------------------------------------
# 1/n series
# ---------------------------------------------------------------------------


def test_invn_mul_whole_powers():
    inv_n = InvNPoly.single(2, 1.0)
    assert invn_mul(inv_n, inv_n).terms == {4: 1.0}


def test_invn_truncate():
    a = InvNPoly({2: 1.0, 4: 5.0})
    assert invn_truncate(a, 2).terms == {2: 1.0}


def test_invn_eval_example():
    a = InvNPoly({2: 1.0, 4: 1.0})
    assert invn_eval(a, 10) == pytest.approx(0.11, rel=1e-14)


def test_invn_eval_exact_single_term():
    a = InvNPoly.single(3, 0.7)
    assert invn_eval(a, 17.0) == 0.7 * 17.0 ** (-1.5)


def test_invn_eval_monotone_in_positive_coefficients():
    base = InvNPoly({2: 1.0, 3: 0.5})
    bigger = InvNPoly({2: 1.5, 3: 0.5})
    assert invn_eval(bigger, 9.0) > invn_eval(base, 9.0)


def test_invn_eval_rejects_nonpositive_n():
    with pytest.raises(UsageError):
        invn_eval(InvNPoly.single(2, 1.0), 0.0)


def test_invn_negative_half_power_rejected():
    with pytest.raises(UsageError):
        InvNPoly({-1: 1.0})


def test_invn_div_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = InvNPoly({0: 1.0 + rng.uniform(0.5, 2.0), 1: rng.normal(), 3: rng.normal()})
        b = InvNPoly({0: rng.uniform(0.5, 2.0), 2: rng.normal()})
        q = invn_div(invn_mul(a, b), b, 8)
        for p in range(5):
            assert q.coefficient(p) == pytest.approx(a.coefficient(p), abs=1e-12)


def test_invn_sqrt_round_trip():
    a = InvNPoly({2: 0.9, 4: 0.3, 6: -0.1})
    root = invn_sqrt(a, 10)
    square = invn_mul(root, root)
    for p in range(2, 8):
        assert square.coefficient(p) == pytest.approx(a.coefficient(p), abs=1e-12)


def test_invn_div_rejects_negative_shift():
    with pytest.raises(UsageError):
        invn_div(InvNPoly.single(1, 1.0), InvNPoly.single(2, 1.0), 8)
