from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zassenhaus import series as S
from zassenhaus.errors import ContractError, InvertibilityError


def ser(coeffs, order):
    return S.from_polynomial(coeffs, order)


def coeffs(P):
    return list(P.coefficients)


@pytest.mark.parametrize(
    "num, den, order, want",
    [
        ([1], [1, -2], 4, [1, 2, 4, 8, 16]),
        ([1], [1, -4, 1], 3, [1, 4, 15, 56]),
        ([1, 1], [1, -1], 3, [1, 2, 2, 2]),
    ],
)
def test_rational_function_examples(num, den, order, want):
    assert coeffs(S.from_rational_function(num, den, order)) == want


def test_rational_function_zero_denominator():
    with pytest.raises(InvertibilityError):
        S.from_rational_function([1], [0, 1], 3)


@pytest.mark.parametrize(
    "a, b, order, want",
    [
        ([1, 1], [1, -1], 3, [1, 0, -1, 0]),
        ([1, 1, 1, 1], [1, -1], 3, [1, 0, 0, 0]),
        ([1, 2], [1, 3], 2, [1, 5, 6]),
    ],
)
def test_multiply_examples(a, b, order, want):
    assert coeffs(S.multiply(ser(a, order), ser(b, order))) == want


def test_order_mismatch_rejected():
    with pytest.raises(ContractError):
        ser([1, 1], 3) * ser([1, 1], 4)


def test_floats_rejected():
    with pytest.raises(TypeError):
        S.TruncatedSeries((1.0, 0.5), 1)


def test_length_must_match_order():
    with pytest.raises(ContractError):
        S.TruncatedSeries((1, 2, 3), 1)


@pytest.mark.parametrize(
    "a, want",
    [([1, -1], [1, 1, 1, 1]), ([1, 1], [1, -1, 1, -1])],
)
def test_inverse_examples(a, want):
    assert coeffs(S.inverse(ser(a, 3))) == want


def test_inverse_recovers_demushkin_denominator():
    assert coeffs(S.inverse(ser([1, 4, 15], 2))) == [1, -4, 1]


def test_inverse_zero_constant():
    with pytest.raises(InvertibilityError):
        S.inverse(ser([0, 1], 3))


def test_log_examples():
    geo = S.from_rational_function([1], [1, -1], 3)
    assert coeffs(S.log(geo)) == [0, 1, Fraction(1, 2), Fraction(1, 3)]
    assert coeffs(S.log(S.one(5))) == [0] * 6
    ratio = S.from_rational_function([1, 1], [1, -1], 3)
    assert coeffs(S.log(ratio)) == [0, 2, 0, Fraction(2, 3)]


def test_log_needs_constant_one():
    with pytest.raises(ContractError):
        S.log(ser([2, 1], 3))


def test_log_geometric_oracle():
    # -log(1 - 3t) = sum 3^n t^n / n
    P = S.from_rational_function([1], [1, -3], 10)
    assert coeffs(S.log(P))[1:] == [Fraction(3**n, n) for n in range(1, 11)]


def test_str_is_readable():
    assert str(ser([1, -1, 0, 2], 3)) == "1 - t + 2*t^3 + O(t^4)"


ORDER = 8
small = st.integers(-5, 5)


@st.composite
def unit_series(draw, const_one=True):
    head = 1 if const_one else draw(st.sampled_from([1, -1, 2, 3]))
    tail = draw(st.lists(small, min_size=ORDER, max_size=ORDER))
    return ser([head] + tail, ORDER)


@st.composite
def any_series(draw):
    return ser(draw(st.lists(small, min_size=ORDER + 1, max_size=ORDER + 1)), ORDER)


@settings(max_examples=60, deadline=None)
@given(any_series(), any_series(), any_series())
def test_ring_axioms(a, b, c):
    one = S.one(ORDER)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * one == a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(unit_series(const_one=False))
def test_inverse_properties(a):
    inv = S.inverse(a)
    assert a * inv == S.one(ORDER)
    assert S.inverse(inv) == a


@settings(max_examples=60, deadline=None)
@given(unit_series(), unit_series())
def test_log_is_additive(a, b):
    assert S.log(a * b) == S.log(a) + S.log(b)


@settings(max_examples=60, deadline=None)
@given(unit_series())
def test_log_derivative_relation(a):
    # a * (log a)' = a', compared below degree ORDER
    L = S.log(a)
    dL = S.from_polynomial(list(L.derivative()), ORDER - 1)
    lhs = a.truncate(ORDER - 1) * dL
    assert list(lhs.coefficients) == list(a.derivative())


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=0, max_size=4), st.sampled_from([1, -1, 2]))
def test_rational_function_times_denominator(num, den_tail, d0):
    den = [d0] + den_tail
    P = S.from_rational_function(num, den, ORDER)
    assert P * S.from_polynomial(den, ORDER) == S.from_polynomial(num, ORDER)
