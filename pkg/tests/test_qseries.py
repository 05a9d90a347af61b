from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qinv.qseries import (
    INF,
    DivisionByNonUnitError,
    InexactDivisionError,
    NoTrailingTermError,
    QSeries,
    agreement_order,
    div_prod_one_minus,
    euler_product,
    euler_product_naive,
    format_series,
    from_record,
    is_integral,
    prod_one_minus,
    to_record,
    trailing_normalize,
)

exps = st.fractions(min_value=-3, max_value=12, max_denominator=6)
coefs = st.integers(-5, 5) | st.fractions(min_value=-3, max_value=3, max_denominator=4)
truncs = st.sampled_from([INF, Fraction(8), Fraction(25, 2), Fraction(20)])


@st.composite
def series(draw, min_exp=-3):
    terms = draw(st.lists(st.tuples(exps.filter(lambda e: e >= min_exp), coefs), max_size=6))
    return QSeries(terms, draw(truncs))


def partitions_dp(N):
    p = [1] + [0] * N
    for k in range(1, N + 1):
        for m in range(k, N + 1):
            p[m] += p[m - k]
    return p


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QSeries.zero(a.trunc)


@given(series(min_exp=0), st.integers(1, 8))
def test_division_inverts_multiplication(a, k):
    b = QSeries({0: 1, Fraction(k, 2): -1, k: 3})
    assert (a * b) / b == a


@given(series(), st.sampled_from([Fraction(3), Fraction(7, 2), Fraction(6)]))
def test_truncation_is_monotone(a, T):
    if T > a.trunc:
        with pytest.raises(ValueError):
            a.truncate(T)
        return
    t = a.truncate(T)
    assert t.trunc == T
    assert t.truncate(T - 1) == a.truncate(T - 1)
    assert all(e < T for e in t.terms)


@given(series())
def test_record_round_trip(a):
    assert from_record(to_record(a)) == a


def test_geometric_series():
    g = QSeries.one(10) / QSeries({0: 1, 1: -1})
    assert g == QSeries({k: 1 for k in range(10)}, 10)


def test_grid_and_monomials():
    a = QSeries({Fraction(1, 2): 1, Fraction(1, 3): 2})
    assert a.grid == 6
    assert (a * a)[Fraction(5, 6)] == 4
    assert QSeries.monomial(3, Fraction(5, 2)).degree == Fraction(5, 2)


def test_euler_product_pentagonal():
    T = 60
    e = euler_product(T)
    assert e == euler_product_naive(T)
    pent = {k * (3 * k - 1) // 2: (-1) ** k for k in range(-7, 8)}
    assert all(e[n] == pent.get(n, 0) for n in range(T))


def test_partition_counts():
    N = 80
    inv = QSeries.one(N) / euler_product(N)
    assert [inv[n] for n in range(N)] == partitions_dp(N - 1)


def test_division_errors():
    with pytest.raises(DivisionByNonUnitError):
        QSeries.one(10) / QSeries.zero(10)
    with pytest.raises(NoTrailingTermError):
        trailing_normalize(QSeries.zero(5))


def test_exact_division_checks_remainder():
    num = prod_one_minus([1, 2, 3])
    assert div_prod_one_minus(num, [2, 3]) == prod_one_minus([1])
    with pytest.raises(InexactDivisionError):
        div_prod_one_minus(QSeries({0: 1}), [1])


def test_trailing_normalize_and_agreement():
    a = QSeries({Fraction(-3, 2): -2, 0: 4}, 10)
    hat, e, sign = trailing_normalize(a)
    assert (e, sign) == (Fraction(-3, 2), -1)
    assert hat == QSeries({0: 1, Fraction(3, 2): -2}, Fraction(23, 2))
    b = QSeries({Fraction(-3, 2): -2, 0: 4, 5: 1}, 10)
    assert agreement_order(a, b) == 5
    assert agreement_order(a, a) is INF


def test_integrality_predicate():
    assert is_integral(QSeries({0: 1, 3: -2}))
    assert not is_integral(QSeries({Fraction(1, 2): 1}))
    assert not is_integral(QSeries({0: Fraction(1, 2)}))
    assert not is_integral(QSeries({-1: 1}))


def test_formatting():
    assert format_series(QSeries({0: 1, 2: -1}, 10)) == "1 - q^2 + O(q^10)"
    assert format_series(QSeries.zero(10)) == "O(q^10)"
    assert format_series(QSeries.zero()) == "0"


@settings(max_examples=25)
@given(st.integers(0, 30))
def test_mixed_truncations(T):
    a = euler_product(40)
    b = QSeries({0: 1, 1: 1}, T)
    assert (a * b).trunc == T
    assert (a * b) == (a.truncate(T) * b)
