from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcmlattice.certified import CertifiedReal, as_alpha_interval, log_sum, power_sum


def test_exact_sum_enclosed():
    r = power_sum([(1, 45), (-1, 5), (-1, 3), (1, 1)], 1)
    assert r.contains(Fraction(22, 45))
    assert r.sign == 1


def test_single_term():
    assert power_sum([(1, 3)], 1).contains(Fraction(1, 3))


def test_interval_exponent_encloses_range():
    r = power_sum([(1, 2)], (Fraction(1), Fraction(2)))
    assert r.contains(Fraction(1, 2)) and r.contains(Fraction(1, 4))


def test_zero_sum_is_not_certified():
    r = power_sum([(1, 6), (-1, 6)], Fraction(1, 3))
    assert r.sign == 0 and not r.certified


def test_precision_shrinks_width():
    terms = [(1, 7), (-1, 3)]
    widths = [power_sum(terms, Fraction(1, 3), p).width for p in (64, 128, 256)]
    assert widths[0] > widths[1] > widths[2] > 0


def test_log_sum():
    r = log_sum([(1, 6, 2), (-1, 3, 1)])
    assert r.contains(0)
    assert log_sum([(2, 3, 1)]).sign == 1


def test_certified_real_basics():
    c = CertifiedReal.exact(Fraction(1, 3))
    assert c.width == 0 and c.mid == Fraction(1, 3) and c.sign == 1
    assert CertifiedReal(-1, 1).sign == 0
    with pytest.raises(ValueError):
        CertifiedReal(1, 0)


def test_alpha_interval_forms():
    assert as_alpha_interval(2) == (2, 2)
    assert as_alpha_interval((1, 3)) == (1, 3)
    assert as_alpha_interval(CertifiedReal(1, 2)) == (1, 2)


@given(
    st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 10**6)), min_size=1, max_size=6),
    st.integers(1, 4),
)
def test_integer_exponent_enclosure_contains_exact(terms, alpha):
    exact = sum((Fraction(c, b**alpha) for c, b in terms), Fraction(0))
    assert power_sum(terms, alpha, 128).contains(exact)


@given(st.integers(2, 10**9), st.fractions(Fraction(1, 100), 10, max_denominator=1000))
def test_monotone_in_exponent(base, alpha):
    a = power_sum([(1, base)], alpha, 128)
    b = power_sum([(1, base)], alpha + Fraction(1, 10), 128)
    assert b.hi <= a.hi
