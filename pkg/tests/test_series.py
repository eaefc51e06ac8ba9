import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logscale.logalg import DomainError, cents_between, ln_of, ratio_value
from logscale.series import (
    SeriesSpec,
    factorial_series,
    logarithmic_series,
    periodic_difference_series,
    primorial_series,
)


def take(stream, n):
    return list(itertools.islice(stream, n))


def normalized(x, ref):
    return float(ratio_value(x, ref))


def test_logarithmic_series():
    assert take(logarithmic_series(3), 3) == [ln_of(3), ln_of(4), ln_of(5)]
    s = take(logarithmic_series(4), 13)
    assert s[0] == ln_of(4) and s[12] == ln_of(16)
    assert cents_between(s[12], s[0]) == pytest.approx(1200, abs=1e-9)
    s = take(logarithmic_series(3), 2)
    assert s[1] - s[0] == ln_of(Fraction(4, 3))
    with pytest.raises(DomainError):
        next(logarithmic_series(1))


def test_factorial_series():
    s = take(factorial_series(), 7)
    assert s[0] == ln_of(2) and s[1] == ln_of(6) and s[6] == ln_of(40320)
    assert normalized(s[1], s[0]) == pytest.approx(2.585, abs=5e-4)
    assert cents_between(s[1], s[0]) == pytest.approx(1644.172, abs=1e-3)
    assert normalized(s[5], s[0]) == pytest.approx(12.299, abs=5e-4)
    assert cents_between(s[5], s[0]) == pytest.approx(4344.592, abs=1e-3)
    assert s[3] - s[2] == ln_of(5)


def test_primorial_series():
    s = take(primorial_series(), 8)
    assert s[7] == ln_of(9699690)
    assert normalized(s[2], s[0]) == pytest.approx(4.907, abs=5e-4)
    assert cents_between(s[2], s[0]) == pytest.approx(2753.771, abs=1e-3)
    assert normalized(s[6], s[0]) == pytest.approx(18.962, abs=5e-4)
    assert cents_between(s[6], s[0]) == pytest.approx(5094.009, abs=1e-3)
    assert s[4] - s[3] == ln_of(11)


def test_periodic_series_examples():
    s = periodic_difference_series([3, 5], True, 4)
    assert s == [ln_of(3), ln_of(5), ln_of(15), ln_of(45)]
    assert [round(normalized(x, s[0]), 3) for x in s] == [1.0, 1.465, 2.465, 3.465]
    s = periodic_difference_series([3, 5], False, 4)
    assert s[3] == ln_of(225)
    assert normalized(s[3], s[0]) == pytest.approx(4.930, abs=5e-4)
    assert periodic_difference_series([2], False, 3) == [ln_of(2), ln_of(4), ln_of(8)]


def test_periodic_series_eighth_term_is_10125():
    s = periodic_difference_series([3, 5], True, 8)
    assert s[7] == ln_of(10125)
    assert s[7] != ln_of(16875)


def test_periodic_series_errors():
    with pytest.raises(DomainError):
        periodic_difference_series([], False, 3)
    with pytest.raises(DomainError):
        periodic_difference_series([1, 3], False, 3)
    with pytest.raises(DomainError):
        SeriesSpec("periodic")
    with pytest.raises(DomainError):
        SeriesSpec("harmonic")


def test_series_spec_take():
    assert SeriesSpec("factorial").take(0) == []
    assert SeriesSpec("logarithmic", start=5).take(2) == [ln_of(5), ln_of(6)]
    assert SeriesSpec("periodic", divisors=(3, 5), append_missing=True).take(2) == [ln_of(3), ln_of(5)]


def _is_log_of_integer(d):
    return not d.unit and all(c.denominator == 1 and c > 0 for _, c in d.items())


@pytest.mark.parametrize("stream", [factorial_series, primorial_series])
def test_differences_are_logs_of_integers(stream):
    s = take(stream(), 10)
    for i, j in itertools.combinations(range(len(s)), 2):
        assert _is_log_of_integer(s[j] - s[i])


def test_primorial_steps_are_single_primes():
    s = take(primorial_series(), 10)
    for a, b in zip(s, s[1:]):
        d = b - a
        assert len(d.items()) == 1 and d.items()[0][1] == 1


@given(st.lists(st.integers(min_value=2, max_value=30), min_size=1, max_size=4), st.integers(min_value=2, max_value=20))
def test_periodic_steps_cycle(divisors, count):
    s = periodic_difference_series(divisors, False, count)
    assert len(s) == count
    for k, (a, b) in enumerate(zip(s, s[1:])):
        assert b - a == ln_of(divisors[(k + 1) % len(divisors)])


@given(st.lists(st.integers(min_value=2, max_value=30), min_size=1, max_size=4), st.integers(min_value=0, max_value=15))
def test_periodic_with_append_is_sorted_and_distinct(divisors, count):
    s = periodic_difference_series(divisors, True, count)
    assert all(a < b for a, b in zip(s, s[1:]))
    assert len(s) == count


@pytest.mark.parametrize(
    "stream", [lambda: logarithmic_series(2), factorial_series, primorial_series]
)
def test_streams_strictly_increase(stream):
    s = take(stream(), 15)
    assert all(a < b for a, b in zip(s, s[1:]))
