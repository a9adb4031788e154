import math

import pytest
from hypothesis import given, strategies as st

from powerfree.errors import IncompleteModelError
from powerfree.semigroup import (
    SemigroupModel,
    SemigroupParams,
    log_model_count_closed_form,
    log_model_degree,
    prime_count,
    primes_up_to,
)


@pytest.mark.parametrize(
    "n, rho, expected",
    [(1, 1, math.log(2)), (2, 1, math.log(3)), (1, 2, math.log(1.5))],
)
def test_log_model_degree(n, rho, expected):
    assert log_model_degree(n, rho) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("rho, gamma, delta", [(0, 0, 1), (1, -1, 1), (1, 0, 0), (1, 0, 1.5)])
def test_params_validation(rho, gamma, delta):
    with pytest.raises(ValueError):
        SemigroupParams(rho, gamma, delta)


def test_log_model_fixes_gamma_delta():
    m = SemigroupModel.log_model(0.5)
    assert (m.params.gamma, m.params.delta) == (0.0, 1.0)


def test_prime_count_examples():
    m = SemigroupModel.log_model(1)
    assert prime_count(m, math.log(2)) == 1
    assert prime_count(m, 0.5) == 0


def test_prime_count_matches_closed_form_at_7():
    m = SemigroupModel.log_model(2)
    direct = sum(1 for n in range(1, 5000) if log_model_degree(n, 2) <= 7)
    assert prime_count(m, 7) == direct == math.floor(2 * math.e**7 - 2)


def test_primes_up_to():
    m = SemigroupModel.log_model(1)
    assert primes_up_to(m, 1.2) == pytest.approx([math.log(2), math.log(3)])
    assert primes_up_to(m, 0.1) == ()
    m2 = SemigroupModel.log_model(2)
    assert len(primes_up_to(m2, 2)) == log_model_count_closed_form(2, 2)


def test_explicit_incomplete_raises():
    m = SemigroupModel.explicit([0.5, 0.7])
    assert prime_count(m, 0.6) == 1
    with pytest.raises(IncompleteModelError):
        prime_count(m, 0.8)
    with pytest.raises(IncompleteModelError):
        primes_up_to(m, 1.0)
    complete = SemigroupModel.explicit([0.5, 0.7], complete=True)
    assert prime_count(complete, 10) == 2


def test_explicit_validation():
    with pytest.raises(ValueError):
        SemigroupModel.explicit([0.5, 0.3])
    with pytest.raises(ValueError):
        SemigroupModel.explicit([0.0, 1.0])


def test_explicit_repeats_count_as_distinct_primes():
    m = SemigroupModel.explicit([1.0, 1.0, 2.0], complete=True)
    assert prime_count(m, 1.0) == 2


rhos = st.floats(0.1, 5)
xs = st.floats(0, 6)


@given(rhos, xs)
def test_prime_count_within_one_of_rho_expm1(rho, x):
    n = prime_count(SemigroupModel.log_model(rho), x)
    assert abs(n - rho * math.expm1(x)) <= 1


@given(rhos, xs, xs)
def test_prime_count_monotone(rho, a, b):
    m = SemigroupModel.log_model(rho)
    lo, hi = sorted((a, b))
    assert prime_count(m, lo) <= prime_count(m, hi)


@given(rhos, st.integers(1, 10_000))
def test_prime_count_right_continuous_at_degrees(rho, n):
    m = SemigroupModel.log_model(rho)
    lam = log_model_degree(n, rho)
    assert prime_count(m, lam) >= n
    assert prime_count(m, math.nextafter(lam, 0)) < n


@given(rhos, st.floats(0, 4))
def test_primes_up_to_consistent(rho, x):
    m = SemigroupModel.log_model(rho)
    degs = primes_up_to(m, x)
    assert len(degs) == prime_count(m, x)
    assert all(d <= x for d in degs)
    assert list(degs) == sorted(degs)


@given(st.integers(1, 1000), rhos)
def test_degree_monotone_in_n_and_rho(n, rho):
    assert log_model_degree(n + 1, rho) > log_model_degree(n, rho)
    assert log_model_degree(n, rho * 1.5) < log_model_degree(n, rho)


def test_huge_x_prime_count_and_capacity():
    from powerfree.errors import CapacityError

    m = SemigroupModel.log_model(1)
    n = prime_count(m, 800.0)
    assert 10**347 < n < 10**348  # e**800 ~ 2.7e347
    with pytest.raises(CapacityError):
        primes_up_to(m, 30.0)
