import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import exhaustive_count

from powerfree.errors import CapacityError, IncompleteModelError, OracleTooLargeError
from powerfree.exact import (
    INF,
    as_occupancy,
    count_ascending,
    count_power_free,
    count_power_free_oracle,
    dirichlet_partial_sum,
    enumerate_degrees,
)
from powerfree.semigroup import SemigroupModel, prime_count, primes_up_to

LOG1 = SemigroupModel.log_model(1)


@pytest.mark.parametrize("k", [2, 3, INF])
def test_only_identity_below_lightest_prime(k):
    res = count_power_free(LOG1, k, 0.5)
    assert res.count == 1
    assert res.levels_used == 0


def test_fermi_example():
    # (0,0), (1,0), (0,1) over degrees ln 2, ln 3
    assert exhaustive_count([math.log(2), math.log(3)], 2, 1.2) == 3
    assert count_power_free(LOG1, 2, 1.2).count == 3


def test_bose_example_with_degree_collision():
    lams = [math.log(2), math.log(3), math.log(4)]
    assert exhaustive_count(lams, INF, 1.5) == 5
    assert count_power_free(LOG1, INF, 1.5).count == 5


def test_oracle_examples():
    assert count_power_free_oracle(LOG1, 2, 1.2) == 3
    assert count_power_free_oracle(LOG1, INF, 0) == 1
    m = SemigroupModel.log_model(0.5)
    assert count_power_free_oracle(m, 3, 2) == count_power_free(m, 3, 2).count


def test_enumerate_degrees_examples():
    assert enumerate_degrees(LOG1, 2, 1.2) == pytest.approx([0, math.log(2), math.log(3)])
    assert enumerate_degrees(LOG1, 5, 0.3) == [0.0]
    got = enumerate_degrees(LOG1, INF, 1.5)
    assert got == pytest.approx([0, math.log(2), math.log(3), math.log(4), math.log(4)])


def test_dirichlet_partial_sum_examples():
    assert dirichlet_partial_sum(LOG1, 2, 1.2, 2.0) == pytest.approx(1 + 2**-2 + 3**-2, rel=1e-14)
    assert dirichlet_partial_sum(LOG1, 3, 0.0, 1.7) == 1.0
    degs = [0, math.log(2), math.log(3), math.log(4), math.log(4)]
    expected = math.fsum(math.exp(-1.5 * d) for d in degs)
    assert dirichlet_partial_sum(LOG1, INF, 1.5, 1.5) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        dirichlet_partial_sum(LOG1, 2, 1.0, 1.0)


def test_partial_sum_increases_with_cutoff():
    vals = [dirichlet_partial_sum(LOG1, 2, x, 2.0) for x in (0.5, 1.5, 3.0, 5.0)]
    assert vals == sorted(vals)
    assert len(set(vals)) == len(vals)


@pytest.mark.parametrize("k", [2, 3, 5, "inf", 2.0, math.inf])
def test_as_occupancy_accepts(k):
    assert as_occupancy(k) in (2, 3, 5, INF)


@pytest.mark.parametrize("k", [1, 0, -3, 2.5, "two", True, None])
def test_as_occupancy_rejects(k):
    with pytest.raises(ValueError):
        as_occupancy(k)


def test_incomplete_explicit_propagates():
    m = SemigroupModel.explicit([0.4, 0.9])
    with pytest.raises(IncompleteModelError):
        count_power_free(m, 2, 2.0)


def test_oracle_guard():
    with pytest.raises(OracleTooLargeError):
        count_power_free_oracle(SemigroupModel.log_model(2), 2, 3.0)


def test_enumeration_cap(monkeypatch):
    import powerfree.exact as ex

    monkeypatch.setattr(ex, "ENUMERATION_CAP", 10)
    with pytest.raises(CapacityError):
        enumerate_degrees(LOG1, INF, 3.0)


def test_capacity_error_on_int64_overflow(monkeypatch):
    import powerfree.exact as ex

    monkeypatch.setattr(ex, "INT64_MAX", 100)
    with pytest.raises(CapacityError) as info:
        count_power_free(LOG1, INF, 4.0)
    assert info.value.depth is not None


def test_slack_widens_budget():
    x = math.log(4)
    strict = count_power_free(LOG1, INF, math.nextafter(x, 0)).count
    assert count_power_free(LOG1, INF, math.nextafter(x, 0), slack=1e-9).count > strict


def test_desk_scale_counts_are_stable():
    # frozen from the descending recursion, confirmed by the ascending variant
    m = SemigroupModel.log_model(1)
    assert count_power_free(m, 2, 7).count == count_ascending(m, 2, 7) == 6042
    assert count_power_free(m, INF, 7).count == count_ascending(m, INF, 7) == 8251


ks = st.sampled_from([2, 3, 4, 5, 6, INF])
rhos = st.floats(0.3, 3)


@settings(max_examples=150, deadline=None)
@given(rhos, ks, st.floats(0, 4))
def test_recursion_matches_frontier_oracle(rho, k, x):
    m = SemigroupModel.log_model(rho)
    if prime_count(m, x) > 25:
        return
    assert count_power_free(m, k, x).count == count_power_free_oracle(m, k, x)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.3, 2.0), min_size=1, max_size=5).map(sorted), ks, st.floats(0, 3))
def test_explicit_matches_nested_loops(degs, k, x):
    m = SemigroupModel.explicit(degs, complete=True)
    assert count_power_free(m, k, x).count == exhaustive_count(degs, k, x)


@settings(max_examples=60, deadline=None)
@given(rhos, ks, st.floats(0, 4), st.floats(0, 1))
def test_monotone_in_x(rho, k, x, dx):
    m = SemigroupModel.log_model(rho)
    assert count_power_free(m, k, x).count <= count_power_free(m, k, x + dx).count


@settings(max_examples=60, deadline=None)
@given(rhos, st.floats(0, 4))
def test_monotone_in_k_and_saturation(rho, x):
    m = SemigroupModel.log_model(rho)
    counts = [count_power_free(m, k, x).count for k in (2, 3, 4, 6, INF)]
    assert counts == sorted(counts)
    lam1 = primes_up_to(m, 10)[0]
    for k, c in zip((2, 3, 4, 6), counts):
        if (k - 1) * lam1 > x:
            assert c == counts[-1]


@settings(max_examples=60, deadline=None)
@given(rhos, ks, st.floats(0, 4))
def test_descending_equals_ascending(rho, k, x):
    m = SemigroupModel.log_model(rho)
    assert count_power_free(m, k, x).count == count_ascending(m, k, x)


@settings(max_examples=60, deadline=None)
@given(rhos, ks, st.floats(0, 4))
def test_count_lower_bounds(rho, k, x):
    m = SemigroupModel.log_model(rho)
    res = count_power_free(m, k, x)
    assert res.count >= 1
    assert res.count >= prime_count(m, x) + 1
    assert res.levels_used == prime_count(m, x)


@settings(max_examples=60, deadline=None)
@given(rhos, st.floats(0, 4))
def test_bose_below_twice_lightest(rho, x):
    m = SemigroupModel.log_model(rho)
    lam1 = primes_up_to(m, 10)[0]
    if x < 2 * lam1:
        assert count_power_free(m, INF, x).count == 1 + prime_count(m, x)


@settings(max_examples=30, deadline=None)
@given(rhos, ks, st.floats(0, 3))
def test_enumerate_matches_count(rho, k, x):
    m = SemigroupModel.log_model(rho)
    degs = enumerate_degrees(m, k, x)
    assert len(degs) == count_power_free(m, k, x).count
    assert degs[0] == 0.0
    assert degs == sorted(degs)
