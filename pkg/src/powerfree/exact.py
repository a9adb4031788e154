"""Exact counts of k-th power-free elements by degree.

An element is an occupancy vector ``(n_j)`` over the primes with
``0 <= n_j < k``; its degree is ``sum(lambda_j * n_j)``.  The counting
function is the number of such vectors of degree ``<= x``.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import List, Sequence, Union

from .errors import CapacityError, OracleTooLargeError
from .semigroup import SemigroupModel, prime_count, primes_up_to

INF = math.inf
Occupancy = Union[int, float]

INT64_MAX = 2**63 - 1
ORACLE_MAX_PRIMES = 25
ENUMERATION_CAP = 10**7


def as_occupancy(k) -> Occupancy:
    """Normalize an occupancy bound: an integer ``k >= 2`` or ``math.inf``.

    Accepts the strings ``"inf"``/``"infinity"`` for the unbounded case.
    """
    if isinstance(k, str):
        text = k.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return INF
        try:
            k = int(text)
        except ValueError:
            raise ValueError(f"invalid occupancy bound {k!r}") from None
    if isinstance(k, float):
        if k == INF:
            return INF
        if not k.is_integer():
            raise ValueError(f"occupancy bound must be an integer, got {k!r}")
        k = int(k)
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError(f"invalid occupancy bound {k!r}")
    if k < 2:
        raise ValueError(f"occupancy bound must be >= 2, got {k}")
    return k


def format_occupancy(k: Occupancy) -> str:
    return "inf" if k == INF else str(int(k))


@dataclass(frozen=True)
class CountResult:
    count: int
    levels_used: int
    nodes_visited: int


def _max_occupancy(k: Occupancy, budget: float, lam: float) -> int:
    m = math.floor(budget / lam)
    return m if k == INF else min(int(k) - 1, m)


def count_power_free(
    model: SemigroupModel, k: Occupancy, x: float, slack: float = 0.0
) -> CountResult:
    """Count occupancy vectors with ``n_j < k`` and degree ``<= x + slack``.

    Levels are taken in descending degree.  Each stack entry is a remaining
    budget together with the set of still-free (smaller) levels; it accounts
    for the vector with all free levels empty and pushes one child for every
    choice of the next nonzero level and its occupancy.  Levels heavier than
    the budget are skipped by bisection, and once the budget is below twice
    the lightest degree at most one more prime fits, so those leaves are
    counted in bulk.
    """
    k = as_occupancy(k)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    lams = primes_up_to(model, x + slack)
    budget0 = x + slack
    if not lams:
        return CountResult(1, 0, 1)

    lightest2 = 2.0 * lams[0]
    total = 0
    nodes = 0
    stack = [(len(lams), budget0, 0)]
    while stack:
        top, budget, depth = stack.pop()
        nodes += 1
        free = bisect.bisect_right(lams, budget, 0, top)
        total += 1
        if free and budget < lightest2:
            total += free
        else:
            for i in range(free):
                lam = lams[i]
                for m in range(1, _max_occupancy(k, budget, lam) + 1):
                    rest = budget - m * lam
                    if rest < 0:
                        break
                    stack.append((i, rest, depth + 1))
        if total > INT64_MAX:
            raise CapacityError(
                f"count exceeds signed 64-bit range at depth {depth}", depth=depth
            )
    return CountResult(total, len(lams), nodes)


def count_power_free_oracle(
    model: SemigroupModel, k: Occupancy, x: float, max_primes: int = ORACLE_MAX_PRIMES
) -> int:
    """Brute-force count by growing the frontier of reachable degree sums.

    Only intended for small instances: by default at most 25 primes, and
    never more than ``10**7`` partial sums.
    """
    k = as_occupancy(k)
    if x < 0:
        raise ValueError("x must be nonnegative")
    n = prime_count(model, x)
    if n > max_primes:
        raise OracleTooLargeError(f"{n} primes exceed the oracle limit {max_primes}")
    frontier = [0.0]
    for lam in primes_up_to(model, x):
        grown = []
        for s in frontier:
            m = 0
            while m < k:
                t = s + m * lam
                if t > x:
                    break
                grown.append(t)
                m += 1
        if len(grown) > ENUMERATION_CAP:
            raise OracleTooLargeError(f"oracle frontier exceeds {ENUMERATION_CAP} sums")
        frontier = grown
    return len(frontier)


def enumerate_degrees(model: SemigroupModel, k: Occupancy, x: float) -> List[float]:
    """Sorted degrees of all power-free elements of degree ``<= x``, with multiplicity."""
    k = as_occupancy(k)
    size = count_power_free(model, k, x).count
    if size > ENUMERATION_CAP:
        raise CapacityError(f"{size} elements exceed the enumeration cap {ENUMERATION_CAP}")
    lams = primes_up_to(model, x)
    out = []
    stack = [(len(lams), 0.0)]
    while stack:
        top, s = stack.pop()
        out.append(s)
        for i in range(top):
            lam = lams[i]
            m = 1
            while m < k:
                t = s + m * lam
                if t > x:
                    break
                stack.append((i, t))
                m += 1
    out.sort()
    return out


def dirichlet_partial_sum(
    model: SemigroupModel, k: Occupancy, x_max: float, sigma: float
) -> float:
    """``sum(exp(-sigma * deg))`` over power-free elements of degree ``<= x_max``."""
    if not sigma > 1:
        raise ValueError("the Dirichlet series needs sigma > 1")
    return math.fsum(math.exp(-sigma * d) for d in enumerate_degrees(model, k, x_max))


def count_ascending(model: SemigroupModel, k: Occupancy, x: float) -> int:
    """Same count as :func:`count_power_free`, deciding levels lightest first.

    Used as a consistency check of the descending recursion.
    """
    k = as_occupancy(k)
    lams: Sequence[float] = primes_up_to(model, x)
    n = len(lams)
    total = 0
    stack = [(0, x)]
    while stack:
        start, budget = stack.pop()
        total += 1
        for i in range(start, n):
            lam = lams[i]
            if lam > budget:
                break
            for m in range(1, _max_occupancy(k, budget, lam) + 1):
                rest = budget - m * lam
                if rest < 0:
                    break
                stack.append((i + 1, rest))
    return total
