"""Degree-sequence models for the primes of an additive arithmetic semigroup.

Two kinds are supported: the logarithmic model with prime degrees
``ln((n + rho) / rho)``, whose prime counting function is
``floor(rho * e**x - rho)``, and a finite explicit list used by oracle tests.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import mpmath

from .errors import CapacityError, IncompleteModelError

LOG_MODEL = "log"
EXPLICIT_LIST = "explicit"

MAX_EXPLICIT_DEGREES = 10**7
MAX_MATERIALIZED = 10**8


@dataclass(frozen=True)
class SemigroupParams:
    """Parameters of ``pi(x) = rho x**gamma e**x (1 + O(x**-delta))``."""

    rho: float
    gamma: float = 0.0
    delta: float = 1.0

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be positive and finite, got {self.rho!r}")
        if not (self.gamma > -1 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must exceed -1, got {self.gamma!r}")
        if not (0 < self.delta <= 1):
            raise ValueError(f"delta must lie in (0, 1], got {self.delta!r}")


@dataclass(frozen=True)
class SemigroupModel:
    """Prime degree sequence plus its asymptotic parameters.

    Build instances with :meth:`log_model` or :meth:`explicit`.

    ``complete`` only matters for explicit lists: a complete list is the whole
    set of primes (a finitely generated semigroup), an incomplete one is a
    prefix of a larger sequence and refuses queries past its last degree.
    ``error_const`` is the constant hidden in the ``O(x**-delta)`` term; the
    generic zeta tail bound is only as trustworthy as this number.
    """

    params: SemigroupParams
    kind: str = LOG_MODEL
    degrees: Tuple[float, ...] = field(default=(), repr=False)
    complete: bool = False
    error_const: float = 1.0

    @classmethod
    def log_model(cls, rho: float) -> "SemigroupModel":
        # gamma = 0 and delta = 1 hold by construction
        return cls(SemigroupParams(rho, 0.0, 1.0), LOG_MODEL)

    @classmethod
    def explicit(
        cls,
        degrees: Sequence[float],
        params: Optional[SemigroupParams] = None,
        complete: bool = False,
        error_const: float = 1.0,
    ) -> "SemigroupModel":
        degs = tuple(float(d) for d in degrees)
        if len(degs) > MAX_EXPLICIT_DEGREES:
            raise ValueError(f"explicit lists are capped at {MAX_EXPLICIT_DEGREES} entries")
        if any(not (d > 0 and math.isfinite(d)) for d in degs):
            raise ValueError("prime degrees must be positive and finite")
        if any(a > b for a, b in zip(degs, degs[1:])):
            raise ValueError("explicit degrees must be nondecreasing")
        if params is None:
            params = SemigroupParams(1.0)
        return cls(params, EXPLICIT_LIST, degs, complete, error_const)

    def __post_init__(self):
        if self.kind not in (LOG_MODEL, EXPLICIT_LIST):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.error_const < 0:
            raise ValueError("error_const must be nonnegative")

    @property
    def rho(self) -> float:
        return self.params.rho

    def degree(self, n: int) -> float:
        """Degree of the n-th prime (1-based)."""
        if self.kind == LOG_MODEL:
            return log_model_degree(n, self.rho)
        return self.degrees[n - 1]

    def _check_reach(self, x: float) -> None:
        if self.kind == EXPLICIT_LIST and not self.complete:
            largest = self.degrees[-1] if self.degrees else 0.0
            if x > largest:
                raise IncompleteModelError(x, largest)


def log_model_degree(n: int, rho: float) -> float:
    """``ln((n + rho) / rho)``, the degree of the n-th prime in the log model."""
    if n < 1:
        raise ValueError("prime index starts at 1")
    if not rho > 0:
        raise ValueError("rho must be positive")
    return math.log1p(n / rho)


def log_model_count_closed_form(rho: float, x: float) -> int:
    """``floor(rho e**x - rho)``; agrees with :func:`prime_count` away from ties."""
    if x < 700:
        return max(0, math.floor(rho * math.expm1(x)))
    with mpmath.workdps(int(x / 2.3) + 20):
        return int(mpmath.floor(rho * mpmath.expm1(x)))


@lru_cache(maxsize=64)
def _log_prefix(rho: float, n: int) -> Tuple[float, ...]:
    return tuple(math.log1p(i / rho) for i in range(1, n + 1))


def _log_model_count(rho: float, x: float) -> int:
    if x < 0:
        return 0
    n = log_model_count_closed_form(rho, x)
    if x >= 700:
        return n  # beyond double range the float comparison is meaningless
    # the closed form can be off by one against the float comparison
    while n > 0 and log_model_degree(n, rho) > x:
        n -= 1
    while log_model_degree(n + 1, rho) <= x:
        n += 1
    return n


def prime_count(model: SemigroupModel, x: float) -> int:
    """Number of primes of degree ``<= x``."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    model._check_reach(x)
    if model.kind == LOG_MODEL:
        return _log_model_count(model.rho, x)
    return bisect.bisect_right(model.degrees, x)


def primes_up_to(model: SemigroupModel, x: float) -> Tuple[float, ...]:
    """All prime degrees ``<= x`` in nondecreasing order."""
    n = prime_count(model, x)
    if n > MAX_MATERIALIZED:
        raise CapacityError(f"{n} primes of degree <= {x!r} exceed {MAX_MATERIALIZED}")
    if model.kind == LOG_MODEL:
        return _log_prefix(model.rho, n)
    return model.degrees[:n]


def prime_prefix(model: SemigroupModel, n: int) -> Tuple[float, ...]:
    """The first ``n`` prime degrees (fewer for a short explicit list)."""
    if model.kind == LOG_MODEL:
        return _log_prefix(model.rho, n)
    return model.degrees[:n]
