"""Saddle point of ``x s + ln zeta_k(s)`` and the resulting count asymptotics."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import BracketFailure, ConvergenceFailure
from .exact import Occupancy, as_occupancy
from .semigroup import SemigroupModel, SemigroupParams
from .zeta import DEFAULT_MAX_PRIMES, SIGMA_WARN, SigmaCostWarning, ZetaEval, log_zeta

BETA_MAX = 64.0
MAX_ITER = 60


def gamma_function(z: float) -> float:
    if not z > 0:
        raise ValueError("gamma_function is only defined here for z > 0")
    return math.gamma(z)


@dataclass(frozen=True)
class KappaBound:
    """Supremum of admissible error exponents; ``strict`` marks an open end."""

    value: float
    strict: bool


@dataclass(frozen=True)
class SaddlePoint:
    x: float
    beta: float
    residual: float
    zeta_at_beta: ZetaEval
    log_estimate: float
    kappa_sup: float
    iterations: int = 0


@dataclass(frozen=True)
class AsymptoticCount:
    log_value: float
    linear_value: Optional[float]  # None when exp(log_value) overflows
    saddle: SaddlePoint

    @property
    def overflowed(self) -> bool:
        return self.linear_value is None


@dataclass(frozen=True)
class RemainderClass:
    kind: str  # "power", "log" or "constant"
    exponent: Optional[float] = None

    def __str__(self):
        if self.kind == "power":
            return f"O(x^{self.exponent:g})"
        return "O(ln x)" if self.kind == "log" else "O(1)"


@dataclass(frozen=True)
class EntropyEstimate:
    x: float
    leading: float
    log_correction: Optional[float]
    remainder_class: RemainderClass

    @property
    def value(self) -> float:
        return self.leading + (self.log_correction or 0.0)


def beta_leading(params: SemigroupParams, x: float) -> float:
    """Leading-order saddle point ``1 + (rho Gamma(gamma+2))**(1/(gamma+2)) x**(-1/(gamma+2))``."""
    if not x > 0:
        raise ValueError("x must be positive")
    g2 = params.gamma + 2.0
    c = (params.rho * gamma_function(g2)) ** (1.0 / g2)
    return 1.0 + c * x ** (-1.0 / g2)


def kappa_bound(params: SemigroupParams) -> KappaBound:
    g2 = 2.0 + params.gamma
    strict_part = params.delta / g2
    closed_part = (1.0 + params.gamma) / g2
    # on a tie the strict inequality is the binding one
    if strict_part <= closed_part:
        return KappaBound(strict_part, True)
    return KappaBound(closed_part, False)


def _log_estimate(x, beta, z):
    return x * beta + z.log_zeta - 0.5 * math.log(2.0 * math.pi * z.d2log)


def _finish(model, x, beta, f, z, iterations):
    if beta - 1.0 < SIGMA_WARN:
        warnings.warn(
            f"saddle point beta - 1 = {beta - 1.0:.3g} is close to the pole",
            SigmaCostWarning,
            stacklevel=3,
        )
    return SaddlePoint(
        x, beta, f, z, _log_estimate(x, beta, z), kappa_bound(model.params).value, iterations
    )


def solve_beta(
    model: SemigroupModel,
    k: Occupancy,
    x: float,
    tol: float = 1e-10,
    max_primes: int = DEFAULT_MAX_PRIMES,
    max_iter: int = MAX_ITER,
) -> SaddlePoint:
    """Solve ``x + (ln zeta_k)'(beta) = 0`` for ``beta > 1``.

    ``(ln zeta_k)'`` is increasing, so a bracket is grown around the
    leading-order guess and then shrunk by Newton steps, falling back to
    bisection whenever a step leaves the bracket.  Converged when
    ``|residual| <= tol * max(1, x)``.
    """
    k = as_occupancy(k)
    if not x > 0:
        raise BracketFailure(f"the saddle equation has no root for x = {x!r} <= 0")
    ztol = tol / 10.0
    target = tol * max(1.0, x)

    def evaluate(beta):
        z = log_zeta(model, k, beta, ztol, max_primes, warn=False)
        return x + z.dlog, z

    beta = min(beta_leading(model.params, x), BETA_MAX / 2)
    f, z = evaluate(beta)
    lo = hi = None
    if f < 0:
        lo = (beta, f)
    else:
        hi = (beta, f)

    step = beta - 1.0
    while hi is None:
        step *= 2.0
        b = 1.0 + step
        if b > BETA_MAX:
            raise BracketFailure(f"no sign change of x + dlog in (1, {BETA_MAX}] for x={x!r}")
        fb, zb = evaluate(b)
        if fb < 0:
            lo, beta, f, z = (b, fb), b, fb, zb
        else:
            hi, beta, f, z = (b, fb), b, fb, zb
    step = beta - 1.0
    while lo is None:
        step /= 2.0
        b = 1.0 + step
        if step < 1e-12:
            raise BracketFailure(f"no sign change of x + dlog near sigma = 1 for x={x!r}")
        fb, zb = evaluate(b)
        if fb >= 0:
            hi, beta, f, z = (b, fb), b, fb, zb
        else:
            lo, beta, f, z = (b, fb), b, fb, zb

    for it in range(1, max_iter + 1):
        if abs(f) <= target:
            return _finish(model, x, beta, f, z, it)
        cand = beta - f / z.d2log
        if not lo[0] < cand < hi[0]:
            cand = 0.5 * (lo[0] + hi[0])
        if cand in (lo[0], hi[0]):
            break
        beta = cand
        f, z = evaluate(beta)
        if f < 0:
            lo = (beta, f)
        else:
            hi = (beta, f)
    if abs(f) <= target:
        return _finish(model, x, beta, f, z, max_iter)
    raise ConvergenceFailure(
        f"saddle solve for x={x!r} stalled with residual {f!r}", (lo[0], hi[0])
    )


def asymptotic_count(
    model: SemigroupModel,
    k: Occupancy,
    x: float,
    tol: float = 1e-10,
    max_primes: int = DEFAULT_MAX_PRIMES,
) -> AsymptoticCount:
    """Main term ``e**(x beta) zeta(beta) / sqrt(2 pi (ln zeta)''(beta))``, log space first."""
    sp = solve_beta(model, k, x, tol, max_primes)
    try:
        linear = math.exp(sp.log_estimate)
    except OverflowError:
        linear = None
    return AsymptoticCount(sp.log_estimate, linear, sp)


def log_asymptotic(params: SemigroupParams, x: float) -> EntropyEstimate:
    """Logarithmic asymptotics of the count; independent of the occupancy bound."""
    if not x > 0:
        raise ValueError("x must be positive")
    g = params.gamma
    g2 = g + 2.0
    leading = x + 2.0 * (params.rho * gamma_function(g2)) ** (1.0 / g2) * x ** ((g + 1.0) / g2)
    edge = 1.0 + g
    if math.isclose(params.delta, edge, rel_tol=1e-12, abs_tol=1e-12):
        return EntropyEstimate(x, leading, None, RemainderClass("log"))
    if params.delta < edge:
        return EntropyEstimate(
            x, leading, None, RemainderClass("power", (edge - params.delta) / g2)
        )
    correction = -0.5 * (g + 3.0) / g2 * math.log(x)
    return EntropyEstimate(x, leading, correction, RemainderClass("constant"))
