"""Logarithm of the power-free zeta function and its sigma-derivatives.

The Euler product gives, per prime of degree ``lam``,

    ln((1 - e**(-k sigma lam)) / (1 - e**(-sigma lam)))

with the numerator absent for ``k = inf``.  Sums run over primes in
increasing degree with exactly rounded summation (``math.fsum``).

Two tail treatments are available for the log model:

``"closed"``
    Sum a short explicit prefix and evaluate the remaining primes in closed
    form.  Expanding ``-ln(1 - u) = sum(u**m / m)`` turns the tail into
    Hurwitz zeta values ``zeta(m sigma, N + 1 + rho)`` and their
    s-derivatives; the m-series is cut once a geometric bound certifies the
    remainder.  Works for any ``sigma > 1``.
``"bound"``
    Plain truncation: keep summing until the integral-test bound on the
    omitted primes drops below ``tol``.  Only practical away from
    ``sigma = 1``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import mpmath
import numpy as np
from scipy import special

from .errors import TruncationBudgetExceeded
from .exact import INF, Occupancy, as_occupancy
from .semigroup import LOG_MODEL, SemigroupModel, prime_prefix

DEFAULT_MAX_PRIMES = 10**8
SIGMA_WARN = 1e-4
MP_DPS = 30
_CHUNK = 1 << 20


class SigmaCostWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class ZetaEval:
    """``ln zeta(sigma)``, its first two derivatives and a shared error bound."""

    sigma: float
    log_zeta: float
    dlog: float
    d2log: float
    n_terms: int
    tail_bound: float


def _neg_log1m_exp(y):
    """``-ln(1 - e**-y)`` for ``y > 0``."""
    if y < math.log(2.0):
        return -math.log(-math.expm1(-y))
    return -math.log1p(-math.exp(-y))


def _inv_expm1(y):
    """``1 / (e**y - 1)`` without overflow."""
    return math.exp(-y) / -math.expm1(-y)


def _bose_einstein_sq(y):
    """``e**y / (e**y - 1)**2``."""
    e = math.exp(-y)
    return e / math.expm1(-y) ** 2


def log_zeta_terms(lam: float, k: Occupancy, sigma: float) -> Tuple[float, float, float]:
    """One Euler factor: its logarithm and the first two sigma-derivatives."""
    if not lam > 0:
        raise ValueError("prime degree must be positive")
    if not sigma > 1:
        raise ValueError("sigma must exceed 1")
    y = sigma * lam
    t0 = _neg_log1m_exp(y)
    t1 = -lam * _inv_expm1(y)
    t2 = lam * lam * _bose_einstein_sq(y)
    if k != INF:
        ky = k * y
        t0 -= _neg_log1m_exp(ky)
        t1 += k * lam * _inv_expm1(ky)
        t2 -= (k * lam) ** 2 * _bose_einstein_sq(ky)
    return t0, t1, t2


def _terms_array(lam: np.ndarray, k: Occupancy, sigma: float):
    y = sigma * lam
    e = np.exp(-y)
    em1 = -np.expm1(-y)
    t0 = -np.log1p(-e)
    t1 = -lam * e / em1
    t2 = lam * lam * e / (em1 * em1)
    if k != INF:
        ky = k * y
        ek = np.exp(-ky)
        ekm1 = -np.expm1(-ky)
        t0 += np.log1p(-ek)
        t1 += k * lam * ek / ekm1
        t2 -= (k * lam) ** 2 * ek / (ekm1 * ekm1)
    return t0, t1, t2


def _explicit_sums(lams, k, sigma):
    parts = ([], [], [])
    for lam in lams:
        for acc, t in zip(parts, log_zeta_terms(lam, k, sigma)):
            acc.append(t)
    return tuple(math.fsum(p) for p in parts)


def upper_incomplete_gamma(a: float, z: float) -> float:
    """Non-normalized ``Gamma(a, z) = integral_z^inf t**(a-1) e**-t dt``."""
    return float(special.gammaincc(a, z) * special.gamma(a))


def log_model_tail_bound(rho: float, sigma: float, n: int) -> float:
    """Integral-test bound on the three tails of the log model past prime ``n``.

    ``lam**j e**(-sigma lam)`` decreases in the prime index once
    ``lam >= j / sigma``; below that the bound is reported as infinite.
    """
    lam_n = math.log1p(n / rho) if n > 0 else 0.0
    if lam_n * sigma < 2.0:
        return math.inf
    u = math.exp(-sigma * math.log1p((n + 1) / rho))
    s1 = sigma - 1.0
    z = s1 * lam_n
    bound = 0.0
    for j in range(3):
        integral = rho * upper_incomplete_gamma(j + 1, z) / s1 ** (j + 1)
        bound = max(bound, integral / (1.0 - u) ** max(j, 1))
    return bound


def generic_tail_bound(model: SemigroupModel, sigma: float, start: float) -> float:
    """Tail bound for primes of degree above ``start`` under the (rho, gamma) law.

    The prime density is majorized by ``(1 + C) rho (1 + |gamma|) u**max(gamma, 0) e**u``
    with ``C`` the model's error constant, so the bound is conditional on it.
    """
    p = model.params
    s1 = sigma - 1.0
    lo = max(start, 1.0)
    pow_ = max(p.gamma, 0.0)
    u = math.exp(-sigma * lo)
    scale = (1.0 + model.error_const) * p.rho * (1.0 + abs(p.gamma))
    bound = 0.0
    for j in range(3):
        a = pow_ + j + 1
        integral = scale * upper_incomplete_gamma(a, s1 * lo) / s1**a
        bound = max(bound, integral / (1.0 - u) ** max(j, 1))
    return bound


def _hurwitz_moments(rho, q, s):
    """``sum_{n >= q - rho} lam_n**j e**(-s lam_n)`` for j = 0, 1, 2 (mpmath)."""
    z0 = mpmath.zeta(s, q)
    z1 = -mpmath.zeta(s, q, 1)
    z2 = mpmath.zeta(s, q, 2)
    lr = mpmath.log(rho)
    scale = mpmath.power(rho, s)
    return (
        scale * z0,
        scale * (z1 - lr * z0),
        scale * (z2 - 2 * lr * z1 + lr * lr * z0),
    )


def _closed_tail(rho, k, sigma, n, tol):
    """Primes ``n + 1, n + 2, ...`` of the log model in closed form.

    Returns the three tail sums and, per sum, a certified bound on the error
    from cutting the m-series.  The cut happens once every bound is below
    ``tol * max(1, |tail sum|)``.
    """
    with mpmath.workdps(MP_DPS):
        rho_m = mpmath.mpf(rho)
        sig = mpmath.mpf(sigma)
        q = mpmath.mpf(n + 1) + rho_m
        u = float(mpmath.power(rho_m / q, sig))  # largest omitted e**(-sigma lam)
        base = [float(a) for a in _hurwitz_moments(rho_m, q, sig)]
        finite = k != INF
        uk = u**k if finite else 0.0
        base_k = [float(a) for a in _hurwitz_moments(rho_m, q, k * sig)] if finite else [0.0] * 3

        def remainder(m):
            # geometric majorants of the m' > m part, from the m = 1 moments
            r = [
                u**m / (1 - u) * base[0],
                u**m / (1 - u) * base[1],
                (m + 1) * u**m / (1 - u) ** 2 * base[2],
            ]
            if finite:
                r[0] += uk**m / (1 - uk) * base_k[0]
                r[1] += k * uk**m / (1 - uk) * base_k[1]
                r[2] += k * k * (m + 1) * uk**m / (1 - uk) ** 2 * base_k[2]
            return r

        sums = [mpmath.mpf(0)] * 3
        m = 0
        while True:
            m += 1
            a = _hurwitz_moments(rho_m, q, m * sig)
            sums[0] += a[0] / m
            sums[1] -= a[1]
            sums[2] += m * a[2]
            if finite:
                b = _hurwitz_moments(rho_m, q, m * k * sig)
                sums[0] -= b[0] / m
                sums[1] += k * b[1]
                sums[2] -= m * k * k * b[2]
            rem = remainder(m)
            tails = [float(v) for v in sums]
            if all(r <= tol * max(1.0, abs(t)) for r, t in zip(rem, tails)) or m >= 200:
                break
        bounds = [r + 10.0 ** (6 - MP_DPS) * abs(t) for r, t in zip(rem, tails)]
        return tuple(tails), bounds


def _prefix_length(rho, sigma, cap):
    # enough explicit primes that the first omitted one has e**(-sigma lam) <~ 1e-3
    n = math.ceil(rho * 10.0 ** (3.0 / sigma))
    return max(1, min(cap, max(16, min(n, 4096))))


def log_zeta(
    model: SemigroupModel,
    k: Occupancy,
    sigma: float,
    tol: float = 1e-12,
    max_primes: int = DEFAULT_MAX_PRIMES,
    tail: str = "closed",
    warn: bool = True,
) -> ZetaEval:
    """Evaluate ``ln zeta_k(sigma)`` and its first two derivatives.

    ``tol`` is a mixed tolerance: each value is certified to within
    ``tol * max(1, |value|)``, since near ``sigma = 1`` the values outgrow
    what an absolute tolerance can resolve in double precision.
    ``tail_bound`` is an absolute bound holding for all three values at once
    (floating-point rounding of the explicit prefix aside).  Raises
    :class:`TruncationBudgetExceeded` when certification fails within
    ``max_primes`` primes.
    """
    k = as_occupancy(k)
    if not sigma > 1:
        raise ValueError("sigma must exceed 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if tail not in ("closed", "bound"):
        raise ValueError(f"unknown tail mode {tail!r}")
    if warn and sigma - 1.0 < SIGMA_WARN:
        warnings.warn(
            f"sigma - 1 = {sigma - 1.0:.3g}: cost grows like exp(1 / (sigma - 1))",
            SigmaCostWarning,
            stacklevel=2,
        )

    if model.kind != LOG_MODEL:
        s0, s1, s2 = _explicit_sums(model.degrees, k, sigma)
        bound = 0.0
        if not model.complete:
            start = model.degrees[-1] if model.degrees else 0.0
            bound = generic_tail_bound(model, sigma, start)
            if bound > tol:
                raise TruncationBudgetExceeded(
                    f"explicit prefix leaves a tail bound {bound:.3g} > tol {tol:.3g}",
                    bound,
                )
        return ZetaEval(sigma, s0, s1, s2, len(model.degrees), bound)

    rho = model.rho
    if tail == "closed":
        n = _prefix_length(rho, sigma, max_primes)
        s0, s1, s2 = _explicit_sums(prime_prefix(model, n), k, sigma)
        tails, bounds = _closed_tail(rho, k, sigma, n, tol / 10.0)
        totals = [math.fsum((h, t)) for h, t in zip((s0, s1, s2), tails)]
        bound = max(bounds)
        if any(b > tol * max(1.0, abs(v)) for b, v in zip(bounds, totals)):
            raise TruncationBudgetExceeded(
                f"closed-form tail error {bound:.3g} exceeds tol {tol:.3g}", bound
            )
        return ZetaEval(sigma, *totals, n, bound)
    return _log_zeta_truncated(rho, k, sigma, tol, max_primes)


def _log_zeta_truncated(rho, k, sigma, tol, max_primes):
    parts = ([], [], [])
    n = 0
    bound = math.inf
    while n < max_primes:
        hi = min(max_primes, n + _CHUNK if n else 4096)
        idx = np.arange(n + 1, hi + 1, dtype=np.float64)
        lam = np.log1p(idx / rho)
        for acc, t in zip(parts, _terms_array(lam, k, sigma)):
            acc.append(math.fsum(t))
        n = hi
        bound = log_model_tail_bound(rho, sigma, n)
        scale = max(1.0, min(abs(math.fsum(p)) for p in parts))
        if bound <= tol * scale:
            break
    else:
        raise TruncationBudgetExceeded(
            f"tail bound {bound:.3g} still above tol {tol:.3g} after {n} primes", bound
        )
    return ZetaEval(sigma, *(math.fsum(p) for p in parts), n, bound)
