"""Reference computations that take a different route from the library code."""
import math

import mpmath

from powerfree.exact import INF


def euler_maclaurin_log_zeta(rho, k, sigma, n_head=500, dps=30):
    """ln zeta_k(sigma) and derivatives for the log model, computed as a plain
    head sum over ``n <= n_head`` plus an Euler-Maclaurin tail.

    The tail integral is done analytically in the degree variable
    ``u = ln((x + rho) / rho)``:  ``integral lam**j e**(-s lam) dx`` becomes
    ``rho Gamma(j + 1, (s - 1) L) / (s - 1)**(j + 1)``, expanded over the
    geometric series of each Euler factor.  Boundary corrections use
    numerical derivatives of the summand.
    """
    with mpmath.workdps(dps):
        s = mpmath.mpf(sigma)
        rho_m = mpmath.mpf(rho)

        def summand(j):
            def f(x):
                lam = mpmath.log((x + rho_m) / rho_m)
                y = s * lam
                if j == 0:
                    v = -mpmath.log(-mpmath.expm1(-y))
                    if k != INF:
                        v += mpmath.log(-mpmath.expm1(-k * y))
                elif j == 1:
                    v = -lam / mpmath.expm1(y)
                    if k != INF:
                        v += k * lam / mpmath.expm1(k * y)
                else:
                    v = lam**2 * mpmath.exp(y) / mpmath.expm1(y) ** 2
                    if k != INF:
                        v -= (k * lam) ** 2 * mpmath.exp(k * y) / mpmath.expm1(k * y) ** 2
                return v
            return f

        heads = []
        for j in range(3):
            f = summand(j)
            heads.append(mpmath.fsum(f(mpmath.mpf(i)) for i in range(1, n_head + 1)))

        L = mpmath.log((n_head + rho_m) / rho_m)

        def moment(j, t):
            # integral_N^inf lam**j e**(-t lam) dx
            a = t - 1
            return rho_m * mpmath.gammainc(j + 1, a * L) / a ** (j + 1)

        integ = [mpmath.mpf(0)] * 3
        for m in range(1, 80):
            integ[0] += moment(0, m * s) / m
            integ[1] -= moment(1, m * s)
            integ[2] += m * moment(2, m * s)
            if k != INF:
                integ[0] -= moment(0, m * k * s) / m
                integ[1] += k * moment(1, m * k * s)
                integ[2] -= m * k * k * moment(2, m * k * s)
        out = []
        for j in range(3):
            f = summand(j)
            N = mpmath.mpf(n_head)
            tail = (integ[j] - f(N) / 2 - mpmath.diff(f, N) / 12
                    + mpmath.diff(f, N, 3) / 720 - mpmath.diff(f, N, 5) / 30240)
            out.append(float(heads[j] + tail))
        return tuple(out)


def brute_dirichlet(degrees, k, sigma):
    """Sum of exp(-sigma * deg) over every occupancy vector of a finite prime
    list with all occupancies < k (k finite), by nested product enumeration."""
    import itertools

    ranges = [range(int(k)) for _ in degrees]
    return math.fsum(
        math.exp(-sigma * sum(n * d for n, d in zip(vec, degrees)))
        for vec in itertools.product(*ranges)
    )


def exhaustive_count(degrees, k, x):
    """Count occupancy vectors by nested loops with per-level caps."""
    import itertools

    caps = []
    for d in degrees:
        top = math.floor(x / d)
        caps.append(top if k == INF else min(int(k) - 1, top))
    return sum(
        1
        for vec in itertools.product(*(range(c + 1) for c in caps))
        if sum(n * d for n, d in zip(vec, degrees)) <= x
    )
