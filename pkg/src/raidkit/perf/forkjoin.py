"""Fork/join response time: expected maximum of n parallel branch times."""
import math

from .quad import adaptive_simpson


def harmonic(n):
    return sum(1.0 / i for i in range(1, n + 1))


def _erlang_cdf(t, k, mu):
    x = mu * t
    term, acc = 1.0, 1.0
    for j in range(1, k):
        term *= x / j
        acc += term
    return 1.0 - math.exp(-x) * acc


def expected_max_erlang(n, R, k):
    """E[max] of n iid Erlang-k variables with mean R, by quadrature."""
    mu = k / R
    f = lambda t: 1.0 - _erlang_cdf(t, k, mu) ** n
    return adaptive_simpson(f, 0.0, 50.0 * R, tol=1e-9)


def fj_response(n, rho=0.0, R=None, sigma_R=None, method="max_exp", R2=None, calibrate=False):
    """Mean fork/join response for n branches.

    exact2 and nelson take R as the M/M/1 branch response at load rho
    (nelson scales the two-way value to n); max_exp and max_erlang take R as
    the branch mean; max_evd adds the spread sigma_R."""
    if R is None:
        raise ValueError("R is required")
    if method == "exact2":
        if n != 2:
            raise ValueError("exact2 applies to n = 2 only")
        return (12 - rho) / 8 * R
    if method == "nelson":
        if not 2 <= n <= 32:
            raise ValueError("nelson applies to 2 <= n <= 32")
        r2 = R2 if R2 is not None else (12 - rho) / 8 * R
        h = harmonic(n) / harmonic(2)
        return (h + (1 - h) * 4 / 11 * rho) * r2
    if method == "max_exp":
        return harmonic(n) * R
    if method == "max_evd":
        if sigma_R is None:
            raise ValueError("max_evd needs sigma_R")
        spread = math.sqrt(6) / math.pi * sigma_R * math.log(n)
        if calibrate:
            spread /= 1.27
        return R + spread
    if method == "max_erlang":
        if sigma_R is None:
            raise ValueError("max_erlang needs sigma_R")
        c2 = (sigma_R / R) ** 2
        k = max(1, math.ceil(1.0 / c2 - 1e-12)) if c2 > 0 else 1000
        return expected_max_erlang(n, R, k)
    raise ValueError(f"unknown method {method!r}")


def fj_max_asymmetric2(R1, k1, R2, k2):
    """E[max] of independent Erlang-k1 (mean R1) and Erlang-k2 (mean R2)."""
    if k1 < 1 or k2 < 1:
        raise ValueError("stage counts must be >= 1")
    if R2 == 0:
        return R1
    if R1 == 0:
        return R2
    m1, m2 = k1 / R1, k2 / R2
    s = m1 + m2
    # E[min] = sum_{m<k1} sum_{n<k2} C(m+n, m) m1^m m2^n / s^(m+n+1)
    lm1, lm2, ls = math.log(m1), math.log(m2), math.log(s)
    emin = 0.0
    for m in range(k1):
        for n in range(k2):
            emin += math.exp(math.lgamma(m + n + 1) - math.lgamma(m + 1) - math.lgamma(n + 1)
                             + m * lm1 + n * lm2 - (m + n + 1) * ls)
    return R1 + R2 - emin
