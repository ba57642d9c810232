"""Single-server and multi-server queue formulas."""
import math
from dataclasses import dataclass

from .disk import ServiceMoments


class UnstableQueueError(ValueError):
    """Offered load at or above capacity."""


def _check(rho):
    if rho >= 1:
        raise UnstableQueueError(f"utilization {rho:.4g} >= 1")
    if rho < 0:
        raise ValueError("negative load")


def mm1(lam, s):
    """Returns (R, W, rho) for exponential service with mean s.m1 (or a float)."""
    m1 = s.m1 if isinstance(s, ServiceMoments) else float(s)
    rho = lam * m1
    _check(rho)
    R = m1 / (1 - rho)
    return R, R - m1, rho


def erlang_c(m, a):
    """Probability of waiting in M/M/m with offered load a = lam * m1."""
    rho = a / m
    _check(rho)
    term, total = 1.0, 1.0
    for k in range(1, m):
        term *= a / k
        total += term
    last = term * a / m / (1 - rho)
    return last / (total + last)


def mmm(lam, m1, m):
    a = lam * m1
    pw = erlang_c(m, a)
    return m1 + pw * m1 / (m * (1 - a / m))


@dataclass(frozen=True)
class MG1Result:
    W: float
    W2: float
    var_W: float
    R: float
    R2: float
    scv_R: float
    rho: float


def mg1(lam, s):
    """Pollaczek-Khinchine mean and second moment of waiting and response."""
    rho = lam * s.m1
    _check(rho)
    W = lam * s.m2 / (2 * (1 - rho))
    W2 = 2 * W * W + lam * s.m3 / (3 * (1 - rho))
    R = W + s.m1
    R2 = W2 + s.m2 + 2 * W * s.m1
    return MG1Result(W, W2, W2 - W * W, R, R2, (R2 - R * R) / (R * R), rho)


def priority_wait(lam, s_all, rho_high):
    """Mean wait of the high-priority class under nonpreemptive priority:
    the residual service of everything, stretched only by the high class."""
    _check(rho_high)
    return lam * s_all.m2 / (2 * (1 - rho_high))


def percentile_tools(R, p, m1=None):
    """Percentile of an exponential-like response time and the arrival rate
    that keeps that percentile at the given value."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    Rp = -R * math.log1p(-p)
    lam_p = None if m1 is None else 1.0 / m1 + math.log1p(-p) / Rp
    return Rp, lam_p


def lambda_for_percentile(Rp, p, m1):
    """Largest M/M/1 arrival rate whose p-th response percentile is Rp."""
    return 1.0 / m1 + math.log1p(-p) / Rp


def gim1_erlang2(lam, mu):
    """Erlang-2 interarrivals (round-robin split of a Poisson stream) into an
    exponential server: returns (sigma, W)."""
    rho = lam / mu
    _check(rho)
    sigma = 0.5 * (1 + 4 * rho - math.sqrt(1 + 8 * rho))
    return sigma, sigma / (mu * (1 - sigma))


def balanced_example(Lam=1.2, m1=1.0, split=(1 / 3, 2 / 3)):
    """Mean response of two identical M/M/1 disks, balanced versus skewed."""
    Rb = mm1(Lam / 2, m1)[0]
    Ru = sum(f * mm1(f * Lam, m1)[0] for f in split)
    return Rb, Ru
