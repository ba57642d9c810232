"""Small closed forms: LFS cleaning, I/O efficiency, SATF scaling, k-way
seek extremes, delayed-encoding penalty and optimal routing."""
import math

from .queues import UnstableQueueError


def lfs_bso(aso, tol=1e-12):
    """Segment occupancy before cleaning given the average one:
    ASO = (BSO - 1) / ln(BSO), inverted by bisection on (0, 1)."""
    if not 0 < aso < 1:
        raise ValueError("ASO must lie in (0, 1)")
    f = lambda b: (b - 1) / math.log(b) - aso
    lo, hi = 1e-300, 1 - 1e-15
    # f is increasing from -aso towards 1 - aso
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def ioe(k_kb):
    """Transfer time of k KB in units of a 4 KB access."""
    if k_kb < 0:
        raise ValueError("negative size")
    return 1 + k_kb / 50


def satf_scale(x_fcfs, q):
    if q < 1:
        raise ValueError("queue length must be >= 1")
    return x_fcfs / q ** 0.2


def seek_minmax(C, k):
    """Mean of the shortest and longest of k uniform seeks on C cylinders."""
    if k < 1:
        raise ValueError("k must be >= 1")
    I = 1.0
    for j in range(1, k + 1):
        I *= 2 * j / (2 * j + 1)
    return C / (2 * k + 1), C * (1 - I)


def delayed_encoding(phi, r):
    """Penalty when a fraction phi of writes finds the data still replicated
    and the rest pay the relative cost r."""
    if not 0 <= phi <= 1:
        raise ValueError("phi must be a probability")
    return phi + r * (1 - phi)


def _marginal(lam, m1, m2):
    # derivative of lam * R(lam) for an M/G/1 device
    u = 1 - lam * m1
    return m1 + lam * m2 * (2 - lam * m1) / (2 * u * u)


def _rate_at(theta, m1, m2):
    if theta <= m1:
        return 0.0
    lo, hi = 0.0, 1.0 / m1
    for _ in range(200):
        mid = (lo + hi) / 2
        if _marginal(mid, m1, m2) < theta:
            lo = mid
        else:
            hi = mid
    return lo


def optimal_routing(Lam, devices):
    """Split Lam over M/G/1 devices ((m1, m2) pairs) minimizing the mean
    response. Stationarity of the Lagrangian gives equal marginal cost on
    every used device; slow devices may get nothing. Returns (rates, R)."""
    cap = sum(1.0 / m1 for m1, _ in devices)
    if Lam >= cap:
        raise UnstableQueueError("total rate exceeds combined capacity")
    if Lam <= 0:
        return [0.0] * len(devices), min(m1 for m1, _ in devices)
    lo, hi = min(m1 for m1, _ in devices), 1.0
    while sum(_rate_at(hi, *d) for d in devices) < Lam:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if sum(_rate_at(mid, *d) for d in devices) < Lam:
            lo = mid
        else:
            hi = mid
    rates = [_rate_at(hi, *d) for d in devices]
    scale = Lam / sum(rates)
    rates = [r * scale for r in rates]
    R = sum(r * (m1 + r * m2 / (2 * (1 - r * m1))) for r, (m1, m2) in zip(rates, devices)) / Lam
    return rates, R


def misc_formulas(kind, **kw):
    table = {"lfs_bso": lfs_bso, "ioe": ioe, "satf_scale": satf_scale,
             "seek_minmax": seek_minmax, "delayed_encoding": delayed_encoding,
             "optimal_routing": optimal_routing}
    if kind not in table:
        raise ValueError(f"unknown kind {kind!r}")
    return table[kind](**kw)
