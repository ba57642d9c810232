"""Latent sector errors: intra-disk redundancy, unrecoverable-failure
probabilities, RAID5/6 MTTDL with sector errors, and scrubbing."""
import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .ctmc import CTMCModel, ctmc_mtta

# burst-length pmf b_1..b_16 of the reference SATA population (mean 1.0291)
DEFAULT_BURST = (0.9812, 0.016, 0.0013, 0.0003, 0.0003, 0.0002, 0.0001, 0.0001,
                 0.0, 0.0001, 0.0, 0.0001, 0.0001, 0.0, 0.0001, 0.0001)


@dataclass(frozen=True)
class LSEParams:
    p_bit: float = 1e-14
    seg_len: int = 128
    interleaves: int = 8
    sector_bits: int = 4096
    burst: tuple = DEFAULT_BURST

    def __post_init__(self):
        if abs(sum(self.burst) - 1.0) > 1e-9:
            raise ValueError("burst pmf must sum to 1")

    @property
    def p_s(self):
        """Sector error probability, linearised as bits * p_bit."""
        return self.sector_bits * self.p_bit

    @property
    def p_s_exact(self):
        return -math.expm1(self.sector_bits * math.log1p(-self.p_bit))

    @property
    def mean_burst(self):
        return sum((j + 1) * b for j, b in enumerate(self.burst))

    @property
    def alpha(self):
        return self.p_s / (self.mean_burst * (1 - self.p_s))

    def G(self, n):
        """P[burst length >= n]."""
        return float(sum(self.burst[n - 1:])) if n >= 1 else 1.0


def binom_tail(n, p, lo):
    """P[Bin(n, p) >= lo], summed term by term (no cancellation)."""
    if lo <= 0:
        return 1.0
    return math.fsum(comb(n, j) * p ** j * (1 - p) ** (n - j) for j in range(lo, n + 1))


def _one_minus_pow(p, e):
    """1 - (1 - p)^e for tiny p."""
    if p <= 0:
        return 0.0
    return -math.expm1(e * math.log1p(-p))


def pseg(scheme, model, p):
    ell, m, ps = p.seg_len, p.interleaves, p.p_s
    if scheme not in ("none", "rs", "spc", "ipc"):
        raise ValueError("unknown scheme %r" % scheme)
    if model == "independent":
        if scheme == "none":
            return _one_minus_pow(ps, ell)
        if scheme == "rs":
            return binom_tail(ell, ps, m + 1)
        if scheme == "spc":
            return binom_tail(ell, ps, 2)
        if ell % m:
            raise ValueError("interleaves must divide the segment length")
        pie = binom_tail(ell // m, ps, 2)
        return _one_minus_pow(pie, m)
    if model != "correlated":
        raise ValueError("model must be independent or correlated")
    B = p.mean_burst
    if scheme == "none":
        return (1 + (ell - 1) / B) * ps
    if scheme == "spc":
        return (1 + ((ell - 2) * p.G(2) - 1) / B) * ps
    # rs and ipc share the same first-order term
    s = sum(p.G(j) for j in range(1, m + 1))
    return (1 + ((ell - m - 1) * p.G(m + 1) - s) / B) * ps


def segments_per_disk(capacity, p):
    return capacity / (p.seg_len * p.sector_bits / 8)


def puf(n, k_failed, p_seg, p, capacity):
    """Probability the rebuild of an array of n disks with k_failed failed
    hits an unreadable segment on one of the n - k_failed survivors."""
    if k_failed < 1:
        raise ValueError("k_failed must be >= 1")
    e = (n - k_failed) * segments_per_disk(capacity, p)
    return _one_minus_pow(p_seg, e)


def puf_raid6_single(n, p_seg, p, capacity):
    """Rebuild of one failed disk in RAID6 fails when a segment has two or
    more bad peers among the n - 1 survivors."""
    recf = binom_tail(n - 1, p_seg, 2)
    return _one_minus_pow(recf, segments_per_disk(capacity, p))


def _check_rates(*xs):
    if any(x <= 0 for x in xs):
        raise ValueError("rates must be positive")


def mttdl_raid5_lse(n, delta, mu, p_uf):
    _check_rates(delta, mu)
    return ((2 * n - 1) * delta + mu) / (n * delta * ((n - 1) * delta + mu * p_uf))


def mttdl_raid6_lse(n, delta, mu1, mu2, p_uf_r, p_uf2):
    _check_rates(delta, mu1, mu2)
    V = ((n - 1) * delta + mu1 * p_uf_r) * ((n - 2) * delta + mu2 * p_uf2) + mu1 * mu2 * p_uf_r * (1 - p_uf2)
    t0 = ((n - 1) * delta + mu1) * ((n - 2) * delta + mu2) / (n * delta * V)
    t1 = ((n - 2) * delta + mu2) / V
    t2 = (n - 1) * delta / V
    return t0 + t1 + t2


def mttdl_lse(level, n, delta, p_uf, mu1, mu2=None):
    """level raid5: p_uf is P_uf^(1); raid6: p_uf = (P_uf^r, P_uf^(2))."""
    if level == "raid5":
        return mttdl_raid5_lse(n, delta, mu1, p_uf)
    if level == "raid6":
        pr, p2 = p_uf
        return mttdl_raid6_lse(n, delta, mu1, mu2 if mu2 is not None else mu1, pr, p2)
    raise ValueError("level must be raid5 or raid6")


def raid5_lse_chain(n, delta, mu, p_uf):
    st = ["S0", "S1", "DF", "UF"]
    return CTMCModel.from_transitions(st, [
        ("S0", "S1", n * delta), ("S1", "S0", mu * (1 - p_uf)),
        ("S1", "DF", (n - 1) * delta), ("S1", "UF", mu * p_uf)], ["DF", "UF"])


def raid6_lse_chain(n, delta, mu1, mu2, p_uf_r, p_uf2):
    st = ["S0", "S1", "S2", "DF", "UF"]
    return CTMCModel.from_transitions(st, [
        ("S0", "S1", n * delta), ("S1", "S0", mu1 * (1 - p_uf_r)), ("S1", "UF", mu1 * p_uf_r),
        ("S1", "S2", (n - 1) * delta), ("S2", "S0", mu2 * (1 - p_uf2)), ("S2", "UF", mu2 * p_uf2),
        ("S2", "DF", (n - 2) * delta)], ["DF", "UF"])


def scrub_error_prob(kind, p_e, h, T_s):
    if h <= 0 or T_s <= 0:
        raise ValueError("h and T_s must be positive")
    x = h * T_s
    if kind == "deterministic":
        # 1 - (1 - e^-x)/x, written to stay accurate for small x
        f = 1.0 + math.expm1(-x) / x if x > 1e-5 else x / 2 - x * x / 6 + x ** 3 / 24
        return f * p_e
    if kind == "exponential":
        return x / (1 + x) * p_e
    raise ValueError("kind must be deterministic or exponential")


def scrub_error_prob_approx(kind, p_e, h, T_s):
    x = h * T_s
    return (x / 2 if kind == "deterministic" else x) * p_e


def ioe(kb, per_kb=50.0):
    """I/O equivalents of a k KB transfer."""
    return 1.0 + kb / per_kb


class InfeasibleLoadError(ValueError):
    pass


def sigma_max(k_kb, r_w, p, t_seek):
    hat = 1.0 / (ioe(k_kb) * t_seek)
    return hat / (1 + (1 + 2 * p) * r_w)


def scrub_min_period(k_kb, S_D, G_S, r_w, sigma, p, t_seek, sector_kb=0.5):
    """Smallest scrub period (in the time unit of t_seek and 1/sigma) that
    leaves user load sigma feasible.  S_D and G_S count sectors."""
    smax = sigma_max(k_kb, r_w, p, t_seek)
    if sigma >= smax:
        raise InfeasibleLoadError("sigma=%g >= sigma_max=%g" % (sigma, smax))
    return (S_D * ioe(G_S * sector_kb)) / ((1 + (1 + 2 * p) * r_w) * G_S * ioe(k_kb) * (smax - sigma))
