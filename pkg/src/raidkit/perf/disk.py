"""Disk service-time components: seek distance, seek characteristic,
rotational latency and (zoned) transfer time."""
import json
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ServiceMoments:
    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        if self.m2 < self.m1 ** 2 * (1 - 1e-12) - 1e-15:
            raise ValueError("second moment below squared mean")

    @property
    def variance(self):
        return self.m2 - self.m1 ** 2

    @property
    def scv(self):
        return self.variance / self.m1 ** 2

    @classmethod
    def exponential(cls, mean):
        return cls(mean, 2 * mean ** 2, 6 * mean ** 3)

    @classmethod
    def deterministic(cls, x):
        return cls(x, x * x, x ** 3)

    def __add__(self, o):
        """Moments of the sum of independent variables."""
        return ServiceMoments(self.m1 + o.m1, self.m2 + 2 * self.m1 * o.m1 + o.m2,
                              self.m3 + 3 * self.m2 * o.m1 + 3 * self.m1 * o.m2 + o.m3)

    def mix(self, w, o):
        """w * self + (1 - w) * other as a probability mixture."""
        return ServiceMoments(w * self.m1 + (1 - w) * o.m1, w * self.m2 + (1 - w) * o.m2,
                              w * self.m3 + (1 - w) * o.m3)


# --- distribution handles (moments plus LST at real s >= 0) ---------------

class Dist:
    def moments(self):
        raise NotImplementedError

    def lst(self, s):
        raise NotImplementedError

    def one_minus_lst(self, s):
        """1 - V*(s) without cancellation at small s."""
        m = self.moments()
        x = s * m.m1
        if x < 1e-4:
            return s * m.m1 - s * s * m.m2 / 2 + s ** 3 * m.m3 / 6
        return 1.0 - self.lst(s)

    @property
    def mean(self):
        return self.moments().m1


@dataclass(frozen=True)
class Deterministic(Dist):
    x: float

    def moments(self):
        return ServiceMoments.deterministic(self.x)

    def lst(self, s):
        return math.exp(-s * self.x)

    def one_minus_lst(self, s):
        return -math.expm1(-s * self.x)


@dataclass(frozen=True)
class Exponential(Dist):
    mean_: float

    def moments(self):
        return ServiceMoments.exponential(self.mean_)

    def lst(self, s):
        return 1.0 / (1.0 + s * self.mean_)


@dataclass(frozen=True)
class Uniform(Dist):
    a: float
    b: float

    def moments(self):
        a, b = self.a, self.b
        m = lambda k: (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))
        return ServiceMoments(m(1), m(2), m(3))

    def lst(self, s):
        if s == 0:
            return 1.0
        return (math.exp(-s * self.a) - math.exp(-s * self.b)) / (s * (self.b - self.a))


@dataclass(frozen=True)
class Discrete(Dist):
    values: tuple
    probs: tuple

    def moments(self):
        v = np.asarray(self.values, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        return ServiceMoments(float(p @ v), float(p @ v ** 2), float(p @ v ** 3))

    def lst(self, s):
        v = np.asarray(self.values, dtype=float)
        return float(np.asarray(self.probs) @ np.exp(-s * v))


@dataclass(frozen=True)
class Convolution(Dist):
    parts: tuple

    def moments(self):
        out = ServiceMoments(0.0, 0.0, 0.0)
        for p in self.parts:
            out = out + p.moments()
        return out

    def lst(self, s):
        return math.prod(p.lst(s) for p in self.parts)


# --- seek distance ----------------------------------------------------------

def seek_pmf(C, p_stay=None):
    """Seek-distance pmf over 0..C-1: arm stays with probability p, otherwise
    the distance d >= 1 has weight 2(C-d)."""
    if p_stay is None:
        p_stay = 1.0 / C
    if not 0 <= p_stay <= 1:
        raise ValueError("p_stay must be a probability")
    d = np.arange(C, dtype=float)
    pmf = np.empty(C)
    pmf[0] = p_stay
    if C > 1:
        pmf[1:] = (1 - p_stay) * 2 * (C - d[1:]) / (C * (C - 1))
    return pmf


@dataclass
class DiskGeometry:
    """zones: (cylinders, sectors per track) from the outer edge inwards;
    seek: (a, b) or (a, b, c) for a + b sqrt(d-1) + c (d-1), or a list of
    (time, distance) points interpolated linearly."""
    zones: list
    rotation_ms: float
    seek: tuple
    sector_size: int = 512
    heads: int = 1

    @property
    def cylinders(self):
        return sum(n for n, _ in self.zones)

    def sectors_per_cylinder(self):
        return np.concatenate([np.full(n, c * self.heads, dtype=float) for n, c in self.zones])

    @property
    def capacity(self):
        return float(self.sectors_per_cylinder().sum()) * self.sector_size

    def seek_time(self, d):
        d = np.asarray(d, dtype=float)
        s = self.seek
        if len(s) and isinstance(s[0], (tuple, list)):
            pts = sorted((float(c), float(t)) for t, c in s)
            xs, ts = zip(*pts)
            out = np.interp(d, xs, ts)
        else:
            a, b = s[0], s[1]
            c = s[2] if len(s) > 2 else 0.0
            out = a + b * np.sqrt(np.maximum(d - 1, 0)) + c * np.maximum(d - 1, 0)
        return np.where(d <= 0, 0.0, out)

    def to_json(self):
        return json.dumps({"zones": [list(z) for z in self.zones], "rotation_ms": self.rotation_ms,
                           "seek": [list(x) if isinstance(x, (tuple, list)) else x for x in self.seek],
                           "sector_size": self.sector_size, "heads": self.heads})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        seek = d["seek"]
        seek = tuple(tuple(x) if isinstance(x, list) else x for x in seek)
        zones = [tuple(z) for z in d["zones"]]
        if "rpm" in d:
            d["rotation_ms"] = 60000.0 / d["rpm"]
        return cls(zones, d["rotation_ms"], seek, d.get("sector_size", 512), d.get("heads", 1))


def zbr_seek_pmf(g):
    """Seek-distance pmf when cylinder c is accessed with probability
    proportional to its sector count."""
    s = g.sectors_per_cylinder()
    P = s / s.sum()
    C = len(P)
    # P_D(d) = sum_c P_c [P_(c+d) + P_(c-d)]: an autocorrelation
    full = np.correlate(P, P, mode="full")       # lags -(C-1)..(C-1)
    pmf = full[C - 1:].copy()
    pmf[1:] *= 2
    return pmf


def pmf_mean(pmf):
    return float(np.arange(len(pmf)) @ pmf)


def seek_moments(g, pmf=None):
    if pmf is None:
        pmf = zbr_seek_pmf(g)
    t = g.seek_time(np.arange(len(pmf)))
    return ServiceMoments(float(pmf @ t), float(pmf @ t ** 2), float(pmf @ t ** 3))


def seek_dist(g, pmf=None):
    if pmf is None:
        pmf = zbr_seek_pmf(g)
    t = g.seek_time(np.arange(len(pmf)))
    keep = pmf > 0
    return Discrete(tuple(t[keep]), tuple(pmf[keep]))


def latency_moments(T_R):
    return ServiceMoments(T_R / 2, T_R ** 2 / 3, T_R ** 3 / 4)


def transfer_moments(g, sectors):
    s = g.sectors_per_cylinder() / g.heads
    P = s / s.sum()
    x = sectors * g.rotation_ms / s
    return ServiceMoments(float(P @ x), float(P @ x ** 2), float(P @ x ** 3))


@dataclass(frozen=True)
class WorkloadMix:
    lam: float                # requests per ms
    f_r: float = 1.0
    block_sectors: int = 8

    @property
    def f_w(self):
        return 1.0 - self.f_r


def f_sr(f_r, f_w=None):
    """Fraction of single reads among disk accesses of RAID5 small I/O: a
    read costs one SR, a write two SRs and two SWs."""
    if f_w is None:
        f_w = 1 - f_r
    return (f_r + 2 * f_w) / (f_r + 4 * f_w)


def service_moments(g, w, mode="plain", write=None):
    """Moments of one disk access (seek + latency + transfer).

    raid5_normal mixes single reads with single writes, f_SR from the
    read/write split; ``write`` overrides the single-write moments (default:
    the same as a single read)."""
    sr = seek_moments(g) + latency_moments(g.rotation_ms) + transfer_moments(g, w.block_sectors)
    if mode == "plain":
        return sr
    if mode == "raid5_normal":
        sw = write if write is not None else sr
        return sr.mix(f_sr(w.f_r, w.f_w), sw)
    raise ValueError("mode must be plain or raid5_normal")


def default_geometry():
    """A small two-zone drive used in examples and tests."""
    return DiskGeometry(zones=[(400, 600), (600, 400)], rotation_ms=6.0, seek=(0.6, 0.3, 0.002))
