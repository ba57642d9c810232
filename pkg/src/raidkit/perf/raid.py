"""Degraded-mode loads, vacationing-server rebuild and rebuild shortcuts."""
import math

import numpy as np
from dataclasses import dataclass

from .disk import ServiceMoments, Dist, Deterministic, Convolution, seek_dist
from .queues import mg1, UnstableQueueError


def degraded_load(n, g=None, f_r=1.0, means=None, lam=None):
    """Load increase on survivors of a RAID5 array with one failed disk.

    With ``means`` = (read, write, rmw) and ``lam`` the array arrival rate,
    also returns per-class utilizations for a clustered array of group size g.
    """
    if g is None:
        g = n
    if not 2 <= g <= n:
        raise ValueError("need 2 <= g <= n")
    f_w = 1 - f_r
    ratio = n / (n - 1) + ((n - 2) * f_r + (n - 8) * f_w) / ((n - 1) * (f_r + 4 * f_w))
    out = {"alpha": (g - 1) / (n - 1)}
    if means is not None and lam is not None:
        xr, xw, xrmw = means
        out["rho_read"] = lam * f_r / (n - 1) * (n + g - 2) / n * xr
        out["rho_write"] = lam * f_w / (n - 1) * ((g - 2) / n * xr + 2 / n * xw
                                                 + 2 * (n - 2) / n * xrmw)
        out["read_increase"] = 1 + out["alpha"]
    return ratio, out


@dataclass(frozen=True)
class VacationSpec:
    """type1 follows a busy period (seek to the rebuild position plus a
    track read); type2 follows another vacation (one track read)."""
    type1: Dist
    type2: Dist

    def check(self, tol=1e-6):
        """True when each handle's moments agree with its LST derivatives."""
        for d in (self.type1, self.type2):
            m = d.moments()
            got = numeric_lst_moments(d.lst, m.m1)
            for a, b in zip(got, (m.m1, m.m2, m.m3)):
                if abs(a - b) > tol * max(abs(b), 1e-300):
                    return False
        return True

    def mixed_moments(self, lam):
        a, nb = self.type1.lst(lam), self.type2.one_minus_lst(lam)
        m1, m2 = self.type1.moments(), self.type2.moments()
        return m1.mix(nb / (nb + a), m2)

    def mixed_lst(self, s, lam):
        a, nb = self.type1.lst(lam), self.type2.one_minus_lst(lam)
        return (nb * self.type1.lst(s) + a * self.type2.lst(s)) / (nb + a)


def numeric_lst_moments(lst, scale, order=3):
    """First moments from a polynomial fit of the LST near s = 0."""
    h = 0.02 / scale
    u = np.arange(16) * h
    vals = np.array([lst(x) for x in u])
    c = np.polynomial.polynomial.polyfit(u / h, vals, 12)
    return tuple((-1) ** j * math.factorial(j) * c[j] / h ** j for j in range(1, order + 1))


def disk_vacations(g, track_ms=None):
    """Vacation handles of a disk rebuild: seek then a track, or a track."""
    T = g.rotation_ms if track_ms is None else track_ms
    return VacationSpec(Convolution((seek_dist(g), Deterministic(T))), Deterministic(T))


@dataclass(frozen=True)
class VSMResult:
    W: float
    n_track: float
    T_dc: float
    T_cycle: float
    T_rebuild: float
    steps: tuple


def _vsm_step(lam, s, v):
    mix = v.mixed_moments(lam) if lam > 0 else v.type2.moments()
    vr = mix.m2 / (2 * mix.m1)
    if lam == 0:
        return vr, math.inf, 0.0, math.inf, v.type2.mean
    q = mg1(lam, s)
    a = v.type1.lst(lam)
    n_tr = 1 + a / v.type2.one_minus_lst(lam)
    T_dc = (s.m1 + vr) / (1 - q.rho)
    T_cycle = T_dc + 1 / lam
    return q.W + vr, n_tr, T_dc, T_cycle, T_cycle / n_tr


def vsm_rebuild(lam, s, v, n_tracks, k=1):
    """Rebuild under a vacationing server: each idle period reads tracks until
    a request arrives. With k redirection steps, step i runs at load
    (2 - i/k) rho and rebuilds n_tracks/k tracks."""
    rho = lam * s.m1
    steps = []
    total = 0.0
    for i in range(k):
        lam_i = (2 - i / k) * lam
        if lam_i * s.m1 >= 1:
            raise UnstableQueueError(f"step {i} load {(2 - i / k) * rho:.4g} >= 1")
        W, n_tr, T_dc, T_cycle, per_track = _vsm_step(lam_i, s, v)
        total += n_tracks / k * per_track
        steps.append((lam_i, W, n_tr, T_dc, T_cycle))
    W, n_tr, T_dc, T_cycle, _ = _vsm_step(lam, s, v)
    return VSMResult(W, n_tr, T_dc, T_cycle, total, tuple(steps))


def rebuild_shortcuts(kind, **p):
    """beta: T0 / (1 - beta rho) in the units of T0.
    bandwidth: per-disk rebuild bandwidth (bytes/ms) and, given capacity and
    utilized fraction U, the rebuild time in ms."""
    if kind == "beta":
        beta = p.get("beta", 1.75)
        rho = p["rho"]
        if beta * rho >= 1:
            raise UnstableQueueError("beta * rho >= 1")
        return p["T0"] / (1 - beta * rho)
    if kind == "bandwidth":
        lam, x_ru, s_ru = p["lam"], p["x_ru"], p["s_ru"]
        T_R, f = p["T_R"], p.get("f", x_ru / p["T_R"])
        T_dc, x_seek = p.get("T_dc", 0.0), p.get("x_seek", 0.0)
        n_ru = math.inf if lam == 0 else 1.0 / (-math.expm1(-lam * x_ru))
        x_lat = (1 + f * f) * T_R / 2
        if math.isinf(n_ru):
            b_d = s_ru / x_ru
        else:
            b_d = n_ru * s_ru / (T_dc + x_seek + x_lat + n_ru * x_ru)
        out = {"n_ru": n_ru, "latency": x_lat, "bandwidth": b_d}
        if "capacity" in p:
            out["T_rebuild"] = p.get("U", 1.0) * p["capacity"] / b_d
        return out
    raise ValueError(f"unknown kind {kind!r}")


def pcm_vs_vsm(lam, x_ru, W_ru):
    """Probability that a rebuild read is interrupted by an arrival, for a
    vacationing server and a circulating permanent customer."""
    return -math.expm1(-lam * x_ru), -math.expm1(-lam * (x_ru + W_ru))
