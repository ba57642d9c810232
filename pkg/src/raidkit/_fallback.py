"""Pure-Python/numpy versions of the compiled kernels.

Every function here consumes random numbers in exactly the same order as its
counterpart in ``_core.pyx`` so the two backends give identical results.
"""
import math

import numpy as np

from .algebra import INV, MUL


def batch_full_rank(h, patterns, chunk=4096):
    """For each row of ``patterns`` (column indices into ``h``), report whether
    the selected columns of ``h`` are linearly independent over GF(256)."""
    h = np.asarray(h, dtype=np.uint8)
    patterns = np.asarray(patterns, dtype=np.int64)
    npat = patterns.shape[0]
    out = np.zeros(npat, dtype=bool)
    if npat == 0:
        return out
    e = patterns.shape[1]
    if e == 0:
        out[:] = True
        return out
    rows = h.shape[0]
    if e > rows:
        return out
    for lo in range(0, npat, chunk):
        pat = patterns[lo:lo + chunk]
        m = np.ascontiguousarray(h[:, pat].transpose(1, 0, 2))  # (P, rows, e)
        p = m.shape[0]
        ok = np.ones(p, dtype=bool)
        used = np.zeros((p, rows), dtype=bool)
        ar = np.arange(p)
        for c in range(e):
            col = m[:, :, c]
            cand = (col != 0) & ~used
            has = cand.any(axis=1)
            ok &= has
            piv = np.argmax(cand, axis=1)
            used[ar, piv] |= has
            pv = col[ar, piv]
            inv = INV[pv]
            prow = MUL[inv[:, None], m[ar, piv]]  # normalised pivot rows
            f = col.copy()
            f[ar, piv] = 0
            f[~has] = 0
            m ^= MUL[f[:, :, None], prow[:, None, :]]
        out[lo:lo + chunk] = ok
    return out


class _Uniforms:
    """Sequential uniform draws from a Generator, buffered."""

    def __init__(self, rng, size=256):
        self.rng = rng
        self.size = size
        self.buf = rng.random(size)
        self.i = 0

    def next(self):
        if self.i == self.size:
            self.buf = self.rng.random(self.size)
            self.i = 0
        u = self.buf[self.i]
        self.i += 1
        return float(u)


def race_one(up, down, rng):
    """Simulate a birth-death chain from state 0 until it leaves the top state.

    ``up[i]`` and ``down[i]`` are the rates out of state i; reaching state
    ``len(up)`` is absorption.  Returns (time, number of events).
    """
    u = _Uniforms(rng)
    top = len(up)
    i = 0
    t = 0.0
    events = 0
    while i < top:
        a = up[i]
        r = a + down[i]
        t += -math.log(1.0 - u.next()) / r
        if u.next() * r < a:
            i += 1
        else:
            i -= 1
        events += 1
    return t, events


def hraid_one(n_nodes, m_disks, k, ell, delta, gamma, mu, restripe, live_ctrl, guard, rng):
    """One replication of the hierarchical array failure process.

    Returns (clock, f_cd, n_ctrl_failed, n_disks_failed, max_rejections)."""
    u = _Uniforms(rng)
    d_total = n_nodes * m_disks
    ctrl = [1] * n_nodes
    disks = [[1] * m_disks for _ in range(n_nodes)]
    nfail = [0] * n_nodes
    ctrl_dead = [0] * n_nodes
    n_c = 0
    n_n = 0
    n_d = 0
    clock = 0.0
    worst = 0
    while True:
        alive_ctrl = (n_nodes - n_n) if live_ctrl else (n_nodes - n_c)
        rc = alive_ctrl * gamma
        rd = (d_total - n_d) * delta
        rr = n_n * mu if restripe else 0.0
        omega = rc + rd + rr
        if omega <= 0.0:
            return math.inf, -1, n_c, n_d, worst
        clock += -math.log(1.0 - u.next()) / omega
        x = u.next() * omega
        tries = 0
        if x < rc:
            while True:
                n = int(n_nodes * u.next())
                tries += 1
                if tries > guard:
                    raise RuntimeError("rejection guard exceeded")
                if ctrl[n] == 1:
                    break
            ctrl[n] = 0
            ctrl_dead[n] = 1
            n_c += 1
            n_n += 1
            n_d += m_disks - nfail[n]
            for j in range(m_disks):
                disks[n][j] = 0
            nfail[n] = m_disks
            if n_n > k:
                return clock, 0, n_c, n_d, max(worst, tries)
        elif x < rc + rd:
            while True:
                t = int(d_total * u.next())
                n = t // m_disks
                j = t % m_disks
                tries += 1
                if tries > guard:
                    raise RuntimeError("rejection guard exceeded")
                if disks[n][j] == 1:
                    break
            disks[n][j] = 0
            n_d += 1
            nfail[n] += 1
            if nfail[n] > ell:
                ctrl[n] = 0
                n_d += m_disks - nfail[n]
                for j in range(m_disks):
                    disks[n][j] = 0
                nfail[n] = m_disks
                n_n += 1
                if n_n > k:
                    return clock, 1, n_c, n_d, max(worst, tries)
        else:
            # restripe one failed node back to service
            while True:
                n = int(n_nodes * u.next())
                tries += 1
                if tries > guard:
                    raise RuntimeError("rejection guard exceeded")
                if ctrl[n] == 0:
                    break
            ctrl[n] = 1
            if ctrl_dead[n]:
                ctrl_dead[n] = 0
                n_c -= 1
            n_n -= 1
            n_d -= m_disks
            nfail[n] = 0
            for j in range(m_disks):
                disks[n][j] = 1
        worst = max(worst, tries)
