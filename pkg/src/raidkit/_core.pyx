# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Semantics mirror ``_fallback`` draw for draw."""
import numpy as np
cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport log, INFINITY
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from numpy.random cimport bitgen_t

from .algebra import INV as _INV, MUL as _MUL

cnp.import_array()

cdef unsigned char MULT[256][256]
cdef unsigned char INVT[256]

def _init_tables():
    cdef int a, b
    mul = np.asarray(_MUL, dtype=np.uint8)
    inv = np.asarray(_INV, dtype=np.uint8)
    for a in range(256):
        INVT[a] = inv[a]
        for b in range(256):
            MULT[a][b] = mul[a, b]

_init_tables()


cdef bint _full_rank(unsigned char *m, int rows, int e) nogil:
    cdef int c, r, i, j, piv
    cdef unsigned char f, inv
    cdef int rank = 0
    for c in range(e):
        piv = -1
        for r in range(rank, rows):
            if m[r * e + c] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != rank:
            for j in range(e):
                f = m[piv * e + j]
                m[piv * e + j] = m[rank * e + j]
                m[rank * e + j] = f
        inv = INVT[m[rank * e + c]]
        for j in range(c, e):
            m[rank * e + j] = MULT[inv][m[rank * e + j]]
        for i in range(rank + 1, rows):
            f = m[i * e + c]
            if f != 0:
                for j in range(c, e):
                    m[i * e + j] ^= MULT[f][m[rank * e + j]]
        rank += 1
    return True


def batch_full_rank(h, patterns, chunk=None):
    cdef cnp.uint8_t[:, ::1] hv = np.ascontiguousarray(h, dtype=np.uint8)
    cdef cnp.int64_t[:, ::1] pv = np.ascontiguousarray(patterns, dtype=np.int64)
    cdef Py_ssize_t npat = pv.shape[0]
    cdef int e = pv.shape[1] if pv.ndim == 2 else 0
    cdef int rows = hv.shape[0]
    out = np.zeros(npat, dtype=bool)
    cdef cnp.uint8_t[::1] ov = out.view(np.uint8)
    cdef Py_ssize_t p
    cdef int r, j
    cdef unsigned char *buf
    if npat == 0:
        return out
    if e == 0:
        out[:] = True
        return out
    if e > rows:
        return out
    buf = <unsigned char *>malloc(rows * e)
    try:
        with nogil:
            for p in range(npat):
                for r in range(rows):
                    for j in range(e):
                        buf[r * e + j] = hv[r, pv[p, j]]
                ov[p] = _full_rank(buf, rows, e)
    finally:
        free(buf)
    return out


cdef inline bitgen_t *_bitgen(rng) except NULL:
    capsule = rng.bit_generator.capsule
    return <bitgen_t *>PyCapsule_GetPointer(capsule, "BitGenerator")


def race_one(up, down, rng):
    cdef double[::1] a = np.ascontiguousarray(up, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(down, dtype=np.float64)
    cdef bitgen_t *bg = _bitgen(rng)
    cdef int top = a.shape[0]
    cdef int i = 0
    cdef double t = 0.0, r
    cdef long events = 0
    with rng.bit_generator.lock, nogil:
        while i < top:
            r = a[i] + b[i]
            t += -log(1.0 - bg.next_double(bg.state)) / r
            if bg.next_double(bg.state) * r < a[i]:
                i += 1
            else:
                i -= 1
            events += 1
    return t, events


def hraid_one(int n_nodes, int m_disks, int k, int ell, double delta, double gamma,
              double mu, bint restripe, bint live_ctrl, long guard, rng):
    cdef bitgen_t *bg = _bitgen(rng)
    cdef int d_total = n_nodes * m_disks
    cdef cnp.int32_t[::1] ctrl = np.ones(n_nodes, dtype=np.int32)
    cdef cnp.int32_t[::1] ctrl_dead = np.zeros(n_nodes, dtype=np.int32)
    cdef cnp.int32_t[::1] nfail = np.zeros(n_nodes, dtype=np.int32)
    cdef cnp.int32_t[::1] disks = np.ones(d_total, dtype=np.int32)
    cdef int n_c = 0, n_n = 0, n_d = 0, n, j, t, alive_ctrl
    cdef long tries, worst = 0
    cdef double clock = 0.0, rc, rd, rr, omega, x
    cdef int fcd = -2
    with rng.bit_generator.lock, nogil:
        while True:
            alive_ctrl = (n_nodes - n_n) if live_ctrl else (n_nodes - n_c)
            rc = alive_ctrl * gamma
            rd = (d_total - n_d) * delta
            rr = n_n * mu if restripe else 0.0
            omega = rc + rd + rr
            if omega <= 0.0:
                clock = INFINITY
                fcd = -1
                break
            clock += -log(1.0 - bg.next_double(bg.state)) / omega
            x = bg.next_double(bg.state) * omega
            tries = 0
            if x < rc:
                while True:
                    n = <int>(n_nodes * bg.next_double(bg.state))
                    tries += 1
                    if tries > guard:
                        break
                    if ctrl[n] == 1:
                        break
                if tries > guard:
                    fcd = -3
                    break
                ctrl[n] = 0
                ctrl_dead[n] = 1
                n_c += 1
                n_n += 1
                n_d += m_disks - nfail[n]
                for j in range(m_disks):
                    disks[n * m_disks + j] = 0
                nfail[n] = m_disks
                if n_n > k:
                    fcd = 0
                    if tries > worst:
                        worst = tries
                    break
            elif x < rc + rd:
                while True:
                    t = <int>(d_total * bg.next_double(bg.state))
                    tries += 1
                    if tries > guard:
                        break
                    if disks[t] == 1:
                        break
                if tries > guard:
                    fcd = -3
                    break
                n = t // m_disks
                disks[t] = 0
                n_d += 1
                nfail[n] += 1
                if nfail[n] > ell:
                    ctrl[n] = 0
                    n_d += m_disks - nfail[n]
                    for j in range(m_disks):
                        disks[n * m_disks + j] = 0
                    nfail[n] = m_disks
                    n_n += 1
                    if n_n > k:
                        fcd = 1
                        if tries > worst:
                            worst = tries
                        break
            else:
                while True:
                    n = <int>(n_nodes * bg.next_double(bg.state))
                    tries += 1
                    if tries > guard:
                        break
                    if ctrl[n] == 0:
                        break
                if tries > guard:
                    fcd = -3
                    break
                ctrl[n] = 1
                if ctrl_dead[n]:
                    ctrl_dead[n] = 0
                    n_c -= 1
                n_n -= 1
                n_d -= m_disks
                nfail[n] = 0
                for j in range(m_disks):
                    disks[n * m_disks + j] = 1
            if tries > worst:
                worst = tries
    if fcd == -3:
        raise RuntimeError("rejection guard exceeded")
    return clock, fcd, n_c, n_d, worst
