"""Hamming syndrome decoding, Xorbas implied parity, and small XOR layouts."""
import numpy as np

from ..algebra import MUL, cauchy, mat_mul
from .layout import DATA, Group, StripeLayout


def hamming_locate(syndrome):
    """Failing check positions (powers of two) -> erroneous bit index, or None."""
    pos = list(syndrome)
    if not pos:
        return None
    for p in pos:
        if p <= 0 or p & (p - 1):
            raise ValueError("syndrome positions must be powers of two")
    return sum(pos)


def rs_parity_matrix(k=10, m=4):
    """Cauchy coefficients for a systematic MDS code (rows: parities)."""
    return cauchy(list(range(k, k + m)), list(range(k)))


def xorbas_local_parities(data, rs=None, cprime=None):
    """Local parities S1 (first half of data), S2 (second half) and S3 (over
    the RS parities).  Coefficients c_i are chosen as sum_j c'_j G[j, i], so
    S1 + S2 + S3 vanishes and S3 need not be stored."""
    data = np.asarray(data, dtype=np.uint8)
    k = data.shape[0]
    if rs is None:
        rs = rs_parity_matrix(k, 4)
    rs = np.asarray(rs, dtype=np.uint8)
    m = rs.shape[0]
    if cprime is None:
        cprime = np.ones(m, dtype=np.uint8)
    cprime = np.asarray(cprime, dtype=np.uint8)
    c = mat_mul(cprime[None, :], rs)[0]
    parities = mat_mul(rs, data)
    half = k // 2
    s1 = np.zeros_like(data[0])
    s2 = np.zeros_like(data[0])
    for i in range(k):
        t = MUL[c[i]][data[i]]
        if i < half:
            s1 ^= t
        else:
            s2 ^= t
    s3 = np.zeros_like(data[0])
    for j in range(m):
        s3 ^= MUL[cprime[j]][parities[j]]
    residual = s1 ^ s2 ^ s3
    return {"c": c.tolist(), "S1": s1, "S2": s2, "S3": s3, "residual": residual,
            "ok": not residual.any(), "overhead_stored": (k + m + 3, k),
            "overhead_implied": (k + m + 2, k)}


def _flat_layout(names, groups, name):
    """One-row layout whose columns are the named disks."""
    col = {n: i for i, n in enumerate(names)}
    roles = [[DATA if n.startswith("D") else "parity_row" for n in names]]
    gs = [Group((0, col[p]), [(0, col[m]) for m in mem]) for p, mem in groups]
    labels = {(0, i): n for i, n in enumerate(names)}
    return StripeLayout(1, len(names), roles, gs, name, labels)


def parity_2d_example():
    groups = [("P1", ["D1", "D3", "D8"]), ("P2", ["D1", "D2", "D5", "D9"]),
              ("P3", ["D3", "D4", "D7", "D10"]), ("P4", ["D3", "D4", "D6", "D9"]),
              ("P5", ["D5", "D6", "D7", "D8", "D9"])]
    names = ["D%d" % i for i in range(1, 11)] + ["P%d" % i for i in range(1, 6)]
    return _flat_layout(names, groups, "2d-example")


def parity_3d_example():
    groups = [("P1", ["D1", "D4"]), ("P2", ["D2", "D5"]), ("P3", ["D3", "D6"]),
              ("P4", ["D1", "D3"]), ("P5", ["D1", "D2"]), ("P6", ["D2", "D3"]),
              ("P7", ["D4", "D6"]), ("P8", ["D4", "D5"]), ("P9", ["D5", "D6"])]
    names = ["D%d" % i for i in range(1, 7)] + ["P%d" % i for i in range(1, 10)]
    return _flat_layout(names, groups, "3d-example")
