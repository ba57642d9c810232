"""Horizontal/vertical parity (grid) codes and the merging upcode."""
from fractions import Fraction

import numpy as np

from .layout import COL, DATA, ROW, Group, StripeLayout, check_parities, decode, encode


def hvpc_layout(k1, k2):
    if k1 < 1 or k2 < 1:
        raise ValueError("grid needs k1, k2 >= 1")
    roles = [[DATA] * k2 + [ROW] for _ in range(k1)] + [[COL] * (k2 + 1)]
    groups = [Group((i, k2), [(i, j) for j in range(k2)]) for i in range(k1)]
    groups += [Group((k1, j), [(i, j) for i in range(k1)]) for j in range(k2)]
    corner = (k1, k2)
    # the corner closes both the parity column and the parity row
    groups.append(Group(corner, [(i, k2) for i in range(k1)]))
    groups.append(Group(corner, [(k1, j) for j in range(k2)]))
    return StripeLayout(k1 + 1, k2 + 1, roles, groups, "hvpc")


def hvpc_encode(k1, k2, data):
    lay = hvpc_layout(k1, k2)
    data = np.asarray(data, dtype=np.uint8)
    s = np.zeros((k1 + 1, k2 + 1) + data.shape[2:], dtype=np.uint8)
    s[:k1, :k2] = data
    return lay, encode(lay, s)


def hvpc_decode(lay, stripe, erased):
    """Alternate row and column repairs until nothing changes."""
    return decode(lay, stripe, erased, peel_only=True)


def tolerated_faults(t_r=1, t_c=1):
    return (t_r + 1) * (t_c + 1) - 1


def hvpc_upcode(parts):
    """Merge vertically stacked grid stripes that share column structure.

    Each part is ``(layout, stripe)`` of shape (k1+1) x (k2+1).  The merged
    stripe keeps every data row and its row parity; the single new parity row
    is the XOR of the parts' parity rows.
    """
    if not parts:
        raise ValueError("no parts")
    k2 = parts[0][0].cols - 1
    length = parts[0][1].shape[2:]
    for lay, s in parts:
        if lay.cols - 1 != k2 or s.shape[2:] != length:
            raise ValueError("parts differ in shape or block length")
    rows = []
    vrow = np.zeros_like(parts[0][1][0])
    for lay, s in parts:
        rows.append(s[:lay.rows - 1])
        vrow ^= s[lay.rows - 1]
    k1 = sum(r.shape[0] for r in rows)
    merged = np.concatenate(rows + [vrow[None]], axis=0)
    lay = hvpc_layout(k1, k2)
    return lay, merged


def redundancy(lay):
    return Fraction(len(lay.cells), lay.k)


def consistent(lay, stripe):
    return not check_parities(lay, stripe)
