"""RAID5, RDP and X-code array layouts."""
import itertools

import numpy as np

from .layout import (DATA, DIAG_P, DIAG_Q, ROW, UNUSED, Group, StripeLayout, UnrecoverableError,
                     XorCounter, decode, encode, expand_erasures)


def is_prime(p):
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def _need_prime(p, what):
    if not is_prime(int(p)):
        raise ValueError("%s must be prime, got %r" % (what, p))


def layout_raid5(n_disks, stripes):
    """Left-symmetric RAID5: parity of row r on disk n-1-(r mod n), the row's
    data continuing on the disk right after the parity disk."""
    if n_disks < 3:
        raise ValueError("RAID5 needs at least 3 disks")
    roles = [[DATA] * n_disks for _ in range(stripes)]
    groups = []
    labels = {}
    seq = 0
    for r in range(stripes):
        p = n_disks - 1 - (r % n_disks)
        roles[r][p] = ROW
        members = []
        for j in range(n_disks - 1):
            c = (p + 1 + j) % n_disks
            members.append((r, c))
            labels[(r, c)] = "D%d" % seq
            seq += 1
        labels[(r, p)] = "P%d:%d" % (seq - n_disks + 1, seq - 1)
        groups.append(Group((r, p), members))
    return StripeLayout(stripes, n_disks, roles, groups, "raid5", labels)


def raid5_data_disk(n_disks, i):
    """Disk holding data strip ``i`` in the left-symmetric layout."""
    r, j = divmod(i, n_disks - 1)
    p = n_disks - 1 - (r % n_disks)
    return (p + 1 + j) % n_disks


# -- RDP ---------------------------------------------------------------------

def rdp_layout(p):
    """(p-1) rows, columns 0..p-2 data, p-1 row parity, p diagonal parity.
    Diagonal d collects cells with (r + c) mod p == d over columns 0..p-1;
    diagonal p-1 is not stored."""
    _need_prime(p, "p")
    if p <= 2:
        raise ValueError("p must be an odd prime")
    rows, cols = p - 1, p + 1
    roles = [[DATA] * (p - 1) + [ROW, DIAG_P] for _ in range(rows)]
    groups = [Group((r, p - 1), [(r, c) for c in range(p - 1)]) for r in range(rows)]
    for d in range(p - 1):
        mem = [((d - c) % p, c) for c in range(p) if (d - c) % p < p - 1]
        groups.append(Group((d, p), sorted(mem)))
    labels = {(r, c): "d%d,%d" % (r, c) for r in range(rows) for c in range(cols)}
    return StripeLayout(rows, cols, roles, groups, "rdp", labels)


def rdp_encode(p, data, counter=None):
    """``data`` has shape (p-1, p-1, L). Returns (layout, full stripe)."""
    lay = rdp_layout(p)
    data = np.asarray(data, dtype=np.uint8)
    if data.shape[:2] != (p - 1, p - 1):
        raise ValueError("RDP data grid must be (p-1) x (p-1)")
    s = np.zeros((lay.rows, lay.cols) + data.shape[2:], dtype=np.uint8)
    s[:, :p - 1] = data
    return lay, encode(lay, s, counter)


def rdp_xor_count(p):
    c = XorCounter()
    rdp_encode(p, np.zeros((p - 1, p - 1, 1), dtype=np.uint8), c)
    return c.xors


def column_decode(lay, stripe, columns, tolerance=2):
    if len(set(columns)) > tolerance:
        raise UnrecoverableError("%s tolerates at most %d erased columns"
                                 % (lay.name, tolerance))
    erased = expand_erasures(lay, columns=columns)
    out, stuck = decode(lay, stripe, erased)
    if stuck:
        raise UnrecoverableError("stuck cells: %s" % stuck)
    return out


def rdp_decode(lay, stripe, columns):
    return column_decode(lay, stripe, columns)


# -- X-code ------------------------------------------------------------------

def xcode_layout(n):
    """n x n array; rows 0..n-3 data, row n-2 holds p(i) = sum_k B[k, <i-k-2>],
    row n-1 holds q(i) = sum_k B[k, <i+k+2>]."""
    _need_prime(n, "n")
    roles = [[DATA] * n for _ in range(n - 2)] + [[DIAG_P] * n, [DIAG_Q] * n]
    groups = []
    for i in range(n):
        groups.append(Group((n - 2, i), [(k, (i - k - 2) % n) for k in range(n - 2)]))
    for i in range(n):
        groups.append(Group((n - 1, i), [(k, (i + k + 2) % n) for k in range(n - 2)]))
    return StripeLayout(n, n, roles, groups, "xcode")


def xcode_decode(lay, stripe, columns):
    return column_decode(lay, stripe, columns)


def xcode_membership(lay, cell):
    """(P-group index, Q-group index) of a data cell."""
    n = lay.cols
    p = q = None
    for g in lay.groups:
        if cell in g.members:
            if g.parity[0] == n - 2:
                p = g.parity[1]
            else:
                q = g.parity[1]
    return p, q


def single_rebuild_plan(lay, failed_col, exhaustive_cap=1 << 20):
    """Pick one repair group per lost cell so that the union of surviving
    cells read is smallest.  Exhaustive when the choice space is small."""
    lost = lay.column_cells(failed_col)
    lost_set = set(lost)
    options = []
    for cell in lost:
        opts = []
        for g in lay.groups_of(cell):
            if all(c == cell or c not in lost_set for c in g.cells):
                opts.append(frozenset(c for c in g.cells if c != cell))
        if not opts:
            raise UnrecoverableError("cell %r has no single-failure repair group" % (cell,))
        options.append(opts)
    space = 1
    for o in options:
        space *= len(o)
    naive = frozenset().union(*(o[0] for o in options))
    if space <= exhaustive_cap:
        best = None
        for combo in itertools.product(*[range(len(o)) for o in options]):
            reads = frozenset().union(*(options[i][j] for i, j in enumerate(combo)))
            if best is None or len(reads) < len(best[1]):
                best = (combo, reads)
        choice, reads = best
    else:
        # greedy: pick per cell the option adding fewest new reads
        reads = frozenset()
        choice = []
        for o in options:
            j = min(range(len(o)), key=lambda j: len(o[j] - reads))
            choice.append(j)
            reads |= o[j]
        choice = tuple(choice)
    return {"failed_col": failed_col, "choice": tuple(choice), "reads": sorted(reads),
            "cost": len(reads), "naive_cost": len(naive),
            "exhaustive": space <= exhaustive_cap}


def rebuild_with_plan(lay, stripe, plan):
    """Reconstruct the failed column using the chosen groups only."""
    from ..algebra import INV, MUL
    out = np.array(stripe, dtype=np.uint8, copy=True)
    lost = lay.column_cells(plan["failed_col"])
    for cell in lost:
        out[cell] = 0
    for cell, j in zip(lost, plan["choice"]):
        opts = [g for g in lay.groups_of(cell)
                if all(c == cell or c not in lost for c in g.cells)]
        g = opts[j]
        acc = np.zeros_like(out[cell])
        for c in g.cells:
            if c != cell:
                acc ^= MUL[g.coeff_of(c)][out[c]]
        out[cell] = MUL[INV[g.coeff_of(cell)]][acc]
    return out
