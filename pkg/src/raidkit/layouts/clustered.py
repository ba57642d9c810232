"""Clustered RAID placements: BIBD, nearly random permutation, shifted PGs."""
import json
from dataclasses import dataclass, field
from math import comb, gcd
from itertools import combinations

import numpy as np

from ..rng import stream

DATA, PARITY, SPARE, EMPTY = "d", "p", "s", "-"


@dataclass
class ClusteredLayout:
    """``pg[r, d]`` is the parity group of the strip at row r of disk d
    (-1 when empty); ``role[r][d]`` one of d/p/s/-; ``seq[r, d]`` the logical
    data index of data strips (-1 otherwise)."""
    n_disks: int
    G: int
    pg: np.ndarray
    role: list
    seq: np.ndarray = None
    name: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def rows(self):
        return self.pg.shape[0]

    @property
    def alpha(self):
        return (self.G - 1) / (self.n_disks - 1)

    def groups(self):
        out = {}
        for r in range(self.rows):
            for d in range(self.n_disks):
                g = int(self.pg[r, d])
                if g >= 0:
                    out.setdefault(g, []).append((r, d))
        return out

    def parity_counts(self):
        c = np.zeros(self.n_disks, dtype=int)
        for r in range(self.rows):
            for d in range(self.n_disks):
                if self.role[r][d] == PARITY:
                    c[d] += 1
        return c

    def to_json(self):
        return json.dumps({"n_disks": self.n_disks, "G": self.G, "name": self.name,
                           "pg": self.pg.tolist(), "role": [list(r) for r in self.role],
                           "seq": None if self.seq is None else self.seq.tolist()},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        seq = None if d.get("seq") is None else np.array(d["seq"], dtype=int)
        return cls(d["n_disks"], d["G"], np.array(d["pg"], dtype=int), d["role"], seq, d.get("name", ""))

    def render(self):
        lines = []
        for r in range(self.rows):
            cells = []
            for d in range(self.n_disks):
                g = self.pg[r, d]
                if g < 0:
                    cells.append("-")
                elif self.role[r][d] == PARITY:
                    cells.append("P%d" % g)
                else:
                    cells.append("D%d" % self.seq[r, d] if self.seq is not None else "g%d" % g)
            lines.append(" ".join("%6s" % c for c in cells))
        return "\n".join(lines)


@dataclass
class BIBDDesign:
    n: int
    k: int
    blocks: list

    @property
    def b(self):
        return len(self.blocks)

    @property
    def r(self):
        return self.b * self.k // self.n

    @property
    def L(self):
        return self.r * (self.k - 1) // (self.n - 1)


# Disk columns of the 10-disk, G=4 design; the entry printed as 0 on disk 5
# is 10 (the only value that gives PG 10 its four strips).
BIBD_10_4_COLUMNS = [
    [1, 2, 3, 4, 8, 12], [1, 4, 6, 7, 9, 13], [2, 4, 5, 7, 10, 14], [3, 4, 5, 6, 11, 15],
    [1, 5, 8, 10, 11, 13], [2, 6, 8, 9, 11, 14], [3, 7, 8, 9, 10, 15],
    [1, 5, 9, 12, 14, 15], [2, 6, 10, 12, 13, 15], [3, 7, 11, 12, 13, 14],
]


def bibd_builtin_10_4():
    blocks = {}
    for d, col in enumerate(BIBD_10_4_COLUMNS):
        for g in col:
            blocks.setdefault(g, []).append(d)
    return BIBDDesign(10, 4, [tuple(blocks[g]) for g in sorted(blocks)])


def bibd_complete(n, k):
    return BIBDDesign(n, k, [tuple(c) for c in combinations(range(n), k)])


def bibd_check(des):
    problems = []
    n, k, b = des.n, des.k, des.b
    if b * k % n:
        problems.append("b k = n r has no integer r")
    r = b * k // n
    if r * (k - 1) % (n - 1):
        problems.append("r (k-1) = L (n-1) has no integer L")
    L = r * (k - 1) // (n - 1)
    occ = np.zeros(n, dtype=int)
    pair = np.zeros((n, n), dtype=int)
    for blk in des.blocks:
        if len(set(blk)) != k:
            problems.append("block %r does not have %d distinct disks" % (blk, k))
        for d in blk:
            occ[d] += 1
        for a, c in combinations(sorted(set(blk)), 2):
            pair[a, c] += 1
    bad_occ = [d for d in range(n) if occ[d] != r]
    if bad_occ:
        problems.append("disks %s not in exactly r=%d blocks" % (bad_occ, r))
    bad_pairs = [(a, c, int(pair[a, c])) for a, c in combinations(range(n), 2) if pair[a, c] != L]
    if bad_pairs:
        problems.append("%d disk pairs co-occur != L=%d times (e.g. %s)"
                        % (len(bad_pairs), L, bad_pairs[0]))
    return {"valid": not problems, "b": b, "r": r, "L": L, "problems": problems}


def bibd_layout(des, parity="balanced"):
    """One segment: disk d lists its blocks top to bottom in increasing id.

    parity='first' puts parity on the first disk of each block; 'balanced'
    gives each block's parity to its least loaded disk (ties: lowest disk), so
    per-disk parity counts differ by at most one.
    """
    cols = [[] for _ in range(des.n)]
    for g, blk in enumerate(des.blocks):
        for d in blk:
            cols[d].append(g)
    rows = max(len(c) for c in cols)
    pg = -np.ones((rows, des.n), dtype=int)
    for d, c in enumerate(cols):
        for r, g in enumerate(sorted(c)):
            pg[r, d] = g
    role = [[DATA if pg[r, d] >= 0 else EMPTY for d in range(des.n)] for r in range(rows)]
    load = np.zeros(des.n, dtype=int)
    for g, blk in enumerate(des.blocks):
        d = blk[0] if parity == "first" else min(blk, key=lambda x: (load[x], x))
        load[d] += 1
        r = int(np.nonzero(pg[:, d] == g)[0][0])
        role[r][d] = PARITY
    seq = _number_data(pg, role, des.n)
    return ClusteredLayout(des.n, des.k, pg, role, seq, "bibd")


def _number_data(pg, role, n):
    """Logical data numbering: PG by PG, strips in row-major order."""
    seq = -np.ones(pg.shape, dtype=int)
    i = 0
    for g in sorted(set(int(x) for x in pg.ravel() if x >= 0)):
        cells = sorted((r, d) for r, d in zip(*np.nonzero(pg == g)))
        for r, d in cells:
            if role[r][d] == DATA:
                seq[r, d] = i
                i += 1
    return seq


def durstenfeld(n, rng):
    """Algorithm 235: for m = n..2 swap A[m] with A[k], k uniform in 1..m."""
    a = list(range(n))
    for m in range(n, 1, -1):
        k = int(rng.integers(1, m + 1))
        if k != m:
            a[m - 1], a[k - 1] = a[k - 1], a[m - 1]
    return a


def sequential_fill(n, G, rows, parity_last=True):
    pg = -np.ones((rows, n), dtype=int)
    role = [[EMPTY] * n for _ in range(rows)]
    seq = -np.ones((rows, n), dtype=int)
    s = 0
    for lin in range((rows * n // G) * G):
        r, d = divmod(lin, n)
        g, j = divmod(lin, G)
        pg[r, d] = g
        is_par = (j == G - 1) if parity_last else (j == 0)
        role[r][d] = PARITY if is_par else DATA
        if not is_par:
            seq[r, d] = s
            s += 1
    return pg, role, seq


def nrp_rows_per_permutation(n, G):
    return (n * G // gcd(n, G)) // n


def nrp_layout(n, G, seed, periods=1, permutations=None):
    """Fill PGs sequentially (parity last), then permute each block of K rows
    with one shuffle so PGs straddling rows stay on distinct disks.  The
    shuffle for block j is seeded from (seed, j).  ``permutations`` overrides
    the shuffles (one list per block)."""
    if not 1 < G < n + 1:
        raise ValueError("need 1 < G <= n")
    K = nrp_rows_per_permutation(n, G)
    rows = K * periods
    pg, role, seq = sequential_fill(n, G, rows)
    out_pg = pg.copy()
    out_role = [list(r) for r in role]
    out_seq = seq.copy()
    perms = []
    for j in range(periods):
        perm = permutations[j] if permutations is not None else durstenfeld(n, stream(seed, j))
        perms.append(list(perm))
        for r in range(j * K, (j + 1) * K):
            for i in range(n):
                out_pg[r, perm[i]] = pg[r, i]
                out_role[r][perm[i]] = role[r][i]
                out_seq[r, perm[i]] = seq[r, i]
    lay = ClusteredLayout(n, G, out_pg, out_role, out_seq, "nrp")
    lay.notes = {"K": K, "permutations": perms, "seed": seed}
    return lay


def shifted_layout(n, G, periods=None):
    """PGs placed row-major; period s (L/N rows, L = lcm(N, G)) is rotated s
    positions, so entry e of the period sits at linear index (e - s) mod L."""
    if not 1 < G <= n:
        raise ValueError("need 1 < G <= n")
    g = gcd(n, G)
    L = n * G // g
    K = L // n
    if periods is None:
        periods = g
    rows = K * periods
    pg = -np.ones((rows, n), dtype=int)
    role = [[EMPTY] * n for _ in range(rows)]
    seq = -np.ones((rows, n), dtype=int)
    per_pg = L // G
    s_data = 0
    for s in range(periods):
        for e in range(L):
            lin = (e - s) % L
            r, d = divmod(lin, n)
            r += s * K
            grp, j = divmod(e, G)
            pg[r, d] = s * per_pg + grp
            par = j == G - 1
            role[r][d] = PARITY if par else DATA
            if not par:
                seq[r, d] = s_data + grp * (G - 1) + j
        s_data += per_pg * (G - 1)
    lay = ClusteredLayout(n, G, pg, role, seq, "shifted")
    lay.notes = {"L": L, "K": K, "gcd": g, "periods": periods}
    return lay


def raid5_clustered(n, rows):
    """Left-symmetric RAID5 as the degenerate G = N case."""
    pg = np.zeros((rows, n), dtype=int)
    role = [[DATA] * n for _ in range(rows)]
    seq = -np.ones((rows, n), dtype=int)
    s = 0
    for r in range(rows):
        pg[r, :] = r
        p = n - 1 - (r % n)
        role[r][p] = PARITY
        for j in range(n - 1):
            seq[r, (p + 1 + j) % n] = s
            s += 1
    return ClusteredLayout(n, n, pg, role, seq, "raid5")


def raid4_clustered(n, rows):
    pg = np.zeros((rows, n), dtype=int)
    role = [[DATA] * (n - 1) + [PARITY] for _ in range(rows)]
    seq = -np.ones((rows, n), dtype=int)
    for r in range(rows):
        pg[r, :] = r
        seq[r, :n - 1] = np.arange(r * (n - 1), (r + 1) * (n - 1))
    return ClusteredLayout(n, n, pg, role, seq, "raid4")


def reconstruction_reads(lay, failed):
    """Strips read from every disk to rebuild disk ``failed``."""
    reads = np.zeros(lay.n_disks, dtype=int)
    groups = lay.groups()
    for r in range(lay.rows):
        g = int(lay.pg[r, failed])
        if g < 0:
            continue
        for (rr, d) in groups[g]:
            if d != failed:
                reads[d] += 1
    return reads


def layout_properties(lay):
    n, G = lay.n_disks, lay.G
    groups = lay.groups()
    # (i) single failure correction
    bad = []
    for g, cells in groups.items():
        disks = [d for _, d in cells]
        npar = sum(1 for r, d in cells if lay.role[r][d] == PARITY)
        if len(set(disks)) != len(disks) or npar != 1 or len(cells) != G:
            bad.append(g)
    # (ii) distributed parity
    pc = lay.parity_counts()
    # (iii) distributed reconstruction
    ratios = []
    per_disk = []
    for f in range(n):
        reads = reconstruction_reads(lay, f)
        surv = np.delete(reads, f)
        per_disk.append(reads.tolist())
        ratios.append(surv.max() / surv.min() if surv.min() > 0 else float("inf"))
    # (iv) large-write: each PG's data strips carry consecutive logical indices
    contiguous = True
    if lay.seq is not None:
        for g, cells in groups.items():
            s = sorted(int(lay.seq[r, d]) for r, d in cells if lay.role[r][d] == DATA)
            if s and s != list(range(s[0], s[0] + len(s))):
                contiguous = False
                break
    # (v) maximal parallelism: any G consecutive data strips on distinct disks
    parallel = True
    if lay.seq is not None:
        where = {}
        for r in range(lay.rows):
            for d in range(n):
                if lay.seq[r, d] >= 0:
                    where[int(lay.seq[r, d])] = d
        idx = sorted(where)
        run = min(G, n)
        for i in range(len(idx) - run + 1):
            disks = [where[idx[j]] for j in range(i, i + run)]
            if len(set(disks)) != run:
                parallel = False
                break
    note = {"bibd": "table lookup of a precomputed design",
            "nrp": "one shuffle per K rows, O(N) per row group",
            "shifted": "closed-form index arithmetic",
            "raid5": "closed-form rotation", "raid4": "none"}.get(lay.name, "n/a")
    return {
        "i_single_failure": not bad, "bad_groups": bad,
        "ii_parity_counts": pc.tolist(), "ii_parity_balanced": int(pc.max() - pc.min()) <= 1,
        "iii_reads_per_disk": per_disk, "iii_max_min_ratio": max(ratios),
        "iii_balanced": max(ratios) == 1.0,
        "iv_large_write": contiguous, "v_max_parallelism": parallel,
        "vi_mapping_cost": note, "alpha": lay.alpha,
    }
