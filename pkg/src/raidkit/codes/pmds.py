"""PMDS / SD classification by exhaustive enumeration."""
import itertools
from math import comb

import numpy as np

from .. import _kernels
from ..algebra import EXP, gf_mul
from .layout import DATA, ROW, Group, StripeLayout, global_role


class EnumerationLimitError(RuntimeError):
    pass


MAX_PATTERNS = 3_000_000


def pmds_layout(rows=4, cols=7, s=2, omega=None, a=None, name="pmds"):
    """rows x cols array, last column row parities, the last ``s`` cells of the
    final data row hold global parities g_j = sum gamma^j d with
    gamma(i, c) = omega_i * a_c."""
    if omega is None:
        omega = [int(EXP[i]) for i in range(rows)]
    if a is None:
        a = [int(EXP[c]) for c in range(cols - 1)]
    roles = [[DATA] * (cols - 1) + [ROW] for _ in range(rows)]
    gcells = [(rows - 1, cols - 1 - s + j) for j in range(s)]
    for j, c in enumerate(gcells):
        roles[c[0]][c[1]] = global_role(j)
    data = [(r, c) for r in range(rows) for c in range(cols - 1) if roles[r][c] == DATA]
    labels = {d: "d%d" % i for i, d in enumerate(data)}
    for r in range(rows):
        labels[(r, cols - 1)] = "p%d" % r
    for j, c in enumerate(gcells):
        labels[c] = "g%d" % (j + 1)
    groups = [Group((r, cols - 1), [(r, c) for c in range(cols - 1)]) for r in range(rows)]
    for j, g in enumerate(gcells):
        cs = []
        for (r, c) in data:
            gam = gf_mul(omega[r], a[c])
            v = gam
            for _ in range(j):
                v = gf_mul(v, gam)
            cs.append(v)
        groups.append(Group(g, data, cs))
    lay = StripeLayout(rows, cols, roles, groups, name, labels)
    object.__setattr__(lay, "omega", tuple(omega))
    return lay


def _idx(lay, cells):
    idx = lay.index()
    return [idx[c] for c in cells]


def pmds_patterns(lay, m, s):
    """Unique erasure sets: m cells in every row plus s further cells."""
    rows = [[c for c in lay.cells if c[0] == r] for r in range(lay.rows)]
    count = 1
    for r in rows:
        count *= comb(len(r), m)
    count *= comb(len(lay.cells) - m * lay.rows, s)
    if count > MAX_PATTERNS:
        raise EnumerationLimitError("%d patterns exceed the cap of %d" % (count, MAX_PATTERNS))
    idx = lay.index()
    seen = set()
    allc = lay.cells
    for choice in itertools.product(*[itertools.combinations(r, m) for r in rows]):
        base = [c for part in choice for c in part]
        rest = [c for c in allc if c not in set(base)]
        for extra in itertools.combinations(rest, s):
            seen.add(tuple(sorted(idx[c] for c in base + list(extra))))
    return sorted(seen)


def sd_patterns(lay, m, s):
    count = comb(lay.cols, m) * comb(lay.rows * (lay.cols - m), s)
    if count > MAX_PATTERNS:
        raise EnumerationLimitError("%d patterns exceed the cap of %d" % (count, MAX_PATTERNS))
    idx = lay.index()
    seen = set()
    for cols in itertools.combinations(range(lay.cols), m):
        base = [c for c in lay.cells if c[1] in cols]
        rest = [c for c in lay.cells if c[1] not in cols]
        for extra in itertools.combinations(rest, s):
            seen.add(tuple(sorted(idx[c] for c in base + list(extra))))
    return sorted(seen)


def _all_ok(lay, pats):
    if not pats:
        return True, []
    h = lay.parity_check()
    arr = np.array(pats, dtype=np.int64)
    ok = _kernels.batch_full_rank(h, arr)
    return bool(ok.all()), [pats[i] for i in np.nonzero(~ok)[0][:5]]


def pmds_sd_check(lay, m, s):
    if lay.rows > 6 or lay.cols > 8:
        raise EnumerationLimitError("grid larger than 6 x 8")
    sd_ok, sd_bad = _all_ok(lay, sd_patterns(lay, m, s))
    pm_ok, pm_bad = (False, None)
    if sd_ok:
        pm_ok, pm_bad = _all_ok(lay, pmds_patterns(lay, m, s))
    cls = "PMDS" if pm_ok else ("SD-only" if sd_ok else "neither")
    return {"class": cls, "sd": sd_ok, "pmds": pm_ok,
            "sd_pattern_count": comb(lay.cols, m) * comb(lay.rows * (lay.cols - m), s),
            "counterexamples": sd_bad if not sd_ok else pm_bad}


def cases(lay):
    """Named erasure sets: a column plus two sectors (I), one failure per row
    plus two more (II), and the recovery walkthrough set (III)."""
    L = lay.cell_by_label
    return {
        "I": [L(x) for x in ("d3", "d9", "d15", "d21", "d2", "d12")],
        "II": [L(x) for x in ("d2", "d11", "d12", "d19", "d4", "d13")],
        "III": [L(x) for x in ("d2", "d4", "d12", "d14", "d11", "d19")],
    }


# Coefficients found by search_pmds(); verified exhaustively in the tests.
PMDS_A = (105, 101, 91, 52, 59, 197)
PMDS_OMEGA = (1, 51, 94, 28)
# A row collision omega_2 (a_0 + a_1) = omega_0 (a_2 + a_4) keeps every
# sector-disk pattern solvable but breaks case II.
SD_ONLY_A = (39, 185, 113, 66, 170, 251)
SD_ONLY_OMEGA = (1, 95, 106, 93)


def pmds_example():
    return pmds_layout(omega=PMDS_OMEGA, a=PMDS_A, name="pmds")


def sd_only_example():
    return pmds_layout(omega=SD_ONLY_OMEGA, a=SD_ONLY_A, name="sd-only")


def _pair_sums(a):
    s = set(a)
    for j, c in itertools.combinations(range(len(a)), 2):
        s.add(a[j] ^ a[c])
    return s


def search_pmds(rows=4, cols=7, s=2, trials=5000, seed=0):
    """Random a_j, then omegas chosen greedily so the scaled pair-sum sets of
    different rows are disjoint; the first candidate that passes the full
    enumeration is returned as (a, omega)."""
    import random
    for t in range(trials):
        rnd = random.Random(seed + t)
        a = [int(EXP[e]) for e in sorted(rnd.sample(range(255), cols - 1))]
        ds = _pair_sums(a)
        om = [1]
        order = list(range(1, 255))
        rnd.shuffle(order)
        for e in order:
            w = int(EXP[e])
            ws = {gf_mul(w, x) for x in ds}
            if all(not (ws & {gf_mul(o, x) for x in ds}) for o in om):
                om.append(w)
                if len(om) == rows:
                    break
        if len(om) < rows:
            continue
        lay = pmds_layout(rows, cols, s, om, a)
        if pmds_sd_check(lay, 1, s)["class"] == "PMDS":
            return tuple(a), tuple(om)
    raise RuntimeError("no PMDS coefficients found")
