"""Local reconstruction codes with XOR local parities and two global rows
using coefficients a_i and a_i^2."""
import itertools

import numpy as np

from .. import _kernels
from ..algebra import gf_mul
from .layout import DATA, Group, StripeLayout, global_role, local_role


class SearchExhaustedError(RuntimeError):
    pass


def lrc_shape(k_per_group, groups, n_globals):
    k = k_per_group * groups
    cols = k + groups + n_globals
    roles = [[DATA] * k + [local_role(g) for g in range(groups)]
             + [global_role(i) for i in range(n_globals)]]
    return k, cols, roles


def lrc_layout(k_per_group, groups, n_globals, coeffs):
    k, cols, roles = lrc_shape(k_per_group, groups, n_globals)
    names = "xyzwvutsrq"
    labels = {}
    for g in range(groups):
        for j in range(k_per_group):
            labels[(0, g * k_per_group + j)] = "%s%d" % (names[g % len(names)], j)
        labels[(0, k + g)] = "p%s" % names[g % len(names)]
    for i in range(n_globals):
        labels[(0, k + groups + i)] = "g%d" % i
    gs = []
    for g in range(groups):
        gs.append(Group((0, k + g), [(0, g * k_per_group + j) for j in range(k_per_group)]))
    for i in range(n_globals):
        cs = []
        for a in coeffs:
            c = a
            for _ in range(i):
                c = gf_mul(c, a)
            cs.append(c)
        gs.append(Group((0, k + groups + i), [(0, j) for j in range(k)], cs))
    lay = StripeLayout(1, cols, roles, gs, "lrc(%d,%d,%d)" % (k, groups, n_globals), labels)
    object.__setattr__(lay, "coeffs", tuple(coeffs))
    return lay


def itd(pattern, k_per_group, groups, n_globals):
    """Information-theoretic decodability of a set of erased columns."""
    k = k_per_group * groups
    need = 0
    for g in range(groups):
        d = sum(1 for c in pattern if g * k_per_group <= c < (g + 1) * k_per_group)
        p = 1 if (k + g) in pattern else 0
        need += max(0, d + p - 1)
    lost_globals = sum(1 for c in pattern if c >= k + groups)
    return need <= n_globals - lost_globals


def itd_patterns(k_per_group, groups, n_globals, max_size=None):
    k, cols, _ = lrc_shape(k_per_group, groups, n_globals)
    if max_size is None:
        max_size = groups + n_globals
    out = []
    for size in range(1, max_size + 1):
        for pat in itertools.combinations(range(cols), size):
            if itd(pat, k_per_group, groups, n_globals):
                out.append(pat)
    return out


def lrc_build(k_per_group, groups, n_globals=2, field_values=range(1, 256)):
    """Deterministic backtracking scan: the coefficient of data position j is
    the first field value (in increasing order) for which every decodable
    pattern whose erased data lie in positions <= j has full rank."""
    if n_globals not in (1, 2):
        raise ValueError("one or two global parities supported")
    k, cols, _ = lrc_shape(k_per_group, groups, n_globals)
    pats = itd_patterns(k_per_group, groups, n_globals)
    by_pos = [[] for _ in range(k)]
    for pat in pats:
        data = [c for c in pat if c < k]
        if data:
            by_pos[max(data)].append(pat)
    values = list(field_values)
    coeffs = [0] * k
    choice = [-1] * k
    j = 0
    while 0 <= j < k:
        ok = False
        for vi in range(choice[j] + 1, len(values)):
            v = values[vi]
            if v in coeffs[:j]:
                continue
            coeffs[j] = v
            if _passes(k_per_group, groups, n_globals, coeffs, by_pos[j]):
                choice[j] = vi
                ok = True
                break
        if ok:
            j += 1
        else:
            choice[j] = -1
            coeffs[j] = 0
            j -= 1
    if j < 0:
        raise SearchExhaustedError("no coefficient assignment found; field too small")
    return lrc_layout(k_per_group, groups, n_globals, coeffs)


def _passes(kg, groups, ng, coeffs, pats):
    if not pats:
        return True
    lay = lrc_layout(kg, groups, ng, coeffs)
    h = lay.parity_check()
    by_size = {}
    for p in pats:
        by_size.setdefault(len(p), []).append(p)
    for size, ps in by_size.items():
        if not _kernels.batch_full_rank(h, np.array(ps, dtype=np.int64)).all():
            return False
    return True


def decodable_fraction(lay, size):
    """Return (fraction, per-pattern bool array, patterns) over all column
    sets of the given size."""
    pats = list(itertools.combinations(range(lay.cols), size))
    ok = _kernels.batch_full_rank(lay.parity_check(), np.array(pats, dtype=np.int64))
    return ok.mean(), ok, pats


def azure_layout(n, k, r):
    """(n, k, r) shape: k data in groups of r with one XOR parity each, the
    remaining n - k - k/r blocks global."""
    if k % r:
        raise ValueError("r must divide k")
    groups = k // r
    ng = n - k - groups
    if ng < 1:
        raise ValueError("no room for global parities")
    if ng <= 2:
        return lrc_build(r, groups, ng)
    # more than two globals: Vandermonde-style rows a_i^j
    coeffs = list(range(2, 2 + k))
    kk, cols, roles = lrc_shape(r, groups, ng)
    gs = [Group((0, k + g), [(0, g * r + j) for j in range(r)]) for g in range(groups)]
    for i in range(ng):
        cs = []
        for a in coeffs:
            c = a
            for _ in range(i):
                c = gf_mul(c, a)
            cs.append(c)
        gs.append(Group((0, k + groups + i), [(0, j) for j in range(k)], cs))
    return StripeLayout(1, cols, roles, gs, "azure(%d,%d,%d)" % (n, k, r))
