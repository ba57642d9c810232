"""Copyset replication plans and their exact loss probability."""
import csv
import io
from dataclasses import dataclass
from itertools import combinations
from math import comb

from ..rng import stream
from .clustered import durstenfeld

ENUM_LIMIT = 2_000_000


class EnumerationLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class CopysetPlan:
    n_nodes: int
    R: int
    S: int
    copysets: tuple
    scheme: str = "permutation"

    def node_counts(self):
        c = [0] * self.n_nodes
        for cs in self.copysets:
            for x in cs:
                c[x] += 1
        return c

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for cs in self.copysets:
            w.writerow(cs)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, n_nodes, S=None, scheme="csv"):
        sets = tuple(tuple(int(x) for x in row) for row in csv.reader(io.StringIO(text)) if row)
        R = len(sets[0])
        return cls(n_nodes, R, S if S is not None else 0, sets, scheme)


def copysets_permutation(n, R, P, seed=0, permutations=None):
    """Node ids are 0-based.  ``permutations`` fixes the shuffles."""
    if R < 1 or n % R:
        raise ValueError("R=%d must divide n=%d" % (R, n))
    perms = permutations if permutations is not None else [durstenfeld(n, stream(seed, j)) for j in range(P)]
    sets = []
    for perm in perms:
        perm = list(perm)
        for i in range(0, n, R):
            sets.append(tuple(sorted(perm[i:i + R])))
    return CopysetPlan(n, R, len(perms) * (R - 1), tuple(sets), "permutation")


def copysets_random_window(n, R, S):
    """Random replication with scatter width S: a chunk whose primary is node
    i may place its R-1 replicas on any of nodes i+1..i+S (mod n)."""
    if S < R - 1:
        raise ValueError("scatter width below R-1")
    sets = set()
    for i in range(n):
        window = [(i + j) % n for j in range(1, S + 1)]
        for extra in combinations(window, R - 1):
            sets.add(tuple(sorted((i,) + extra)))
    return CopysetPlan(n, R, S, tuple(sorted(sets)), "random")


def copyset_pdl_exact(plan, failed=None):
    n, R = plan.n_nodes, plan.R
    if failed is None:
        failed = R
    if failed < R:
        return 0.0
    if failed == R:
        return min(1.0, len(set(plan.copysets)) / comb(n, R))
    total = comb(n, failed)
    if total > ENUM_LIMIT:
        raise EnumerationLimitError("C(%d,%d)=%d failure sets" % (n, failed, total))
    masks = [sum(1 << x for x in cs) for cs in set(plan.copysets)]
    hit = 0
    for fs in combinations(range(n), failed):
        m = 0
        for x in fs:
            m |= 1 << x
        for cm in masks:
            if cm & m == cm:
                hit += 1
                break
    return hit / total


def window_loss(failed_nodes, n, R, S):
    """Loss test for the random-window plan without materialising copysets:
    some failed node has at least R-1 failed nodes among its next S."""
    f = set(failed_nodes)
    for i in f:
        cnt = sum(1 for j in range(1, S + 1) if (i + j) % n in f)
        if cnt >= R - 1:
            return True
    return False
