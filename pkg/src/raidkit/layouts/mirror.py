"""Placement maps for basic mirroring (BM), interleaved declustering (ID),
group rotate declustering (GRD) and chained declustering (CD)."""
from dataclasses import dataclass
from itertools import combinations
from math import comb

ORGS = ("BM", "ID", "GRD", "CD")


@dataclass(frozen=True)
class MirrorMap:
    """``placement`` maps (disk, row, part) of a primary strip to the
    (disk, row) of its replica.  ID splits each primary into n/c - 1 parts,
    the other organisations use part 0 only."""
    organization: str
    n_disks: int
    clusters: int
    placement: dict

    def primaries_on(self, disk):
        return [k for k in self.placement if k[0] == disk]

    def loses_data(self, failed):
        f = set(failed)
        return any(p[0] in f and r[0] in f for p, r in self.placement.items())

    def survivable_count(self, i):
        """A(N, i) by enumeration over the placement."""
        return sum(1 for fs in combinations(range(self.n_disks), i) if not self.loses_data(fs))

    def survivor_load(self, failed):
        """Relative read load on every disk after ``failed`` fails; a healthy
        disk serving its own primaries is 1.0."""
        n = self.n_disks
        load = [1.0] * n
        load[failed] = 0.0
        org = self.organization
        if org == "BM":
            load[(failed + n // 2) % n] += 1.0
        elif org == "ID":
            size = n // self.clusters
            base = failed // size * size
            for d in range(base, base + size):
                if d != failed:
                    load[d] += 1.0 / (size - 1)
        elif org == "GRD":
            m = n // 2
            other = range(m, n) if failed < m else range(m)
            for d in other:
                load[d] += 1.0 / m
        elif org == "CD":
            # reads shift around the ring so every survivor carries N/(N-1)
            for d in range(n):
                if d != failed:
                    load[d] = n / (n - 1)
        return load


def mirror_map(org, n, c=None):
    org = org.upper()
    rows = None
    pl = {}
    if org == "BM":
        if n < 2 or n % 2:
            raise ValueError("BM needs an even number of disks")
        m = n // 2
        for i in range(m):
            pl[(i, 0, 0)] = (i + m, 0)
        return MirrorMap(org, n, 1, pl)
    if org == "GRD":
        if n < 2 or n % 2:
            raise ValueError("GRD needs an even number of disks")
        m = n // 2
        for r in range(m):
            for i in range(m):
                pl[(i, r, 0)] = (m + (i + r) % m, r)
        return MirrorMap(org, n, 1, pl)
    if org == "ID":
        c = c or 1
        if n % c or n // c < 2:
            raise ValueError("c=%s must divide n=%d with at least 2 disks per cluster" % (c, n))
        size = n // c
        for cl in range(c):
            base = cl * size
            for i in range(size):
                for j in range(1, size):
                    t = (i + j) % size
                    pl[(base + i, 0, j)] = (base + t, i + (1 if t > i else 0))
        return MirrorMap(org, n, c, pl)
    if org == "CD":
        if n < 2:
            raise ValueError("CD needs at least 2 disks")
        for i in range(n):
            pl[(i, 0, 0)] = ((i + 1) % n, 1)
        return MirrorMap(org, n, 1, pl)
    raise ValueError("unknown organization %r" % org)


def survivable_closed(org, n, i, c=None):
    """A(N, i): failure sets of size i that lose no data."""
    org = org.upper()
    if org == "BM":
        m = n // 2
        return comb(m, i) * 2 ** i
    if org == "ID":
        size = n // c
        return comb(c, i) * size ** i
    if org == "GRD":
        m = n // 2
        if i == 0:
            return 1
        return 2 * comb(m, i)
    if org == "CD":
        if i == 0:
            return 1
        if 2 * i > n:
            return 0
        return comb(n - i - 1, i - 1) + comb(n - i, i)
    raise ValueError(org)
