"""Repair-cost metrics for layouts with local and global groups."""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import matrix_rank
import numpy as np


@dataclass(frozen=True)
class RepairCostReport:
    arc: Fraction
    nrc: Fraction
    adrc: Fraction
    drc: Fraction
    arc2: Fraction = None


def cell_costs(lay):
    """Cheapest single-group repair (cells read) for every cell."""
    out = {}
    for c in lay.cells:
        opts = [len(g.cells) - 1 for g in lay.groups_of(c) if g.coeff_of(c) != 0]
        if not opts:
            raise ValueError("cell %r has no repair group" % (c,))
        out[c] = min(opts)
    return out


def pair_cost(lay, a, b):
    """Fewest surviving cells read to rebuild both a and b using the union of
    at most two groups; falls back to every surviving cell."""
    best = None
    gs = [g for g in lay.groups if a in g.cells or b in g.cells]
    combos = [(g,) for g in gs] + list(itertools.combinations(gs, 2))
    for combo in combos:
        cells = set()
        for g in combo:
            cells.update(g.cells)
        if a not in cells or b not in cells:
            continue
        m = np.array([[g.coeff_of(a) if a in g.cells else 0,
                       g.coeff_of(b) if b in g.cells else 0] for g in combo], dtype=np.uint8)
        if matrix_rank(m) < 2:
            continue
        cost = len(cells - {a, b})
        if best is None or cost < best:
            best = cost
    if best is None:
        best = len(lay.cells) - 2
    return best


def repair_metrics(lay, repair_cost=None, pairs=True):
    if repair_cost is None:
        repair_cost = cell_costs(lay)
    cells = lay.cells
    n = len(cells)
    data = lay.data_cells
    k = len(data)
    total = sum(repair_cost[c] for c in cells)
    dsum = sum(repair_cost[c] for c in data)
    arc2 = None
    if pairs:
        ps = list(itertools.combinations(cells, 2))
        arc2 = Fraction(sum(pair_cost(lay, a, b) for a, b in ps), len(ps))
    return RepairCostReport(Fraction(total, n), Fraction(total, k), Fraction(dsum, k),
                            Fraction(dsum, k), arc2)


def azure_arc_closed(n, k, r):
    """(k + k/r) blocks repaired from r reads, the rest from k."""
    l_ = k // r
    g = n - k - l_
    return Fraction((k + l_) * r + g * k, n)
