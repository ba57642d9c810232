"""Stripe layouts: a grid of cells with roles plus linear parity groups.

A group states ``parity = sum_j coeff_j * member_j`` over GF(256).  Codes are
described entirely by their groups, which gives us two independent views of
recoverability: the parity-check matrix H (one row per group) and the
generator obtained by running the encoder on unit vectors.
"""
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from ..algebra import INV, MUL, SingularMatrixError, matrix_rank, solve_overdetermined

DATA = "data"
UNUSED = "unused"
SPARE = "spare"
ROW = "parity_row"
COL = "parity_col"
DIAG_P = "parity_diag_p"
DIAG_Q = "parity_diag_q"


def local_role(g):
    return "local:%d" % g


def global_role(i):
    return "global:%d" % i


class UnrecoverableError(ValueError):
    """The erasure pattern exceeds what the code can repair."""


@dataclass(frozen=True)
class Group:
    parity: tuple
    members: tuple
    coeffs: tuple = None

    def __post_init__(self):
        members = tuple(tuple(m) for m in self.members)
        object.__setattr__(self, "parity", tuple(self.parity))
        object.__setattr__(self, "members", members)
        if self.coeffs is None:
            object.__setattr__(self, "coeffs", (1,) * len(members))
        else:
            object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(members):
            raise ValueError("one coefficient per member required")

    @property
    def cells(self):
        return (self.parity,) + self.members

    def coeff_of(self, cell):
        if cell == self.parity:
            return 1
        return self.coeffs[self.members.index(cell)]


@dataclass(frozen=True)
class StripeLayout:
    rows: int
    cols: int
    roles: tuple
    groups: tuple
    name: str = ""
    labels: dict = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roles", tuple(tuple(r) for r in self.roles))
        object.__setattr__(self, "groups", tuple(self.groups))
        if len(self.roles) != self.rows or any(len(r) != self.cols for r in self.roles):
            raise ValueError("roles grid does not match shape")
        for g in self.groups:
            for c in g.cells:
                if self.role(c) == UNUSED:
                    raise ValueError("group touches unused cell %r" % (c,))

    def role(self, cell):
        return self.roles[cell[0]][cell[1]]

    @property
    def cells(self):
        return [(r, c) for r in range(self.rows) for c in range(self.cols)
                if self.roles[r][c] not in (UNUSED, SPARE)]

    @property
    def data_cells(self):
        return [(r, c) for r in range(self.rows) for c in range(self.cols)
                if self.roles[r][c] == DATA]

    @property
    def parity_cells(self):
        return [c for c in self.cells if self.role(c) != DATA]

    @property
    def k(self):
        return len(self.data_cells)

    def index(self):
        return {c: i for i, c in enumerate(self.cells)}

    def label(self, cell):
        if self.labels and cell in self.labels:
            return self.labels[cell]
        return "%s%d_%d" % ("d" if self.role(cell) == DATA else "p", cell[0], cell[1])

    def cell_by_label(self, name):
        for c in self.cells:
            if self.label(c) == name:
                return c
        raise KeyError(name)

    def column_cells(self, col):
        return [c for c in self.cells if c[1] == col]

    def groups_of(self, cell):
        return [g for g in self.groups if cell in g.cells]

    # -- matrix views -------------------------------------------------
    def parity_check(self):
        idx = self.index()
        h = np.zeros((len(self.groups), len(idx)), dtype=np.uint8)
        for i, g in enumerate(self.groups):
            h[i, idx[g.parity]] ^= 1
            for m, a in zip(g.members, g.coeffs):
                h[i, idx[m]] ^= a
        return h

    def generator(self):
        """Rows: cells in ``self.cells`` order; columns: data symbols."""
        k = self.k
        eye = np.eye(k, dtype=np.uint8)
        stripe = np.zeros((self.rows, self.cols, k), dtype=np.uint8)
        for i, c in enumerate(self.data_cells):
            stripe[c] = eye[i]
        stripe = encode(self, stripe)
        return np.array([stripe[c] for c in self.cells], dtype=np.uint8)

    def to_json(self):
        return json.dumps({
            "name": self.name,
            "rows": self.rows,
            "cols": self.cols,
            "roles": [list(r) for r in self.roles],
            "groups": [{"parity": list(g.parity),
                        "members": [list(m) for m in g.members],
                        "coeffs": list(g.coeffs)} for g in self.groups],
            "labels": None if not self.labels else
            [[list(k), v] for k, v in sorted(self.labels.items())],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        labels = None
        if d.get("labels"):
            labels = {tuple(k): v for k, v in d["labels"]}
        groups = [Group(tuple(g["parity"]), [tuple(m) for m in g["members"]], g.get("coeffs"))
                  for g in d["groups"]]
        return cls(d["rows"], d["cols"], d["roles"], groups, d.get("name", ""), labels)


class XorCounter:
    def __init__(self):
        self.xors = 0
        self.mults = 0


def encode(layout, stripe, counter=None):
    """Fill every parity cell of ``stripe`` (shape rows x cols x L)."""
    out = np.array(stripe, dtype=np.uint8, copy=True)
    known = set(layout.data_cells)
    pending = list(layout.groups)
    while pending:
        rest = []
        for g in pending:
            if g.parity in known:
                continue
            if all(m in known for m in g.members):
                acc = None
                for m, a in zip(g.members, g.coeffs):
                    if a == 0:
                        continue
                    term = out[m] if a == 1 else MUL[a][out[m]]
                    if counter is not None and a != 1:
                        counter.mults += 1
                    if acc is None:
                        acc = term.copy()
                    else:
                        acc ^= term
                        if counter is not None:
                            counter.xors += 1
                out[g.parity] = acc if acc is not None else 0
                known.add(g.parity)
            else:
                rest.append(g)
        if len(rest) == len(pending):
            raise ValueError("parity groups are not computable from data")
        pending = rest
    return out


def check_parities(layout, stripe):
    """Return the groups whose equation is violated."""
    bad = []
    for g in layout.groups:
        acc = stripe[g.parity].copy()
        for m, a in zip(g.members, g.coeffs):
            acc ^= MUL[a][stripe[m]]
        if acc.any():
            bad.append(g)
    return bad


def expand_erasures(layout, erased=(), columns=()):
    cells = set(tuple(c) for c in erased)
    for col in columns:
        cells.update(layout.column_cells(col))
    valid = set(layout.cells)
    return sorted(c for c in cells if c in valid)


def decode(layout, stripe, erased, peel_only=False):
    """Recover erased cells.  Peel one-unknown groups first, lowest (row, col)
    unknown first; then solve what is left as a linear system.

    Returns ``(stripe, stuck)``; ``stuck`` lists cells that could not be
    determined (empty on success).
    """
    out = np.array(stripe, dtype=np.uint8, copy=True)
    unknown = set(tuple(c) for c in erased)
    for c in unknown:
        out[c] = 0
    groups = [g for g in layout.groups if any(c in unknown for c in g.cells)]
    while unknown:
        best = None
        for g in groups:
            miss = [c for c in g.cells if c in unknown]
            if len(miss) == 1 and g.coeff_of(miss[0]) != 0:
                if best is None or miss[0] < best[0]:
                    best = (miss[0], g)
        if best is None:
            break
        cell, g = best
        acc = np.zeros_like(out[cell])
        for c in g.cells:
            if c != cell:
                acc ^= MUL[g.coeff_of(c)][out[c]]
        out[cell] = MUL[INV[g.coeff_of(cell)]][acc]
        unknown.discard(cell)
    if unknown and not peel_only:
        unk = sorted(unknown)
        col = {c: i for i, c in enumerate(unk)}
        eqs = [g for g in layout.groups if any(c in unknown for c in g.cells)]
        a = np.zeros((len(eqs), len(unk)), dtype=np.uint8)
        b = np.zeros((len(eqs),) + out.shape[2:], dtype=np.uint8)
        for i, g in enumerate(eqs):
            for c in g.cells:
                co = g.coeff_of(c)
                if c in col:
                    a[i, col[c]] ^= co
                else:
                    b[i] ^= MUL[co][out[c]]
        try:
            x = solve_overdetermined(a, b)
        except SingularMatrixError:
            return out, unk
        for c, i in col.items():
            out[c] = x[i]
        unknown.clear()
    return out, sorted(unknown)


def decode_or_raise(layout, stripe, erased):
    out, stuck = decode(layout, stripe, erased)
    if stuck:
        raise UnrecoverableError("cannot recover %d cell(s): %s" % (len(stuck), stuck[:6]))
    return out


def recoverable(layout, erased):
    """Rank test on the parity-check columns of the erased cells."""
    idx = layout.index()
    e = [idx[tuple(c)] for c in erased]
    if not e:
        return True
    h = layout.parity_check()
    return matrix_rank(h[:, e]) == len(e)


def recoverable_many(layout, patterns):
    """Vectorised rank test; ``patterns`` is a list of equal-size cell lists."""
    idx = layout.index()
    if len(patterns) == 0:
        return np.zeros(0, dtype=bool)
    pats = np.array([[idx[tuple(c)] for c in p] for p in patterns], dtype=np.int64)
    if pats.ndim == 1:
        pats = pats.reshape(len(patterns), 0)
    return _kernels.batch_full_rank(layout.parity_check(), pats)


def recoverable_by_generator(layout, erased, gen=None):
    """Oracle: the surviving cells must still span all k data symbols."""
    if gen is None:
        gen = layout.generator()
    idx = layout.index()
    gone = set(idx[tuple(c)] for c in erased)
    keep = [i for i in range(len(idx)) if i not in gone]
    return matrix_rank(gen[keep]) == layout.k


def random_stripe(layout, length, rng):
    s = np.zeros((layout.rows, layout.cols, length), dtype=np.uint8)
    for c in layout.data_cells:
        s[c] = rng.integers(0, 256, size=length, dtype=np.uint8)
    return encode(layout, s)


def column_pairs(layout):
    return list(itertools.combinations(range(layout.cols), 2))
