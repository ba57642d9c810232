"""GF(2) recoverability by bitmask elimination, independent of the GF(256)
machinery used elsewhere."""


def _gf2_rank(vectors):
    basis = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def xor_recoverable(lay, erased):
    """True iff the erased cells are determined by the surviving cells,
    i.e. the parity-check columns of the erased cells are independent."""
    for g in lay.groups:
        if any(c not in (0, 1) for c in g.coeffs):
            raise ValueError("xor_recoverable needs a pure XOR layout")
    erased = [tuple(c) for c in erased]
    pos = {c: i for i, c in enumerate(erased)}
    rows = []
    for g in lay.groups:
        v = 0
        for c, a in zip(g.cells, (1,) + g.coeffs):
            if a and c in pos:
                v ^= 1 << pos[c]
        rows.append(v)
    return _gf2_rank(rows) == len(erased)


def xor_recoverable_labels(lay, names):
    return xor_recoverable(lay, [lay.cell_by_label(n) for n in names])
