"""Arithmetic in GF(2^8) and on byte blocks.

Elements are plain ints in 0..255.  Blocks are 1-D ``numpy.uint8`` arrays and
matrices are 2-D ``numpy.uint8`` arrays.  Addition is XOR throughout.
"""
import numpy as np

POLY = 0x11D  # x^8 + x^4 + x^3 + x^2 + 1

EXP = np.zeros(512, dtype=np.int64)
LOG = np.zeros(256, dtype=np.int64)
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= POLY
for _i in range(255, 512):
    EXP[_i] = EXP[_i - 255]
del _x, _i

# full product table, MUL[a] is the row used to scale a block by a
MUL = np.zeros((256, 256), dtype=np.uint8)
_nz = np.arange(1, 256)
for _a in range(1, 256):
    MUL[_a, 1:] = EXP[LOG[_a] + LOG[_nz]]
del _a, _nz
INV = np.zeros(256, dtype=np.uint8)
INV[1:] = EXP[255 - LOG[np.arange(1, 256)]]


class SingularMatrixError(ValueError):
    """Raised when a linear system has no unique solution."""


def gf_add(a, b):
    return a ^ b


def gf_mul(a, b):
    if a == 0 or b == 0:
        return 0
    return int(EXP[LOG[a] + LOG[b]])


def gf_inv(a):
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(256)")
    return int(INV[a])


def gf_div(a, b):
    return gf_mul(a, gf_inv(b))


def gf_pow(a, e):
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(EXP[(LOG[a] * e) % 255])


def block(data, length=None):
    """Make a block from bytes, an int sequence or a length (zero block)."""
    if isinstance(data, (int, np.integer)) and length is None:
        return np.zeros(int(data), dtype=np.uint8)
    b = np.frombuffer(bytes(data), dtype=np.uint8).copy() if isinstance(data, (bytes, bytearray)) \
        else np.asarray(data, dtype=np.uint8).copy()
    if length is not None and b.size != length:
        raise ValueError("block length %d, expected %d" % (b.size, length))
    return b


def scale_block(a, blk):
    """Multiply every byte of ``blk`` by field element ``a``."""
    return MUL[a][blk]


def xor_blocks(*blocks):
    out = np.zeros_like(blocks[0])
    for b in blocks:
        out ^= b
    return out


def mat_mul(a, b):
    """Matrix product over GF(256). ``b`` may be a matrix or a stack of blocks."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    out = np.zeros((a.shape[0],) + b.shape[1:], dtype=np.uint8)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j]:
                out[i] ^= MUL[a[i, j]][b[j]]
    return out


def _eliminate(m, rhs=None):
    """Reduce ``m`` in place to reduced row-echelon form. Returns pivot columns."""
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
            if rhs is not None:
                rhs[[r, p]] = rhs[[p, r]]
        inv = INV[m[r, c]]
        m[r] = MUL[inv][m[r]]
        if rhs is not None:
            rhs[r] = MUL[inv][rhs[r]]
        for i in np.nonzero(m[:, c])[0]:
            if i != r:
                f = m[i, c]
                m[i] ^= MUL[f][m[r]]
                if rhs is not None:
                    rhs[i] ^= MUL[f][rhs[r]]
        pivots.append(c)
        r += 1
    return pivots


def matrix_rank(m):
    m = np.array(m, dtype=np.uint8, copy=True)
    if m.size == 0:
        return 0
    return len(_eliminate(m))


def solve_linear(m, rhs):
    """Solve ``m x = rhs`` for a square nonsingular ``m``.

    ``rhs`` is a sequence of blocks (or field elements); the result has the
    same shape.
    """
    m = np.array(m, dtype=np.uint8, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("solve_linear needs a square matrix")
    b = np.array(rhs, dtype=np.uint8, copy=True)
    if b.shape[0] != m.shape[0]:
        raise ValueError("rhs length does not match matrix")
    piv = _eliminate(m, b)
    if len(piv) < m.shape[0]:
        raise SingularMatrixError("matrix is singular (rank %d of %d)" % (len(piv), m.shape[0]))
    return b


def solve_overdetermined(m, rhs):
    """Solve a consistent system with full column rank but possibly extra rows."""
    m = np.array(m, dtype=np.uint8, copy=True)
    b = np.array(rhs, dtype=np.uint8, copy=True)
    piv = _eliminate(m, b)
    n = m.shape[1]
    if len(piv) < n:
        raise SingularMatrixError("system has rank %d, needs %d" % (len(piv), n))
    return b[:n]


def vandermonde(points, rows):
    return np.array([[gf_pow(x, i) for x in points] for i in range(rows)], dtype=np.uint8)


def cauchy(xs, ys):
    """Cauchy matrix 1/(x_i + y_j); every square submatrix is nonsingular."""
    return np.array([[gf_inv(x ^ y) for y in ys] for x in xs], dtype=np.uint8)
