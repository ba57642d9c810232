"""Adaptive Simpson quadrature."""
import math


def adaptive_simpson(f, a, b, tol=1e-9, max_depth=60):
    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4 * fm + fb)

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        if depth <= 0 or abs(left + right - whole) <= 15 * tol:
            return left + right + (left + right - whole) / 15
        return (rec(a, m, fa, flm, fm, left, tol / 2, depth - 1)
                + rec(m, b, fm, frm, fb, right, tol / 2, depth - 1))

    # split first so narrow features near the origin are not skipped
    pieces = 32
    h = (b - a) / pieces
    total = 0.0
    for i in range(pieces):
        lo, hi = a + i * h, a + (i + 1) * h
        fa, fm, fb = f(lo), f((lo + hi) / 2), f(hi)
        total += rec(lo, hi, fa, fm, fb, simpson(fa, fm, fb, lo, hi), tol / pieces, max_depth)
    return total
