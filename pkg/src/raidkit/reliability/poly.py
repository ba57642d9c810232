"""Reliability polynomials R = sum_i A(N,i) r^(N-i) (1-r)^i and the shortcut
(leading unreliability term) method."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from ..layouts.mirror import mirror_map, survivable_closed

ENUM_CAP = 16


@dataclass(frozen=True)
class ReliabilityPolynomial:
    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.coeffs[0] != 1:
            raise ValueError("A(N,0) must be 1")
        for i, a in enumerate(self.coeffs):
            if not 0 <= a <= comb(self.n, i):
                raise ValueError("A(N,%d)=%d outside [0, C(N,%d)]" % (i, a, i))

    def A(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def reliability(self, r):
        return sum(a * r ** (self.n - i) * (1 - r) ** i for i, a in enumerate(self.coeffs))

    def unreliability_poly(self):
        """Integer coefficients u_j of 1 - R in powers of eps = 1 - r."""
        u = [0] * (self.n + 1)
        u[0] = 1
        for i, a in enumerate(self.coeffs):
            # (1-eps)^(N-i) eps^i
            m = self.n - i
            for j in range(m + 1):
                u[i + j] -= a * comb(m, j) * (-1) ** j
        return u

    def leading_term(self):
        """(coefficient, power) of the lowest-order term of 1 - R."""
        for p, c in enumerate(self.unreliability_poly()):
            if c:
                return Fraction(c), p
        return Fraction(0), None

    def mttf_fraction(self):
        """Integral of R(t) for r = exp(-delta t), in units of 1/delta."""
        n = self.n
        return sum(Fraction(a * factorial(n - i - 1) * factorial(i), factorial(n))
                   for i, a in enumerate(self.coeffs) if i < n)


def _trim(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def enumerate_poly(loses, n):
    """A(N,i) counted over all i-subsets; ``loses(failed_set)`` flags data loss."""
    if n > ENUM_CAP:
        raise ValueError("enumeration capped at n=%d" % ENUM_CAP)
    out = []
    for i in range(n + 1):
        out.append(sum(1 for fs in combinations(range(n), i) if not loses(frozenset(fs))))
    return ReliabilityPolynomial(n, _trim(out))


def mirror_poly(org, n, c=None):
    org = org.upper()
    if org in ("BM", "GRD") and n % 2:
        raise ValueError("%s needs an even number of disks" % org)
    if org == "ID" and (c is None or n % c):
        raise ValueError("ID needs c dividing n")
    top = {"BM": n // 2, "GRD": n // 2, "ID": c, "CD": n // 2}[org]
    return ReliabilityPolynomial(n, _trim([survivable_closed(org, n, i, c) for i in range(top + 1)]))


def mirror_loss_predicate(org, n, c=None):
    return mirror_map(org, n, c).loses_data


def code_loss_predicate(layout):
    """Column-failure predicate for an XOR stripe layout (one column per disk)."""
    from ..codes.recover import xor_recoverable
    from ..codes.layout import expand_erasures

    def loses(failed):
        return not xor_recoverable(layout, expand_erasures(layout, [], columns=failed))
    return loses


def _xor_disks_predicate(disks, k):
    """Disks given as bitmasks over k data symbols."""
    def rank(vs):
        basis = []
        for v in vs:
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
        return len(basis)

    def loses(failed):
        return rank(d for j, d in enumerate(disks) if j not in failed) < k
    return loses


def lsi_disks(n=8):
    """D_A, D_A+D_B, D_B, ..., D_last+D_A: data disks alternate with the XOR
    of their ring neighbours."""
    k = n // 2
    out = []
    for i in range(k):
        out.append(1 << i)
        out.append((1 << i) | (1 << ((i + 1) % k)))
    return out


def sspiral_disks(k=4):
    """k data disks plus k parities, parity i = D_i + D_(i+1) + D_(i+2)."""
    data = [1 << i for i in range(k)]
    par = [(1 << i) | (1 << ((i + 1) % k)) | (1 << ((i + 2) % k)) for i in range(k)]
    return data + par


def hybrid_poly(name, n=8):
    if name == "lsi":
        return enumerate_poly(_xor_disks_predicate(lsi_disks(n), n // 2), n)
    if name == "sspiral":
        return enumerate_poly(_xor_disks_predicate(sspiral_disks(n // 2), n // 2), n)
    raise ValueError(name)


def raid_poly(n, tolerated):
    return ReliabilityPolynomial(n, tuple(comb(n, i) for i in range(tolerated + 1)))


def raid15_predicate(n):
    """Two mirrored RAID5 arrays of n disks (disks 0..n-1 and n..2n-1)."""
    def loses(f):
        a = sum(1 for x in f if x < n)
        return a >= 2 and len(f) - a >= 2
    return loses


def raid51_predicate(n):
    """RAID5 over n mirrored pairs (i, i+n)."""
    def loses(f):
        return sum(1 for i in range(n) if i in f and i + n in f) >= 2
    return loses


# Leading unreliability terms as printed in the comparison table; "grd" and
# "lsi" differ from the enumerated polynomials (see shortcut_term).
TABLE_TERMS = {
    "raid5": (lambda n, c: Fraction(comb(n, 2)), 2),
    "bm": (lambda n, c: Fraction(n, 2), 2),
    "cd": (lambda n, c: Fraction(n), 2),
    "grd": (lambda n, c: Fraction(n * (n - 1), 4), 2),
    "id": (lambda n, c: Fraction(n * (n - c), 2 * c), 2),
    "raid6": (lambda n, c: Fraction(comb(n, 3)), 3),
    "lsi": (lambda n, c: Fraction(comb(n, 3)) - Fraction(n, 2), 3),
    "raid7": (lambda n, c: Fraction(comb(n, 4)), 4),
    "sspiral": (lambda n, c: Fraction(comb(n, 4), 5), 4),
    "raid15": (lambda n, c: Fraction(n * n * (n - 1), 4), 4),
    "raid51": (lambda n, c: Fraction(n * (n - 1), 2), 4),
}

DERIVED_TERMS = dict(TABLE_TERMS)
DERIVED_TERMS.update({
    "grd": (lambda n, c: Fraction(n * n, 4), 2),
    "lsi": (lambda n, c: Fraction(n, 2), 3),
    "raid15": (lambda n, c: Fraction(comb(n, 2) ** 2), 4),
})


def system_poly(system, n, c=None):
    s = system.lower()
    if s in ("bm", "cd", "grd", "id"):
        return mirror_poly(s, n, c)
    if s in ("raid5", "raid6", "raid7"):
        return raid_poly(n, {"raid5": 1, "raid6": 2, "raid7": 3}[s])
    if s in ("lsi", "sspiral"):
        return hybrid_poly(s, n)
    if s == "raid15":
        return enumerate_poly(raid15_predicate(n), 2 * n)
    if s == "raid51":
        return enumerate_poly(raid51_predicate(n), 2 * n)
    raise ValueError("unknown system %r" % system)


def shortcut_term(system, n=None, c=None, table=False):
    """(coefficient, power of eps) of 1 - R.  ``system`` is a name or a
    ReliabilityPolynomial.  For raid15/raid51 ``n`` is the disks per side.
    table=True returns the printed table formula instead of the derived one."""
    if isinstance(system, ReliabilityPolynomial):
        return system.leading_term()
    terms = TABLE_TERMS if table else DERIVED_TERMS
    f, p = terms[system.lower()]
    return f(n, c), p


def numeric_slope(poly, eps=1e-4, h=1e-2):
    """d log(1-R) / d log(eps), evaluated exactly in rationals."""
    from math import log
    e1 = Fraction(eps)
    e2 = e1 * Fraction(1 + h).limit_denominator(10 ** 6)
    u = lambda e: 1 - poly.reliability(1 - e)
    return (log(u(e2)) - log(u(e1))) / (log(e2) - log(e1))


def raid15_reliability(n, r):
    r5 = r ** n + n * r ** (n - 1) * (1 - r)
    return 1 - (1 - r5) ** 2


def raid51_reliability(n, r):
    r1 = 1 - (1 - r) ** 2
    return n * r1 ** (n - 1) - (n - 1) * r1 ** n


def hda_compare(eps):
    """Exact reliability of vertical (C1) and horizontal (C2) partitioning of
    8 disks between RAID1 and RAID5, plus their shortcut terms."""
    r = 1 - eps
    c1 = (1 - (1 - r) ** 2) * (r ** 6 + 6 * r ** 5 * (1 - r))
    c2 = (1 - (1 - r) ** 2) ** 4 * (r ** 8 + 8 * r ** 7 * (1 - r))
    return c1, c2


def hda_terms():
    """Leading terms of C1 and C2 by exact polynomial expansion."""
    # C1: a 2-disk mirror next to a 6-disk RAID5; C2: four mirrored pairs
    # in series with an 8-disk RAID5 (independent per-disk reliabilities)
    def mult(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def pow_one_minus(m):  # (1 - eps)^m
        return [comb(m, j) * (-1) ** j for j in range(m + 1)]

    def raid5(w):  # r^w + w eps r^(w-1)
        a = pow_one_minus(w)
        b = [0] + [w * x for x in pow_one_minus(w - 1)]
        return [x + (b[i] if i < len(b) else 0) for i, x in enumerate(a + [0] * (len(b) - len(a)))]

    mirror = [1, 0, -1]
    out = []
    for rel in (mult(mirror, raid5(6)), mult(mult(mult(mult(mirror, mirror), mirror), mirror), raid5(8))):
        u = [-x for x in rel]
        u[0] += 1
        p = next(i for i, x in enumerate(u) if x)
        out.append((Fraction(u[p]), p))
    return tuple(out)
