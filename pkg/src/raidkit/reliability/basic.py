"""Array reliability in closed form: AFR, k-of-n, RAID5 transient, MTTDL."""
import math
from dataclasses import dataclass
from math import comb

HOURS_PER_YEAR = 8766.0


@dataclass(frozen=True)
class DriveParams:
    mttf: float
    mttr: float = 1.0
    capacity: float = 300e9
    sector_size: int = 512

    def __post_init__(self):
        if self.mttf <= 0 or self.mttr <= 0:
            raise ValueError("mttf and mttr must be positive")

    @property
    def delta(self):
        return 1.0 / self.mttf

    @property
    def mu(self):
        return 1.0 / self.mttr

    @classmethod
    def from_afr(cls, afr, mttr=1.0, **kw):
        if not 0 < afr < 1:
            raise ValueError("AFR must lie in (0, 1)")
        return cls(-HOURS_PER_YEAR / math.log1p(-afr), mttr, **kw)


def afr_from_mttf(mttf):
    """(exact, linear) annual failure rate."""
    if mttf <= 0:
        raise ValueError("mttf must be positive")
    x = HOURS_PER_YEAR / mttf
    return -math.expm1(-x), x


def kofn_no_repair(n, k, r):
    """Survives while at most k of the n components have failed."""
    if not 0 <= r <= 1:
        raise ValueError("r must be a probability")
    return sum(comb(n, i) * r ** (n - i) * (1 - r) ** i for i in range(k + 1))


class DegenerateRootsError(ArithmeticError):
    pass


def raid5_roots(n_data, delta, mu):
    """Roots zeta > eta of s^2 + ((2N+1)d + mu) s + N(N+1)d^2 (both negative)."""
    a = (2 * n_data + 1) * delta + mu
    disc = delta * delta + mu * mu + 2 * (2 * n_data + 1) * delta * mu
    s = math.sqrt(disc)
    # the smaller-magnitude root via the product avoids cancellation
    eta = -(a + s) / 2
    zeta = n_data * (n_data + 1) * delta * delta / eta
    return zeta, eta


def raid5_transient(n_data, d, t):
    """R(t) for N data disks plus one parity (N+1 disks in total)."""
    zeta, eta = raid5_roots(n_data, d.delta, d.mu)
    if zeta == eta:
        raise DegenerateRootsError("repeated root; use ctmc_transient")
    return (zeta * math.exp(eta * t) - eta * math.exp(zeta * t)) / (zeta - eta)


def raid5_mttdl(n_data, delta, mu):
    return ((2 * n_data + 1) * delta + mu) / (n_data * (n_data + 1) * delta * delta)


def mttdl_closed_form(method, n, k=1, d=None, g=1):
    """MTTDL in hours.

    ``k`` is the number of disk failures tolerated.  raid5: ``n`` data disks
    plus parity; chen: n disks total, MTTF^(k+1) / (n(n-1)...(n-k) MTTR^k);
    angus: n disks, n-k needed, repair rate proportional to failed disks.
    ``g`` identical independent groups divide the result.
    """
    mttf, mttr = d.mttf, d.mttr
    if method == "raid5":
        out = raid5_mttdl(n, d.delta, d.mu)
    elif method == "chen":
        den = 1.0
        for i in range(k + 1):
            den *= n - i
        out = mttf ** (k + 1) / (den * mttr ** k)
    elif method == "angus":
        need = n - k
        s = sum(comb(n, i) * (mttr / mttf) ** i for i in range(k + 1))
        out = mttf ** (k + 1) / (need * comb(n, need) * mttr ** k) * s
    else:
        raise ValueError("unknown method %r" % method)
    return out / g


def birth_death_mtta(up, down):
    """Mean time from state 0 to absorption past the last state.

    up[i] leaves state i towards i+1, down[i] towards i-1 (down[0] unused).
    T_i, the mean passage time i -> i+1, obeys T_i = (1 + down_i T_{i-1}) / up_i.
    """
    total = 0.0
    prev = 0.0
    for i, u in enumerate(up):
        dn = down[i] if i else 0.0
        prev = (1.0 + dn * prev) / u
        total += prev
    return total


def kofn_rates(n, k, delta, mu, repair="fixed"):
    """Birth-death rates of an n-disk array tolerating k failures."""
    up = [(n - i) * delta for i in range(k + 1)]
    if repair == "fixed":
        down = [0.0] + [mu] * k
    elif repair == "proportional":
        down = [0.0] + [i * mu for i in range(1, k + 1)]
    else:
        raise ValueError("repair must be 'fixed' or 'proportional'")
    return up, down


def kofn_mttdl(n, k, d, repair="fixed"):
    """Exact MTTDL of the k-of-n repairable chain."""
    return birth_death_mtta(*kofn_rates(n, k, d.delta, d.mu, repair))
