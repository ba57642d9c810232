"""Assorted closed-form models: multilevel RAID, replica placement, parity
aging, exponential mixtures and the LRC repair chain."""
import math
from dataclasses import dataclass
from math import factorial

from .basic import raid5_roots
from .ctmc import CTMCModel, ctmc_mtta


def raid15_mttdl_approx(n, d):
    """Two mirrored RAID5 arrays of N+1 disks, each side treated as one
    exponential component with the RAID5 MTTDL."""
    return 1.5 * d.mttf ** 2 / (n * (n + 1) * d.mttr)


def raid15_mttdl_exact(n, d):
    """Integral of 2 R5(t) - R5(t)^2 with R5 from the two-root form."""
    z, e = raid5_roots(n, d.delta, d.mu)
    a, b = z / (z - e), -e / (z - e)       # R5 = a e^{e t} + b e^{z t}
    one = -(a / e + b / z)
    two = -(a * a / (2 * e) + b * b / (2 * z) + 2 * a * b / (e + z))
    return 2 * one - two


def raid51_path(D, d):
    """Shortest-path estimate for RAID5 over D mirrored pairs (N = 2D)."""
    delta, mu = d.delta, d.mu
    p_u = (D - 1) * delta ** 3 / (2 * mu ** 3)
    p_l = (D - 1) * delta ** 3 / mu ** 3
    p_dl = p_u + p_l
    mttdl = 1.0 / (2 * D * delta * p_dl)
    return {"p_u": p_u, "p_l": p_l, "p_dl": p_dl, "mttdl": mttdl,
            "closed": mu ** 3 / (3 * D * (D - 1) * delta ** 4)}


def multilevel_mttdl(kind, n, d):
    if kind == "raid15_approx":
        return raid15_mttdl_approx(n, d)
    if kind == "raid15_exact":
        return raid15_mttdl_exact(n, d)
    if kind == "raid51_path":
        return raid51_path(n, d)["mttdl"]
    raise ValueError("unknown kind %r" % kind)


def placement_metrics(scheme, n, c, r, b, delta):
    """(MTTDL hours, EAFDL per hour) for clustered or declustered r-way
    replication; 1/mu = c/b is the time to read one device."""
    if r < 2 or b <= 0 or c <= 0:
        raise ValueError("need r >= 2 and positive c, b")
    if scheme == "clustered":
        mttdl = (b / (delta * c)) ** (r - 1) / (n * delta)
        eafdl = (delta * c / b) ** (r - 1) * delta
    elif scheme == "declustered":
        prod = 1.0
        for e in range(1, r - 1):
            prod *= ((n - e) / (r - e)) ** (r - e - 1)
        mttdl = (b / (2 * delta * c)) ** (r - 1) * factorial(r - 1) / (n * delta) * prod
        prod = 1.0
        for e in range(1, r):
            prod *= ((r - e) / (n - e)) ** (r - e)
        eafdl = (2 * delta * c / b) ** (r - 1) * delta / factorial(r - 1) * prod
    else:
        raise ValueError("scheme must be clustered or declustered")
    return mttdl, eafdl


def expected_loss(mttdl, eafdl, n, c, r):
    """E[H] implied by EAFDL = E[H] / (MTTDL U), U = n c / r."""
    return eafdl * mttdl * n * c / r


def diffraid_aging(parities, n):
    if abs(sum(parities) - 100) > 1e-9:
        raise ValueError("parity shares must sum to 100")
    w = [p * (n - 1) + (100 - p) for p in parities]
    return [[wi / wj for wj in w] for wi in w]


@dataclass(frozen=True)
class ExpMixture:
    terms: tuple     # (A_i, sigma_i)

    def reliability(self, t):
        return sum(a * math.exp(-s * t) for a, s in self.terms)

    def mttf(self):
        return exp_mixture_mttf(self)


def exp_mixture_mttf(m):
    if any(s <= 0 for _, s in m.terms):
        raise ValueError("decay rates must be positive")
    return sum(a / s for a, s in m.terms)


def raid5_mixture(n_data, d):
    z, e = raid5_roots(n_data, d.delta, d.mu)
    return ExpMixture(((z / (z - e), -e), (-e / (z - e), -z)))


def lrc_chain(n=10, delta=1 / 16000, p_d=0.86, S=16e12, B=1e9, eps=0.1, T=0.5, avg_fragments=3.6):
    """Repair chain of a (6,2,2) LRC over n nodes.

    States count live nodes.  A fourth failure is survivable with probability
    p_d; multi-failure states are cleared at 1/T, the single-failure state at
    eps (n-1) B / (S C) with S in bytes, B in bit/s and C fragments per repair.
    """
    rho1 = eps * (n - 1) * B / (8 * S * avg_fragments) * 3600.0
    st = ["S%d" % (n - i) for i in range(5)] + ["F"]
    tr = [("S%d" % n, "S%d" % (n - 1), n * delta),
          ("S%d" % (n - 1), "S%d" % (n - 2), (n - 1) * delta),
          ("S%d" % (n - 2), "S%d" % (n - 3), (n - 2) * delta),
          ("S%d" % (n - 3), "S%d" % (n - 4), (n - 3) * delta * p_d),
          ("S%d" % (n - 3), "F", (n - 3) * delta * (1 - p_d)),
          ("S%d" % (n - 4), "F", (n - 4) * delta),
          ("S%d" % (n - 1), "S%d" % n, rho1),
          ("S%d" % (n - 2), "S%d" % (n - 1), 1 / T),
          ("S%d" % (n - 3), "S%d" % (n - 2), 1 / T),
          ("S%d" % (n - 4), "S%d" % (n - 3), 1 / T)]
    return CTMCModel.from_transitions(st, tr, ["F"], start="S%d" % n)


def lrc_mttdl(**kw):
    return ctmc_mtta(lrc_chain(**kw))[0]
