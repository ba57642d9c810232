"""Absorbing continuous-time Markov chains."""
import json
import math
from dataclasses import dataclass

import numpy as np


class SingularChainError(np.linalg.LinAlgError):
    pass


@dataclass
class CTMCModel:
    states: list
    Q: np.ndarray
    absorbing: list
    initial: np.ndarray

    def __post_init__(self):
        self.Q = np.asarray(self.Q, dtype=float)
        self.initial = np.asarray(self.initial, dtype=float)
        n = len(self.states)
        if self.Q.shape != (n, n):
            raise ValueError("generator must be %dx%d" % (n, n))
        off = self.Q - np.diag(np.diag(self.Q))
        if (off < 0).any():
            raise ValueError("negative off-diagonal rate")
        if np.abs(self.Q.sum(axis=1)).max() > 1e-9 * max(1.0, np.abs(self.Q).max()):
            raise ValueError("rows must sum to zero")
        for a in self.absorbing:
            if np.any(self.Q[self.index(a)] != 0):
                raise ValueError("absorbing state %r has outgoing rates" % (a,))

    def index(self, s):
        return self.states.index(s) if not isinstance(s, int) else s

    @property
    def transient(self):
        ab = {self.index(a) for a in self.absorbing}
        return [i for i in range(len(self.states)) if i not in ab]

    @classmethod
    def from_transitions(cls, states, transitions, absorbing, start=0):
        """transitions: iterable of (from, to, rate) by state name."""
        idx = {s: i for i, s in enumerate(states)}
        Q = np.zeros((len(states), len(states)))
        for a, b, rate in transitions:
            if rate:
                Q[idx[a], idx[b]] += rate
                Q[idx[a], idx[a]] -= rate
        init = np.zeros(len(states))
        init[idx[start] if not isinstance(start, int) else start] = 1.0
        return cls(list(states), Q, list(absorbing), init)

    def to_json(self):
        return json.dumps({"states": list(map(str, self.states)), "rates": self.Q.tolist(),
                           "absorbing": list(map(str, self.absorbing)),
                           "initial": self.initial.tolist()})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["states"], np.array(d["rates"]), d["absorbing"], np.array(d["initial"]))


def ctmc_mtta(m):
    """(mean time to absorption, {absorbing state: probability}).

    The time spent in transient states solves tau (-Q_T) = pi_T(0).
    """
    tr = m.transient
    QT = m.Q[np.ix_(tr, tr)]
    try:
        if abs(np.linalg.det(-QT)) == 0:
            raise np.linalg.LinAlgError
        tau = np.linalg.solve(-QT.T, m.initial[tr])
    except np.linalg.LinAlgError:
        raise SingularChainError("absorption unreachable from some transient state") from None
    if not np.all(np.isfinite(tau)) or (tau < -1e-12 * max(1.0, tau.max())).any():
        raise SingularChainError("absorption unreachable from some transient state")
    probs = {}
    for a in m.absorbing:
        probs[a] = float(tau @ m.Q[tr, m.index(a)])
    return float(tau.sum()), probs


def ctmc_transient(m, t, tol=1e-12):
    """State probabilities at time t by uniformization."""
    p0 = m.initial.astype(float)
    if t == 0:
        return p0.copy()
    q = float(np.max(-np.diag(m.Q))) if m.Q.size else 0.0
    if q == 0:
        return p0.copy()
    q *= 1.02
    P = np.eye(len(p0)) + m.Q / q
    lam = q * t
    # Poisson weights computed in log space so large q t does not underflow
    kmax = int(lam + 10 * math.sqrt(lam) + 50)
    out = np.zeros_like(p0)
    theta = p0.copy()
    acc = 0.0
    mode = int(lam)
    for k in range(kmax * 4 + 1):
        w = math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1))
        out += w * theta
        acc += w
        if k > mode and 1.0 - acc < tol:
            break
        theta = theta @ P
    return out


def raid5_chain(n_data, delta, mu):
    st = ["S0", "S1", "DL"]
    return CTMCModel.from_transitions(st, [("S0", "S1", (n_data + 1) * delta), ("S1", "S0", mu),
                                           ("S1", "DL", n_data * delta)], ["DL"])


def birth_death_chain(up, down):
    n = len(up)
    st = ["S%d" % i for i in range(n)] + ["DL"]
    tr = []
    for i in range(n):
        tr.append((st[i], st[i + 1], up[i]))
        if i:
            tr.append((st[i], st[i - 1], down[i]))
    return CTMCModel.from_transitions(st, tr, ["DL"])
