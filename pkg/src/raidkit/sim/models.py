"""Monte Carlo simulators for the analytic reliability models."""
import math

import numpy as np

from .. import _kernels
from ..layouts.copysets import CopysetPlan
from .engine import run_replications, summarize

HRAID_MODES = {"hraid_option_I": (False, True), "hraid_option_II": (True, False),
               "hraid_option_III": (False, False)}


def _hraid_rep(rng, p):
    return p["kernel"](p["N"], p["M"], p["k"], p["ell"], p["delta"], p["gamma"], p["mu"],
                       p["restripe"], p["live_ctrl"], p["guard"], rng)


def simulate_hraid(c, jobs=1, backend=None):
    """Hierarchical array: N nodes of M disks, each node survives ell disk
    failures, the system survives k node failures.

    Option I forces k = 0. Option II rebuilds a failed node by restriping at
    rate mu per failed node. Option III has no rebuild. Samples are the
    clock at data loss; ``split`` counts controller- versus disk-caused loss."""
    t, r = c.topology, c.rates
    if c.mode not in HRAID_MODES:
        raise ValueError(f"mode must be one of {sorted(HRAID_MODES)}")
    restripe, force_k0 = HRAID_MODES[c.mode]
    N, M = int(t["n_nodes"]), int(t["disks_per_node"])
    D = N * M
    kern = _kernels if backend is None else _kernels.backend(backend)
    p = dict(kernel=kern.hraid_one, N=N, M=M, k=0 if force_k0 else int(t.get("inter_k", 0)),
             ell=int(t.get("intra_l", 0)), delta=float(r.get("delta", 0.0)),
             gamma=float(r.get("gamma", 0.0)), mu=float(r.get("mu", 0.0)),
             restripe=restripe, live_ctrl=bool(t.get("live_ctrl", False)),
             guard=int(max(1000, 50 * D * math.log(D + 1))))
    if p["k"] >= N:
        raise ValueError("inter_k must be below the node count")
    res = run_replications(_hraid_rep, p, c.seed, c.replications, jobs)
    clocks = [x[0] for x in res]
    fcd = [x[1] for x in res]
    split = {"controller": sum(1 for f in fcd if f == 0), "disk": sum(1 for f in fcd if f == 1)}
    extra = {"max_rejections": max(x[4] for x in res)}
    return summarize(clocks, split, extra)


def kofn_chain(n, k, mttf, mttr, repair_policy):
    """Birth-death rates of an n-disk array that needs k working disks."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    tol = n - k
    delta, mu = 1.0 / mttf, 1.0 / mttr
    up = [(n - i) * delta for i in range(tol + 1)]
    if repair_policy == "single_repairman":
        down = [0.0] + [mu] * tol
    elif repair_policy == "proportional":
        down = [0.0] + [i * mu for i in range(1, tol + 1)]
    else:
        raise ValueError("repair_policy must be single_repairman or proportional")
    return up, down


def absorption_time(rng, up, down):
    """Exact sample of the time from state 0 to absorption above the last state.

    Up-crossings of edge (i, i+1) exceed down-crossings by one, so counting
    from the top: ups(i) = downs(i+1) + 1, and the downs taken at i before
    its ups(i)-th up are negative binomial. Holding times are then summed as
    one gamma draw per state."""
    top = len(up)
    ups = 1
    t = 0.0
    for i in range(top - 1, -1, -1):
        r = up[i] + down[i]
        q = up[i] / r
        downs = int(rng.negative_binomial(ups, q)) if q < 1.0 else 0
        t += rng.gamma(ups + downs, 1.0 / r)
        ups = downs + 1
    return t


def _kofn_rep(rng, p):
    if p["method"] == "race":
        return p["race"](p["up"], p["down"], rng)[0]
    return absorption_time(rng, p["up"], p["down"])


def simulate_kofn_repair(n, k, mttf, mttr, repair_policy, c, jobs=1, method="compressed", backend=None):
    up, down = kofn_chain(n, k, mttf, mttr, repair_policy)
    kern = _kernels if backend is None else _kernels.backend(backend)
    p = {"up": np.array(up), "down": np.array(down), "method": method, "race": kern.race_one}
    res = run_replications(_kofn_rep, p, c.seed, c.replications, jobs)
    return summarize(res)


def _plan_loss_fn(plan):
    cs = np.asarray(plan.copysets, dtype=np.int64)
    return lambda failed: bool(failed[cs].all(axis=1).any())


def window_loss_mask(failed, R, S):
    """Vectorized loss test of the random-window plan on a boolean vector."""
    n = len(failed)
    idx = np.flatnonzero(failed)
    if len(idx) < R:
        return False
    ext = np.concatenate([idx, idx + n])
    hi = np.searchsorted(ext, idx + S, side="right")
    lo = np.searchsorted(ext, idx, side="right")
    return bool(((hi - lo) >= R - 1).any())


def _copyset_rep(rng, p):
    n = p["n"]
    failed = np.zeros(n, dtype=bool)
    if p["exact"] is not None:
        failed[rng.choice(n, p["exact"], replace=False)] = True
    else:
        failed = rng.random(n) < p["q"]
    if p["window"] is not None:
        return window_loss_mask(failed, p["R"], p["window"])
    return p["cs"] is not None and bool(failed[p["cs"]].all(axis=1).any())


def simulate_copyset(plan, node_fail_prob, c, jobs=1, exact_failures=None):
    """P_DL estimate. ``plan`` is a CopysetPlan or ("window", n, R, S) for the
    random-replication plan checked without listing its copysets."""
    if isinstance(plan, CopysetPlan):
        p = {"n": plan.n_nodes, "R": plan.R, "window": None,
             "cs": np.asarray(plan.copysets, dtype=np.int64)}
    else:
        _, n, R, S = plan
        p = {"n": n, "R": R, "window": S, "cs": None}
    p.update(q=float(node_fail_prob), exact=exact_failures)
    if node_fail_prob == 0 and exact_failures is None:
        return summarize(np.zeros(c.replications))
    res = run_replications(_copyset_rep, p, c.seed, c.replications, jobs)
    return summarize(np.array(res, dtype=float))


def _static_rep(rng, p):
    alive = rng.random(p["n"]) < p["r"]
    failed = frozenset(int(i) for i in np.flatnonzero(~alive))
    return not p["loses"](failed)


def simulate_static_loss(loss_predicate, n, r, c, jobs=1):
    """Reliability estimate when each of n units survives with probability r."""
    if n > 64:
        raise ValueError("n must be <= 64")
    p = {"n": n, "r": r, "loses": loss_predicate}
    res = run_replications(_static_rep, p, c.seed, c.replications, jobs)
    return summarize(np.array(res, dtype=float))
