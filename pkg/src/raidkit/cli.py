"""Command-line front end: ``raidkit <group> <command> [options]``."""
import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

PRESETS = {
    "resch": {"mttr": 1.0, "rows": "10:10,10:9,10:8,10:7,10:6",
              "mttf": {"10:10": 2000, "10:9": 2000, "10:8": 1500, "10:7": 500, "10:6": 200},
              "replications": 50_000},
    "idr-sata": {"seg_len": 128, "interleaves": 8, "p_bit": 1e-14, "capacity": 300e9, "n": 8},
}


class UsageError(Exception):
    pass


@dataclass
class ReportTable:
    headers: list
    rows: list
    note: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.headers):
                raise ValueError("ragged table row")

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.headers)
        for r in self.rows:
            w.writerow([_cell_text(c) for c in r])
        return buf.getvalue()

    def to_json(self):
        return json.dumps({"headers": self.headers, "rows": [[_jsonable(c) for c in r] for r in self.rows],
                           "note": self.note, "meta": _jsonable(self.meta)}, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["headers"], d["rows"], d.get("note", ""), d.get("meta", {}))

    def to_text(self):
        cells = [[str(h) for h in self.headers]] + [[_cell_text(c) for c in r] for r in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.headers))]
        # the last column is left-aligned so one long trailing value does not pad every row
        lines = ["  ".join([c.rjust(w) for c, w in zip(r[:-1], widths)] + [r[-1]]) for r in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        if self.note:
            lines.append("")
            lines.append(self.note)
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        return {"table": self.to_text, "csv": self.to_csv, "json": lambda: self.to_json() + "\n"}[fmt]()


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _cell_text(c):
    if isinstance(c, (float, np.floating)):
        c = float(c)
        if c != 0 and (abs(c) >= 1e5 or abs(c) < 1e-3):
            return "%.4e" % c
        return "%.6g" % c
    if isinstance(c, (bool, np.bool_)):
        return "true" if c else "false"
    return str(c)


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def _parse_rows(text):
    out = []
    for part in text.split(","):
        n, k = part.split(":")
        out.append((int(n), int(k)))
    return out


# ---------------------------------------------------------------- code

def _code_layout(a):
    from . import codes
    fam = a.family
    try:
        if fam == "rdp":
            return codes.rdp_layout(a.p)
        if fam == "xcode":
            return codes.xcode_layout(a.p)
        if fam == "hvpc":
            return codes.hvpc_layout(a.k1, a.k2)
        if fam == "raid5":
            return codes.layout_raid5(a.n, 1)
        if fam == "azure-lrc":
            return codes.azure_layout(a.n, a.k, a.r)
        if fam == "pmds":
            return codes.pmds_example()
    except ValueError as e:
        raise UsageError(str(e))
    raise UsageError(f"unknown family {fam!r}")


def cmd_code(a):
    from . import codes
    from .rng import stream
    lay = _code_layout(a)
    if a.action == "metrics":
        rep = codes.repair_metrics(lay, pairs=False)
        return ReportTable(["family", "n", "k", "ARC", "NRC", "DRC"],
                           [[a.family, len(lay.cells), lay.k, float(rep.arc), float(rep.nrc), float(rep.drc)]],
                           "average, normalized and data repair cost in blocks read")
    if a.action == "pmds":
        res = codes.pmds_sd_check(lay, 1, 2)
        return ReportTable(list(res.keys()), [[_jsonable(v) for v in res.values()]])
    rng = stream(a.seed, 0)
    stripe = codes.random_stripe(lay, a.length, rng)
    if a.action == "encode":
        rows = [[lay.label(c), lay.role(c), bytes(stripe[c]).hex()] for c in lay.cells]
        return ReportTable(["cell", "role", "hex"], rows)
    if a.action == "check":
        return ReportTable(["family", "parities_ok"], [[a.family, not codes.check_parities(lay, stripe)]])
    if a.action == "decode":
        erased = codes.expand_erasures(lay, [tuple(map(int, x.split("."))) for x in a.erase if x],
                                       _ints(a.erase_cols))
        damaged = stripe.copy()
        for c in erased:
            damaged[c] = 0
        out, stuck = codes.decode(lay, damaged, erased)
        ok = not stuck and bool(np.array_equal(out, stripe))
        return ReportTable(["family", "erased", "recovered"], [[a.family, len(erased), ok]],
                           "recovered: %s" % ("true" if ok else "false"))
    raise UsageError(f"unknown code action {a.action!r}")


# ---------------------------------------------------------------- rel

def cmd_rel(a):
    from . import reliability as rel
    if a.action == "validate-chen-angus":
        from .sim import SimConfig, simulate_kofn_repair
        pre = PRESETS["resch"]
        rows_txt = a.rows or pre["rows"]
        reps = a.replications or pre["replications"]
        out = []
        for n, k in _parse_rows(rows_txt):
            mttf = a.mttf or pre["mttf"].get(f"{n}:{k}")
            if mttf is None:
                raise UsageError(f"no MTTF for row {n}:{k}; pass --mttf")
            d = rel.DriveParams(mttf, a.mttr)
            chen = rel.mttdl_closed_form("chen", n, n - k, d)
            angus = rel.mttdl_closed_form("angus", n, n - k, d)
            c = _sim_config(a, replications=reps)
            r = simulate_kofn_repair(n, k, mttf, a.mttr, "proportional", c, jobs=a.jobs)
            out.append([n, k, mttf, r.mean, r.ci95[0], r.ci95[1], chen, r.mean / chen, angus, r.mean / angus])
        return ReportTable(["n", "k", "MTTF", "Simul", "ci_lo", "ci_hi", "Chen", "S/C", "Angus", "S/A"], out,
                           "hours; simulation with proportional repair, MTTR=%g" % a.mttr)
    if a.action == "idr":
        pre = PRESETS["idr-sata"]
        p = rel.LSEParams(p_bit=a.p_bit or pre["p_bit"], seg_len=pre["seg_len"], interleaves=pre["interleaves"])
        n = a.n or pre["n"]
        rows = []
        for s in ("none", "rs", "spc", "ipc"):
            pi, pc = rel.pseg(s, "independent", p), rel.pseg(s, "correlated", p)
            rows.append([s, pi, pc, rel.puf(n, 1, pi, p, pre["capacity"]), rel.puf(n, 1, pc, p, pre["capacity"])])
        return ReportTable(["scheme", "pseg_indep", "pseg_corr", "puf_indep", "puf_corr"], rows,
                           "segment of %d sectors, %d interleaves, %d disks" % (p.seg_len, p.interleaves, n))
    if a.action == "shortcut":
        n = a.n or 8
        rows = []
        for s in ("bm", "cd", "grd", "id", "raid5", "raid6", "raid7", "lsi", "sspiral"):
            if s in ("lsi", "sspiral") and n != 8:
                continue
            c = a.c if s == "id" else None
            poly = rel.system_poly(s, n, c or (2 if s == "id" else None))
            coef, pw = poly.leading_term()
            rows.append([s, n, str(coef), pw, str(poly.mttf_fraction())])
        return ReportTable(["system", "N", "coefficient", "power", "mttf_fraction"], rows,
                           "1 - R ~ coefficient * eps^power; MTTF in units of the disk MTTF")
    if a.action == "raid5":
        d = rel.DriveParams(a.mttf or 1e5, a.mttr)
        n = a.n or 7
        ctmc = rel.ctmc_mtta(rel.raid5_chain(n, d.delta, d.mu))[0]
        return ReportTable(["n_data", "closed", "ctmc"], [[n, rel.raid5_mttdl(n, d.delta, d.mu), ctmc]])
    raise UsageError(f"unknown rel action {a.action!r}")


# ---------------------------------------------------------------- queue

def cmd_queue(a):
    from . import perf
    try:
        if a.action == "mm1":
            R, W, rho = perf.mm1(a.lam, a.m1)
            return ReportTable(["lam", "m1", "rho", "W", "R"], [[a.lam, a.m1, rho, W, R]])
        if a.action == "mmm":
            return ReportTable(["lam", "m1", "m", "R"], [[a.lam, a.m1, a.m, perf.mmm(a.lam, a.m1, a.m)]])
        if a.action == "mg1":
            s = perf.ServiceMoments(a.m1, a.m2 if a.m2 else 2 * a.m1 ** 2,
                                    a.m3 if a.m3 else 6 * a.m1 ** 3)
            q = perf.mg1(a.lam, s)
            return ReportTable(["W", "W2", "var_W", "R", "R2", "scv_R"], [[q.W, q.W2, q.var_W, q.R, q.R2, q.scv_R]])
        if a.action == "fj":
            R = a.R if a.R is not None else 1.0
            v = perf.fj_response(a.n, a.rho, R, a.sigma, a.method)
            return ReportTable(["method", "n", "rho", "R", "response"], [[a.method, a.n, a.rho, R, v]])
        if a.action == "vsm":
            g = perf.default_geometry() if not a.geometry else perf.DiskGeometry.from_json(open(a.geometry).read())
            s = perf.service_moments(g, perf.WorkloadMix(0.0, 1.0, a.block_sectors))
            v = perf.disk_vacations(g)
            rows = []
            for rho in np.linspace(a.rho_min, a.rho_max, a.points):
                lam = float(rho) / s.m1
                r = perf.vsm_rebuild(lam, s, v, a.tracks, a.k)
                rows.append([float(rho), r.W, r.n_track, r.T_rebuild])
            return ReportTable(["rho", "W_VSM_ms", "n_track", "T_rebuild_ms"], rows,
                               "k=%d redirection steps, %d tracks" % (a.k, a.tracks))
    except ValueError as e:
        raise UsageError(str(e))
    raise UsageError(f"unknown queue action {a.action!r}")


# ---------------------------------------------------------------- layout

def cmd_layout(a):
    from . import layouts as L
    try:
        if a.action == "bibd":
            lay = L.bibd_layout(L.bibd_builtin_10_4() if a.n == 10 and a.g == 4 else L.bibd_complete(a.n, a.g))
        elif a.action == "nrp":
            lay = L.nrp_layout(a.n, a.g, a.seed)
        elif a.action == "shifted":
            lay = L.shifted_layout(a.n, a.g)
        elif a.action == "raid5":
            lay = L.raid5_clustered(a.n, a.n)
        elif a.action == "check":
            text = sys.stdin.read() if a.input in (None, "-") else open(a.input).read()
            try:
                d = json.loads(text)
            except json.JSONDecodeError as e:
                raise UsageError(f"input is not JSON: {e}")
            if "rows" in d and "meta" in d and "layout" in d["meta"]:
                d = d["meta"]["layout"]
            lay = L.ClusteredLayout.from_json(json.dumps(d))
            props = L.layout_properties(lay)
            ok = bool(props["i_single_failure"]) and not props["bad_groups"]
            return ReportTable(["property", "value"], [[k, _jsonable(v)] for k, v in props.items()] + [["pass", ok]])
        else:
            raise UsageError(f"unknown layout action {a.action!r}")
    except ValueError as e:
        raise UsageError(str(e))
    rows = [[r] + [f"{lay.role[r][d]}{lay.pg[r, d]}" if lay.pg[r, d] >= 0 else "-" for d in range(lay.n_disks)]
            for r in range(lay.rows)]
    return ReportTable(["row"] + [f"disk{d}" for d in range(lay.n_disks)], rows, lay.name,
                       {"layout": json.loads(lay.to_json())})


# ---------------------------------------------------------------- sim

def _sim_config(a, **over):
    from .sim import SimConfig
    c = SimConfig.from_file(a.config) if a.config else SimConfig()
    if a.seed is not None:
        c.seed = a.seed
    for k, v in over.items():
        if v is not None:
            setattr(c, k, v)
    return c


def cmd_sim(a):
    from . import sim
    from .layouts import copysets_permutation
    if a.action == "kofn":
        c = _sim_config(a, replications=a.replications)
        r = sim.simulate_kofn_repair(a.n, a.k, a.mttf, a.mttr, a.policy, c, jobs=a.jobs)
        return ReportTable(["n", "k", "mean", "ci_lo", "ci_hi", "reps"], [[a.n, a.k, r.mean, *r.ci95, r.n]])
    if a.action == "hraid":
        c = _sim_config(a, replications=a.replications)
        if not a.config:
            c.topology = {"n_nodes": a.nodes, "disks_per_node": a.disks, "inter_k": a.inter_k, "intra_l": a.intra_l}
            c.rates = {"delta": a.delta, "gamma": a.gamma, "mu": a.mu}
            c.mode = "hraid_option_" + a.option
        r = sim.simulate_hraid(c, jobs=a.jobs)
        return ReportTable(["mode", "mean", "ci_lo", "ci_hi", "controller", "disk"],
                           [[c.mode, r.mean, *r.ci95, r.split["controller"], r.split["disk"]]])
    if a.action == "copyset":
        c = _sim_config(a, replications=a.replications)
        rows = []
        if a.scheme == "random":
            for S in _ints(a.scatter):
                r = sim.simulate_copyset(("window", a.n, a.R, S), a.fail_prob, c, jobs=a.jobs)
                rows.append([S, r.mean, *r.ci95])
        else:
            for P in _ints(a.scatter):
                plan = copysets_permutation(a.n, a.R, P, seed=c.seed)
                r = sim.simulate_copyset(plan, a.fail_prob, c, jobs=a.jobs)
                rows.append([plan.S, r.mean, *r.ci95])
        return ReportTable(["scatter_width", "P_DL", "ci_lo", "ci_hi"], rows,
                           "%s plan, n=%d, R=%d, node failure probability %g" % (a.scheme, a.n, a.R, a.fail_prob))
    raise UsageError(f"unknown sim action {a.action!r}")


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["table", "csv", "json"], default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--config", default=None)
    common.add_argument("--preset", default=None, choices=sorted(PRESETS))

    p = _Parser(prog="raidkit", description="erasure codes, layouts, reliability and queueing models")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    code = sub.add_parser("code").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for act in ("encode", "decode", "check", "metrics", "pmds"):
        q = code.add_parser(act, parents=[common])
        q.add_argument("--family", default="rdp",
                       choices=["rdp", "xcode", "hvpc", "raid5", "azure-lrc", "pmds"])
        q.add_argument("--p", type=int, default=5)
        q.add_argument("--n", type=int, default=10)
        q.add_argument("--k", type=int, default=6)
        q.add_argument("--r", type=int, default=3)
        q.add_argument("--k1", type=int, default=3)
        q.add_argument("--k2", type=int, default=3)
        q.add_argument("--length", type=int, default=16)
        q.add_argument("--erase", nargs="*", default=[], help="cells as row.col")
        q.add_argument("--erase-cols", default="")
        q.set_defaults(fn=cmd_code)

    rel = sub.add_parser("rel").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for act in ("validate-chen-angus", "idr", "shortcut", "raid5"):
        q = rel.add_parser(act, parents=[common])
        q.add_argument("--mttr", type=float, default=1.0)
        q.add_argument("--mttf", type=float, default=None)
        q.add_argument("--rows", default=None)
        q.add_argument("--replications", type=int, default=None)
        q.add_argument("--n", type=int, default=None)
        q.add_argument("--c", type=int, default=2)
        q.add_argument("--p-bit", type=float, default=None)
        q.set_defaults(fn=cmd_rel)

    queue = sub.add_parser("queue").add_subparsers(dest="action", required=True,
                                                                     parser_class=_Parser)
    for act in ("mm1", "mmm", "mg1", "fj", "vsm"):
        q = queue.add_parser(act, parents=[common])
        q.add_argument("--lam", type=float, default=0.5)
        q.add_argument("--m1", type=float, default=1.0)
        q.add_argument("--m2", type=float, default=None)
        q.add_argument("--m3", type=float, default=None)
        q.add_argument("--m", type=int, default=2)
        q.add_argument("--n", type=int, default=2)
        q.add_argument("--rho", type=float, default=0.0)
        q.add_argument("--R", type=float, default=None)
        q.add_argument("--sigma", type=float, default=None)
        q.add_argument("--method", default="exact2", choices=["exact2", "nelson", "max_exp", "max_evd", "max_erlang"])
        q.add_argument("--geometry", default=None)
        q.add_argument("--block-sectors", type=int, default=8)
        q.add_argument("--tracks", type=int, default=10_000)
        q.add_argument("--k", type=int, default=1)
        q.add_argument("--rho-min", type=float, default=0.05)
        q.add_argument("--rho-max", type=float, default=0.45)
        q.add_argument("--points", type=int, default=9)
        q.set_defaults(fn=cmd_queue)

    lay = sub.add_parser("layout").add_subparsers(dest="action", required=True,
                                                                    parser_class=_Parser)
    for act in ("bibd", "nrp", "shifted", "raid5", "check"):
        q = lay.add_parser(act, parents=[common])
        q.add_argument("--n", type=int, default=10)
        q.add_argument("--g", type=int, default=4)
        q.add_argument("--input", default=None)
        q.set_defaults(fn=cmd_layout)

    sm = sub.add_parser("sim").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for act in ("kofn", "hraid", "copyset"):
        q = sm.add_parser(act, parents=[common])
        q.add_argument("--replications", type=int, default=None)
        q.add_argument("--n", type=int, default=10)
        q.add_argument("--k", type=int, default=9)
        q.add_argument("--mttf", type=float, default=2000.0)
        q.add_argument("--mttr", type=float, default=1.0)
        q.add_argument("--policy", default="proportional", choices=["proportional", "single_repairman"])
        q.add_argument("--nodes", type=int, default=6)
        q.add_argument("--disks", type=int, default=6)
        q.add_argument("--inter-k", type=int, default=1)
        q.add_argument("--intra-l", type=int, default=1)
        q.add_argument("--delta", type=float, default=1e-3)
        q.add_argument("--gamma", type=float, default=1e-4)
        q.add_argument("--mu", type=float, default=0.1)
        q.add_argument("--option", default="III", choices=["I", "II", "III"])
        q.add_argument("--R", type=int, default=3)
        q.add_argument("--scheme", default="random", choices=["random", "permutation"])
        q.add_argument("--scatter", default="2,4,10,50")
        q.add_argument("--fail-prob", type=float, default=0.01)
        q.set_defaults(fn=cmd_sim)
    return p


def main(argv=None):
    try:
        a = build_parser().parse_args(argv)
        if a.seed is None and not a.config:
            a.seed = 0
        if a.preset == "resch" and a.group == "rel" and getattr(a, "action", "") == "validate-chen-angus":
            a.mttr = PRESETS["resch"]["mttr"]
        fmt = a.format or os.environ.get("RAIDKIT_FORMAT", "table")
        if fmt not in ("table", "csv", "json"):
            raise UsageError(f"bad output format {fmt!r}")
        if a.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        table = a.fn(a)
    except UsageError as e:
        print(f"raidkit: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as e:
        print(f"raidkit: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(table.render(fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
