"""Replication engine: per-replication streams, ordered merge, normal CIs."""
import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from ..rng import stream

Z95 = 1.959963984540054


def _load_toml(text):
    try:
        import tomllib
    except ImportError:  # Python < 3.11
        import tomli as tomllib
    return tomllib.loads(text)


@dataclass
class SimConfig:
    seed: int = 0
    replications: int = 10_000
    topology: dict = field(default_factory=dict)
    rates: dict = field(default_factory=dict)
    mode: str = "repair"

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if any(v < 0 for v in self.rates.values()):
            raise ValueError("rates must be nonnegative")

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(int(d.get("seed", 0)), int(d.get("replications", 10_000)),
                   dict(d.get("topology", {})), dict(d.get("rates", {})), d.get("mode", "repair"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            text = fh.read()
        if str(path).endswith(".toml"):
            return cls.from_dict(_load_toml(text))
        return cls.from_json(text)


@dataclass
class SimReport:
    samples: np.ndarray
    mean: float
    ci95: tuple
    stderr: float
    split: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.samples)

    def covers(self, value):
        return self.ci95[0] <= value <= self.ci95[1]

    def to_dict(self, samples=False):
        d = {"n": self.n, "mean": self.mean, "ci95": list(self.ci95), "stderr": self.stderr,
             "split": self.split, "extra": self.extra}
        if samples:
            d["samples"] = [float(x) for x in self.samples]
        return d

    def to_json(self, samples=False):
        return json.dumps(self.to_dict(samples), sort_keys=True)

    def samples_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["replication", "value"])
        for i, x in enumerate(self.samples):
            w.writerow([i, repr(float(x))])
        return buf.getvalue()


def summarize(samples, split=None, extra=None):
    x = np.asarray(samples, dtype=float)
    n = len(x)
    mean = float(x.mean())
    se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return SimReport(x, mean, (mean - Z95 * se, mean + Z95 * se), se, split or {}, extra or {})


def _run_chunk(args):
    fn, seed, lo, hi, params = args
    return [fn(stream(seed, i), params) for i in range(lo, hi)]


def run_replications(fn, params, seed, reps, jobs=1, chunk=None):
    """Evaluate ``fn(rng_i, params)`` for i in 0..reps-1 and return the list of
    results in replication order. The i-th stream depends only on (seed, i),
    so the output does not depend on ``jobs``."""
    if jobs <= 1 or reps < 2:
        return _run_chunk((fn, seed, 0, reps, params))
    if chunk is None:
        chunk = max(1, -(-reps // (jobs * 4)))
    tasks = [(fn, seed, lo, min(reps, lo + chunk), params) for lo in range(0, reps, chunk)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_run_chunk, tasks):
            out.extend(part)
    return out
