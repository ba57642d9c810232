"""Compare the compiled kernels with the numpy/Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import itertools
import time

import numpy as np

from raidkit import _kernels
from raidkit.codes import lrc_build
from raidkit.rng import stream


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    lay = lrc_build(6, 2, 2)
    h = lay.parity_check()
    pats = np.array(list(itertools.combinations(range(lay.cols), 4)), dtype=np.int64)
    pats = np.tile(pats, (20, 1))
    up = np.array([10 / 200, 9 / 200, 8 / 200])
    down = np.array([0.0, 1.0, 2.0])

    def rank(k):
        return lambda: k.batch_full_rank(h, pats)

    def race(k):
        def run():
            for i in range(2000):
                k.race_one(up, down, stream(1, i))
        return run

    def hraid(k):
        def run():
            for i in range(1000):
                k.hraid_one(6, 6, 1, 1, 1e-3, 1e-4, 0.0, False, False, 10_000, stream(2, i))
        return run

    return [("batch_full_rank (%d patterns)" % len(pats), rank),
            ("race_one x2000", race), ("hraid_one x1000", hraid)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    py = _kernels.backend("python")
    try:
        cy = _kernels.backend("cython")
    except ImportError:
        cy = None
    print("%-34s %12s %12s %8s" % ("kernel", "python [s]", "cython [s]", "speedup"))
    for name, make in cases():
        tp = _time(make(py), a.repeat)
        if cy is None:
            print("%-34s %12.4f %12s %8s" % (name, tp, "n/a", "-"))
            continue
        tc = _time(make(cy), a.repeat)
        print("%-34s %12.4f %12.4f %7.1fx" % (name, tp, tc, tp / tc))


if __name__ == "__main__":
    main()
