"""Time the hot kernels with numba and with the pure-numpy fallback.

Each backend runs in its own subprocess because the switch is read at
import time.  Usage: python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CHILD = r"""
import json, sys, time
import numpy as np
from orbitpart import backend, catalog
from orbitpart.solver import ColorClasses, brute_force_solve, min_norm_point, solve_with_restarts
from orbitpart.testmap import Configuration, build_testmap, random_points

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
P = rng.standard_normal((40, 39))
min_norm_point(P)  # compile

def best(fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

def classes(key, seed):
    e = catalog.resolve(key)
    tm = build_testmap(e.rep, Configuration(random_points(e.N_bound, e.d, seed)))
    return ColorClasses.from_testmap(tm)

c3, c4, q8, tet = classes("cyclic:3", 0), classes("cyclic:4", 0), classes("Q8", 0), classes("tetrahedral", 0)
solve_with_restarts(c3, seed=0)
out = {
    "backend": backend(),
    "min_norm_point_40x39_x200": best(lambda: [min_norm_point(P) for _ in range(200)]),
    "brute_force_r3_N5": best(lambda: brute_force_solve(c3)),
    "brute_force_r4_N8": best(lambda: brute_force_solve(c4)),
    "pivoting_Q8": best(lambda: solve_with_restarts(q8, seed=1)),
    "pivoting_tetrahedral": best(lambda: solve_with_restarts(tet, seed=1)),
}
print(json.dumps(out))
"""


def run(disable, repeat):
    env = dict(os.environ, ORBITPART_DISABLE_NUMBA="1" if disable else "0")
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", CHILD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    res = json.loads(proc.stdout.strip().splitlines()[-1])
    res["wall_including_startup"] = time.perf_counter() - t
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':32s} {'numba [s]':>12s} {'numpy [s]':>12s} {'speedup':>9s}")
    for k in fast:
        if k == "backend":
            continue
        print(f"{k:32s} {fast[k]:12.4f} {slow[k]:12.4f} {slow[k] / fast[k]:9.1f}x")


if __name__ == "__main__":
    main()
