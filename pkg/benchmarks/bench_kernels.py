"""Time the compiled and pure-Python traversal kernels on the same levels.

    python benchmarks/bench_kernels.py --levels 15 17 19 21 --repeat 3
"""

import argparse
import time

from cubictau import kernel
from cubictau.reference import TABLE


def best_time(k, level, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        taus, sps, tops = k.count_subtree([0], 1, level)
        best = min(best, time.perf_counter() - t0)
    assert (level, taus[-1], sps[-1], tops[-1]) == TABLE[level - 1]
    return best, sum(taus)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[13, 15, 17, 19, 21])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max", type=int, default=21, help="skip the fallback above this level")
    args = ap.parse_args()

    kernels = kernel.available()
    print(f"{'level':>5} {'nodes':>9} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for level in args.levels:
        row = [f"{level:>5}"]
        ct = pt = None
        nodes = 0
        if "compiled" in kernels:
            ct, nodes = best_time(kernels["compiled"], level, args.repeat)
        if level <= args.python_max:
            pt, nodes = best_time(kernels["python"], level, 1 if level > 18 else args.repeat)
        row.append(f"{nodes:>9}")
        row.append(f"{ct:>11.4f}" if ct is not None else f"{'-':>11}")
        row.append(f"{pt:>10.3f}" if pt is not None else f"{'-':>10}")
        row.append(f"{pt / ct:>7.0f}x" if ct and pt else f"{'-':>8}")
        print(" ".join(row))


if __name__ == "__main__":
    main()
