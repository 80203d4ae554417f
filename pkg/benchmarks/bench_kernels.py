#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the group-theory hot loops (conjugacy partition, class constants) and
the mod-p linear algebra (charpoly, rref, root scan) on mid-sized inputs with
both backends and prints the timings side by side.

    python benchmarks/bench_kernels.py [--repeat 3]

The active default backend is chosen at import time by ORBIRR_NO_NUMBA; this
script times both implementations regardless.
"""

import argparse
import time

import numpy as np

from orbirr import _kernels as kern
from orbirr.groups import symmetric


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--group-degree", type=int, default=7,
                        help="benchmark S_n of this degree (default S7, order 5040)")
    args = parser.parse_args()

    G = symmetric(args.group_degree)
    print(f"group: {G.name}, order {G.order}")
    elems, order = G._arr, G._lex
    gen_rows = np.array(G.generators, dtype=np.int64)
    gen_inv = np.argsort(gen_rows, axis=1)
    class_of = G.class_of_index()
    reps_idx = np.array([G.index(c.representative)
                         for c in G.conjugacy_classes()], dtype=np.int64)

    # a mod-p matrix workload shaped like the Dixon computation
    p = 61
    a = G.class_constant_tensor() % p
    M = np.ascontiguousarray(a[1].T)

    workloads = {
        "conjugacy_partition": lambda impl: impl["conjugacy_partition"](
            elems, order, gen_rows, gen_inv),
        "class_constants": lambda impl: impl["class_constants"](
            elems, order, class_of, reps_idx),
        "modp_charpoly": lambda impl: impl["modp_charpoly"](M, p),
        "modp_rref": lambda impl: impl["modp_rref"](M.copy(), p),
        "modp_poly_roots": lambda impl: impl["modp_poly_roots"](
            kern.modp_charpoly(M, p), p),
    }

    if "numba" in kern.IMPLS:
        for name, load in workloads.items():
            load(kern.IMPLS["numba"])  # trigger JIT before timing

    header = f"{'kernel':22s}" + "".join(f"{b:>12s}" for b in kern.IMPLS)
    print(header)
    print("-" * len(header))
    for name, load in workloads.items():
        row = f"{name:22s}"
        times = {}
        for backend, impl in kern.IMPLS.items():
            times[backend] = _median_time(lambda: load(impl), args.repeat)
            row += f"{times[backend]*1e3:10.2f}ms"
        if "numba" in times and times["numba"] > 0:
            row += f"   ({times['numpy'] / times['numba']:.1f}x)"
        print(row)

    # cross-check: both backends must agree exactly
    for name, load in workloads.items():
        outs = [load(impl) for impl in kern.IMPLS.values()]
        first = outs[0]
        for other in outs[1:]:
            if isinstance(first, tuple):
                assert all(np.array_equal(x, y) for x, y in zip(first, other))
            else:
                assert np.array_equal(first, other), name
    print("backends agree on all workloads")


if __name__ == "__main__":
    main()
