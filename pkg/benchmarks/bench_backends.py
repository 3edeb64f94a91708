#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot pairwise paths (mixed distance matrix build, weighted
substitution reduction, kernel + separation matrices with reduction) at a
few sizes and prints per-backend timings plus the speedup. Also checks that
both backends agree, since a fast wrong kernel would be worse than no
kernel.

Usage: python benchmarks/bench_backends.py [--sizes 100,300,600] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from degres import _kernels_py

try:
    from degres import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled


def _inputs(n: int, rng: np.random.Generator):
    cat = np.ascontiguousarray(rng.integers(0, 5, (n, 3)), dtype=np.int64)
    num = np.ascontiguousarray(rng.random((n, 3)))
    cap = np.ascontiguousarray(rng.uniform(0.2, 1.0, n))
    load = np.ascontiguousarray(rng.uniform(0.0, 0.2, n))
    w = np.ascontiguousarray(rng.uniform(0.0, 1.0, n))
    idx = np.arange(n, dtype=np.int64)
    perf = np.ascontiguousarray(rng.random((n, 3)))
    struct = np.ascontiguousarray(rng.uniform(0.01, 1.0, (n, 8)))
    return cat, num, cap, load, w, idx, perf, struct


def _time(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench(n: int, repeat: int) -> None:
    rng = np.random.default_rng(2024)
    cat, num, cap, load, w, idx, perf, struct = _inputs(n, rng)
    print(f"\nn = {n}")
    rows = {}
    for name, mod in BACKENDS.items():
        t_dist, (dmat, _) = _time(lambda m=mod: m.mixed_distance_matrix(cat, num), repeat)
        t_fss, fss_out = _time(
            lambda m=mod, d=dmat: m.fss_pair_reduction(d, cap, load, w, idx, 0.5), repeat
        )

        def arq_path(m=mod):
            kmat, _ = m.gaussian_kernel_matrix(perf, 0.5)
            smat, _ = m.cosine_dissimilarity_matrix(struct)
            return m.arq_pair_reduction(kmat, smat, 0.6, 0.2)

        t_arq, arq_out = _time(arq_path, repeat)
        rows[name] = (t_dist, t_fss, t_arq, fss_out, arq_out)
        print(
            f"  {name:<7} distance_matrix {t_dist * 1e3:9.2f} ms   "
            f"fss_reduction {t_fss * 1e3:9.2f} ms   arq_path {t_arq * 1e3:9.2f} ms"
        )
    if len(rows) == 2:
        py, cy = rows["python"], rows["cython"]
        for label, i in (("distance_matrix", 0), ("fss_reduction", 1), ("arq_path", 2)):
            print(f"  speedup {label}: {py[i] / cy[i]:.1f}x")
        assert py[3][0] == cy[3][0], "distinct-pair counts diverge between backends"
        assert abs(py[3][1] - cy[3][1]) < 1e-9, "weighted sums diverge between backends"
        assert abs(py[4][0] - cy[4][0]) < 1e-9, "soft sums diverge between backends"
        assert py[4][1] == cy[4][1], "hard counts diverge between backends"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,300,600", help="comma-separated element counts")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best-of)")
    args = parser.parse_args()
    if _compiled is None:
        print("compiled extension not built; timing the pure-Python fallback only")
    for n in (int(s) for s in args.sizes.split(",")):
        bench(n, args.repeat)


if __name__ == "__main__":
    main()
