"""Benchmark the compiled kernels against their pure-Python twins.

Usage:
    python3 benchmarks/bench_kernels.py

Times the three per-digraph hot kernels over the full n=4 enumeration
workload (4096 digraphs) and, when the extension is importable, an
end-to-end exhaustive verification run under each backend (selected via
the DIGENERGY_PURE environment variable in a subprocess).
"""

import os
import pathlib
import subprocess
import sys
import time

SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
sys.path.insert(0, str(SRC))

from digenergy import _kernels_py  # noqa: E402

try:
    from digenergy import _kernels_c
except ImportError:
    _kernels_c = None


def mask_workload(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    work = []
    for mask in range(1 << len(pairs)):
        out = [0] * n
        inn = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                out[i] |= 1 << j
                inn[j] |= 1 << i
        work.append((out, inn))
    return work


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n=4):
    work = mask_workload(n)
    rows = []

    def run(mod, name):
        if name == "walk_counts":
            return lambda: [mod.walk_counts(n, o, i) for o, i in work]
        if name == "scc_ids":
            return lambda: [mod.scc_ids(n, o) for o, _ in work]
        return lambda: [mod.charpoly_from_masks(n, o) for o, _ in work]

    for name in ("walk_counts", "scc_ids", "charpoly_from_masks"):
        pure = timeit(run(_kernels_py, name))
        if _kernels_c is not None:
            comp = timeit(run(_kernels_c, name))
            rows.append((name, pure, comp, pure / comp))
        else:
            rows.append((name, pure, None, None))

    print(f"kernel timings over {len(work)} digraphs (n={n}), best of 3:")
    print(f"  {'kernel':24s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, pure, comp, ratio in rows:
        comp_s = f"{comp * 1e3:8.1f}ms" if comp is not None else "       --"
        ratio_s = f"{ratio:7.1f}x" if ratio is not None else "      --"
        print(f"  {name:24s} {pure * 1e3:8.1f}ms {comp_s} {ratio_s}")


def bench_end_to_end():
    script = ("import time, digenergy; t0=time.monotonic(); "
              "digenergy.verify_all(4, checks=['walk_rowsum','walk_sum_identity',"
              "'rho_chain','energy_bounds','charpoly_reduction_invariance']); "
              "print(f'{time.monotonic()-t0:.2f}')")

    def run(pure):
        env = dict(os.environ)
        env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
        if pure:
            env["DIGENERGY_PURE"] = "1"
        else:
            env.pop("DIGENERGY_PURE", None)
        out = subprocess.run([sys.executable, "-c", script], env=env,
                             capture_output=True, text=True, check=True)
        return float(out.stdout.strip())

    pure = run(pure=True)
    print(f"\nexhaustive n=4 verification (5 checks): pure backend    {pure:6.2f}s")
    if _kernels_c is not None:
        comp = run(pure=False)
        print(f"                                        compiled backend {comp:6.2f}s "
              f"({pure / comp:.2f}x)")
    else:
        print("compiled backend not built; run `python3 setup.py build_ext --inplace`")


if __name__ == "__main__":
    bench_kernels()
    bench_end_to_end()
