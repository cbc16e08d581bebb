"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--functions 2000] [--repeat 3] [--suite core]

Each row times one kernel over the same batch of random tables in both
backends and checks that they return the same witnesses. ``--suite`` also
times a full ``qlat verify`` run under each backend.
"""
import argparse
import itertools
import os
import subprocess
import sys
import time

import numpy as np

from qlat import kernels
from qlat.lattice import chain


def _time(fn, batch, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(*args) for args in batch]
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(n_functions: int, seed: int):
    rng = np.random.default_rng(seed)
    C3, C4 = chain(3), chain(4)
    ident3 = np.arange(3, dtype=np.int32)
    ident4 = np.arange(4, dtype=np.int32)

    def tables(L, n, count):
        # monotone tables with a few flips, so witnesses are not always at index 0
        base = np.array([min(sum(d), L.size - 1) for d in itertools.product(range(L.size), repeat=n)],
                        dtype=np.int32)
        for _ in range(count):
            t = base.copy()
            idx = rng.integers(0, len(t), size=rng.integers(0, 3))
            t[idx] = rng.integers(0, L.size, size=len(idx))
            yield t

    perms3 = np.array(list(itertools.permutations(range(3))), dtype=np.int32)
    mask3 = np.ones(3, dtype=np.uint8)
    yield "dnf_table chain(4)^3", "dnf_table", [
        (np.sort(rng.integers(0, 4, size=8)).astype(np.int32), 3, 4, C4.meet, C4.join, C4.top)
        for _ in range(n_functions)]
    yield "compose_table chain(3)^3", "compose_table", [
        (t, ident3[::-1].copy(), 3, 3, 3) for t in tables(C3, 3, n_functions)]
    yield "median_witness chain(3)^3", "median_witness", [
        (t, 3, 3, 0, 2, ident3, C3.meet, C3.join) for t in tables(C3, 3, n_functions)]
    yield "order_witness chain(3)^3", "order_witness", [
        (t, 3, 3, C3.leq, C3.leq) for t in tables(C3, 3, n_functions)]
    yield "homogeneity_witness chain(3)^3", "homogeneity_witness", [
        (t, 3, 3, C3.meet, C3.meet, ident3, mask3) for t in tables(C3, 3, n_functions)]
    yield "horizontal_witness chain(3)^3", "horizontal_witness", [
        (t, 3, 3, C3.join, C3.meet, C3.leq, True, 2) for t in tables(C3, 3, n_functions)]
    yield "comonotone_witness chain(4)^3", "comonotone_witness", [
        (t, 3, 4, ident4, C4.leq, perms3, C4.meet, C4.meet) for t in tables(C4, 3, max(1, n_functions // 20))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--functions", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", choices=["core", "chains", "transformed", "all"])
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    print(f"{'workload':34s} {'calls':>6s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, name, batch in workloads(args.functions, args.seed):
        tp, outp = _time(getattr(kernels.pure, name), batch, args.repeat)
        tc, outc = _time(getattr(kernels.compiled, name), batch, args.repeat)
        same = all(np.array_equal(np.asarray(a), np.asarray(b)) for a, b in zip(outp, outc))
        flag = "" if same else "  MISMATCH"
        print(f"{label:34s} {len(batch):6d} {tp:10.3f} {tc:10.4f} {tp / max(tc, 1e-9):7.0f}x{flag}")
    if args.suite:
        cmd = [sys.executable, "-m", "qlat.cli", "verify", "--suite", args.suite,
               "--max-elems", "3", "--max-arity", "2"]
        times = {}
        for backend, pure in (("python", "1"), ("cython", "0")):
            t0 = time.perf_counter()
            proc = subprocess.run(cmd, env={**os.environ, "QLAT_PURE": pure}, capture_output=True)
            times[backend] = time.perf_counter() - t0
            status = "pass" if proc.returncode == 0 else f"exit {proc.returncode}"
            print(f"verify --suite {args.suite} [{backend}]: {times[backend]:.1f}s ({status})")
        print(f"suite speedup: {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
