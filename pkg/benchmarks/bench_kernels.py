"""Compare the numba kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Kernel timings run in-process through ``Lin(F, backend)``.  The end-to-end
timing runs an ideal census in a subprocess per backend, since the backend
of the algebra layer is fixed at import by OZETA_DISABLE_NUMBA; a small
census runs first so that jit cache loading is not timed.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from ozeta.oracle._kernels import IMPLS
from ozeta.oracle.algebra import quantum_plane
from ozeta.oracle.gf import field
from ozeta.oracle.linalg import Lin

E2E = (
    "import time; from ozeta.oracle import power_series_2d, count_ideals_algebra;"
    "count_ideals_algebra(power_series_2d(2, 3), 3);"
    "t = time.perf_counter(); c = count_ideals_algebra(power_series_2d(2, 5), 5);"
    "print(time.perf_counter() - t, c.counts)"
)


def best(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    F = field(3)
    mats = [rng.integers(0, 3, (30, 40)).astype(np.uint8) for _ in range(50)]
    alg = quantum_plane(2, 4)
    gensT = np.ascontiguousarray(np.stack([g.T for g in alg.generators()]))
    F2 = field(2)
    Ms = np.ascontiguousarray(np.stack([np.eye(6, dtype=np.uint8)] * 2))
    backends = [b for b in ("numba", "numpy") if b in IMPLS]
    rows = []
    for b in backends:
        lin3, lin2 = Lin(F, b), Lin(F2, b)
        # warm up the jit before timing
        lin3.rref(mats[0])
        lin2.closure_scan(np.zeros((0, alg.dim), np.uint8), gensT, 3)
        lin2.invariant_codim(6, 2, Ms)
        rows.append((b, "rref 50x(30x40) F_3", best(lambda: [lin3.rref(m) for m in mats], args.repeat)))
        rows.append((b, "closure scan dim 10", best(lambda: lin2.closure_scan(np.zeros((0, alg.dim), np.uint8), gensT, 3), args.repeat)))
        rows.append((b, "invariant codim (6, 2)", best(lambda: lin2.invariant_codim(6, 2, Ms), args.repeat)))
    for b in backends:
        env = dict(os.environ, OZETA_DISABLE_NUMBA="1" if b == "numpy" else "0")
        out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True, text=True, check=True)
        rows.append((b, "census F_2[[x,y]] colength <= 5", float(out.stdout.split()[0])))
    width = max(len(r[1]) for r in rows)
    print(f"{'backend':8}  {'task':{width}}  seconds")
    for b, task, t in rows:
        print(f"{b:8}  {task:{width}}  {t:.4f}")


if __name__ == "__main__":
    main()
