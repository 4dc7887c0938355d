"""Compare the compiled reductions with the NumPy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. The kernel timings call
both implementations directly on a level-16 table; the end-to-end timing
runs ``lambda_dimension`` for the middle-thirds system in a fresh
interpreter per backend so the import-time selection is exercised.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from thermoifs import _kernels_py, middle_thirds
from thermoifs._tables import level_table

try:
    from thermoifs import _kernels as _compiled
except ImportError:
    _compiled = None

END_TO_END = """
import time
from thermoifs import PotentialSpec, lambda_dimension, middle_thirds, BACKEND
t0 = time.perf_counter()
r = lambda_dimension(middle_thirds(), PotentialSpec.delta_geometric(), 1.0, {depth})
print(BACKEND, time.perf_counter() - t0, r.s)
"""


def bench_kernel(depth: int, repeat: int):
    table = level_table(middle_thirds(), depth)
    sym = np.ascontiguousarray(table.counts[:, 1], dtype=float)
    args = (0.7, table.logd_lo, table.logd_hi, 0.3, sym)
    rows = []
    for name, mod in (("python", _kernels_py), ("compiled", _compiled)):
        if mod is None:
            continue
        best = min(timeit.repeat(lambda: mod.lse_max2(*args), number=20, repeat=repeat)) / 20
        rows.append((name, best, mod.lse_max2(*args)))
    return len(table), rows


def bench_end_to_end(depth: int):
    rows = []
    for name, env in (("python", {"THERMOIFS_PURE_PYTHON": "1"}), ("compiled", {})):
        out = subprocess.run([sys.executable, "-c", END_TO_END.format(depth=depth)],
                             env={**os.environ, **env}, capture_output=True, text=True,
                             check=True).stdout.split()
        rows.append((name, out[0], float(out[1]), float(out[2])))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    n, rows = bench_kernel(args.depth, args.repeat)
    print(f"lse_max2 over {n} cylinders (best of {args.repeat})")
    for name, sec, val in rows:
        print(f"  {name:9s} {sec * 1e3:8.3f} ms   value={val!r}")
    if len(rows) == 2:
        print(f"  speedup   {rows[0][1] / rows[1][1]:8.2f}x")

    print(f"lambda_dimension, middle thirds, depth {args.depth}")
    for name, loaded, sec, s in bench_end_to_end(args.depth):
        print(f"  {name:9s} {sec:8.3f} s    backend={loaded} s={s!r}")


if __name__ == "__main__":
    main()
