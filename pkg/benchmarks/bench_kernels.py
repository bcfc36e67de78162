"""Compare the compiled search kernels against the pure-Python fallback.

Each case runs in a fresh subprocess (backend selection happens at import
time, via PGCODES_PURE_PYTHON), checks that both backends return the same
answer, and prints a timing table.

Usage: python3 benchmarks/bench_kernels.py
"""
from __future__ import annotations

import json
import os
import subprocess
import sys

WEIGHT_CASE = r"""
import json, time
from pgcodes import kernels
from pgcodes.codes import Code
from pgcodes.projgeom import projective_space

code = Code(projective_space(3, 1, 3))
basis = code.generator_basis()
t0 = time.perf_counter()
hist = kernels.weight_histogram(basis, 3)
dt = time.perf_counter() - t0
print(json.dumps({"backend": kernels.backend_name(), "seconds": dt,
                  "check": [int(hist[13]), int(hist[18])]}))
"""

TANGENT_CASE = r"""
import json, time
import numpy as np
from pgcodes import kernels
from pgcodes.blocking import line_cache
from pgcodes.projgeom import projective_space

space = projective_space(5, 1, 2)
cache = line_cache(space)
n = space.num_points
t0 = time.perf_counter()
cands, nodes, completed = kernels.tangent_free_sets(
    cache.line_points, cache.point_lines, n, 9, 10**9, 10**6, 0, n, True)
dt = time.perf_counter() - t0
print(json.dumps({"backend": kernels.backend_name(), "seconds": dt,
                  "check": [len(cands), int(nodes), bool(completed)]}))
"""

CASES = [
    ("weight histogram, 3^11 words (PG(3,3))", WEIGHT_CASE),
    ("tangent-free DFS, cap 9 (PG(2,5))", TANGENT_CASE),
]


def run(script: str, pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("PGCODES_PURE_PYTHON", None)
    if pure:
        env["PGCODES_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    rows = []
    for label, script in CASES:
        fast = run(script, pure=False)
        slow = run(script, pure=True)
        if fast["check"] != slow["check"]:
            print(f"MISMATCH in {label}: {fast['check']} vs {slow['check']}")
            return 1
        rows.append((label, fast, slow))
    width = max(len(r[0]) for r in rows)
    print(f"{'case'.ljust(width)}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for label, fast, slow in rows:
        ratio = slow["seconds"] / fast["seconds"] if fast["seconds"] > 0 else float("inf")
        note = "" if fast["backend"] == "compiled" else "  (no compiled backend!)"
        print(
            f"{label.ljust(width)}  {fast['seconds']:>9.3f}s  {slow['seconds']:>9.3f}s  "
            f"{ratio:>7.1f}x{note}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
