"""Search kernels: compiled fast path with a pure-Python fallback.

Both backends implement the same three operations with identical outputs:

- weight_histogram(rows, p): weight distribution of the full GF(p)-span
- words_of_weight(rows, p, target, max_count): span words of one weight
- tangent_free_sets(...): DFS over point sets meeting no line exactly once

Set PGCODES_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-parity tests).
"""
from __future__ import annotations

import os

from . import _pure

if os.environ.get("PGCODES_PURE_PYTHON"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _speed

        _impl = _speed
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build host
        _impl = _pure
        BACKEND = "pure"


def backend_name() -> str:
    return BACKEND


def weight_histogram(rows, p):
    return _impl.weight_histogram(rows, p)


def words_of_weight(rows, p, target, max_count):
    return _impl.words_of_weight(rows, p, target, max_count)


def tangent_free_sets(line_points, point_lines, n_points, cap, max_nodes_per_root,
                      max_candidates, root_lo, root_hi, disjoint_tangents=True):
    return _impl.tangent_free_sets(line_points, point_lines, n_points, cap,
                                   max_nodes_per_root, max_candidates, root_lo, root_hi,
                                   disjoint_tangents)
