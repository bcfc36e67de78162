"""Pure-Python/numpy kernel backend.

Span enumeration is vectorized in chunks (a precomputed suffix table of the
last rows, an odometer over the remaining prefix rows), so it stays usable
without the compiled extension.  The tangent-free DFS matches the compiled
backend node for node: same traversal order, same pruning, same budgets.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 65536


def _suffix_table(rows: np.ndarray, p: int) -> np.ndarray:
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        r64 = r.astype(np.int64)
        table = np.vstack([(table + c * r64) % p for c in range(p)])
    return table


def _span_scan(rows, p):
    """Yield (chunk_of_words, ) covering the whole GF(p)-span once."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % p
    k, n = rows.shape
    if k == 0:
        yield np.zeros((1, n), dtype=np.int64)
        return
    k0 = 1
    while k0 < k and p ** (k0 + 1) <= _CHUNK:
        k0 += 1
    suffix = _suffix_table(rows[k - k0 :], p)
    kp = k - k0
    prefix = np.zeros(n, dtype=np.int64)
    digits = [0] * kp
    while True:
        yield (prefix[None, :] + suffix) % p
        j = 0
        while j < kp and digits[j] == p - 1:
            digits[j] = 0
            prefix = (prefix + rows[j]) % p
            j += 1
        if j == kp:
            break
        digits[j] += 1
        prefix = (prefix + rows[j]) % p


def weight_histogram(rows, p):
    rows = np.atleast_2d(np.asarray(rows))
    n = rows.shape[1]
    hist = np.zeros(n + 1, dtype=np.int64)
    for chunk in _span_scan(rows, p):
        hist += np.bincount(np.count_nonzero(chunk, axis=1), minlength=n + 1)
    return hist


def words_of_weight(rows, p, target, max_count):
    rows = np.atleast_2d(np.asarray(rows))
    n = rows.shape[1]
    found: list[np.ndarray] = []
    total = 0
    for chunk in _span_scan(rows, p):
        mask = np.count_nonzero(chunk, axis=1) == target
        m = int(np.count_nonzero(mask))
        if m:
            take = chunk[mask]
            for row in take:
                if len(found) < max_count:
                    found.append(row.astype(np.uint8))
            total += m
    words = np.array(found, dtype=np.uint8) if found else np.zeros((0, n), dtype=np.uint8)
    return words, total


def tangent_free_sets(line_points, point_lines, n_points, cap, max_nodes_per_root,
                      max_candidates, root_lo, root_hi, disjoint_tangents=True):
    """Enumerate all point sets S with min(S) in [root_lo, root_hi), |S| <= cap,
    such that no line meets S in exactly one point.

    disjoint_tangents marks structures whose blocking objects pairwise share
    at most one point (lines); it enables the prune "t tangents through one
    point need t distinct extra points".  Pass False for hyperplane-type
    structures in dimension >= 3, where one new point can fix several tangents.

    Returns (candidates, nodes, completed); candidates are ascending index
    tuples in DFS order.  Node/candidate budgets abort with completed=False.
    """
    lp = np.asarray(line_points, dtype=np.int64)
    pl = np.asarray(point_lines, dtype=np.int64)
    L = lp.shape[0]
    cnt = [0] * L
    line_last = [int(r[-1]) for r in lp]
    pls = [[int(x) for x in pl[i]] for i in range(n_points)]
    candidates: list[tuple[int, ...]] = []
    S: list[int] = []
    nodes_total = 0
    completed = True

    def dfs(last: int, nodes_box: list[int]) -> int:
        nodes_box[0] += 1
        if nodes_box[0] > max_nodes_per_root:
            return 1
        t_max = 0
        for P in S:
            t = 0
            for l in pls[P]:
                if cnt[l] == 1:
                    t += 1
                    if line_last[l] <= last:
                        return 0
            if t > t_max:
                t_max = t
        depth = len(S)
        if t_max == 0:
            candidates.append(tuple(S))
            if len(candidates) > max_candidates:
                return 1
        if depth >= cap or (disjoint_tangents and depth + t_max > cap):
            return 0
        for nxt in range(last + 1, n_points):
            for l in pls[nxt]:
                cnt[l] += 1
            S.append(nxt)
            rc = dfs(nxt, nodes_box)
            S.pop()
            for l in pls[nxt]:
                cnt[l] -= 1
            if rc:
                return rc
        return 0

    for root in range(root_lo, root_hi):
        if cap < 1:
            break
        for l in pls[root]:
            cnt[l] += 1
        S.append(root)
        box = [0]
        rc = dfs(root, box)
        S.pop()
        for l in pls[root]:
            cnt[l] -= 1
        nodes_total += box[0]
        if rc:
            completed = False
            break
    return candidates, nodes_total, completed
