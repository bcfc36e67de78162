# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: base-p odometer span enumeration and the
tangent-free DFS.  Semantics match kernels._pure exactly."""

import numpy as np


cdef inline void _add_row(unsigned char[::1] w, unsigned char[:, ::1] rows,
                          Py_ssize_t j, Py_ssize_t n, int p) noexcept:
    cdef Py_ssize_t i
    cdef int v
    for i in range(n):
        v = w[i] + rows[j, i]
        if v >= p:
            v -= p
        w[i] = <unsigned char> v


def weight_histogram(rows_in, int p):
    rows = np.ascontiguousarray(np.atleast_2d(np.asarray(rows_in)) % p, dtype=np.uint8)
    cdef unsigned char[:, ::1] rows_v = rows
    cdef Py_ssize_t k = rows_v.shape[0]
    cdef Py_ssize_t n = rows_v.shape[1]
    hist = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] hist_v = hist
    w = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] w_v = w
    digits = np.zeros(max(k, 1), dtype=np.int64)
    cdef long long[::1] dig = digits
    cdef long long total = 1
    cdef Py_ssize_t i, j
    cdef long long step
    cdef int wt
    for i in range(k):
        total *= p
    hist_v[0] += 1
    for step in range(total - 1):
        j = 0
        while dig[j] == p - 1:
            dig[j] = 0
            _add_row(w_v, rows_v, j, n, p)
            j += 1
        dig[j] += 1
        _add_row(w_v, rows_v, j, n, p)
        wt = 0
        for i in range(n):
            if w_v[i] != 0:
                wt += 1
        hist_v[wt] += 1
    return hist


def words_of_weight(rows_in, int p, int target, long long max_count):
    rows = np.ascontiguousarray(np.atleast_2d(np.asarray(rows_in)) % p, dtype=np.uint8)
    cdef unsigned char[:, ::1] rows_v = rows
    cdef Py_ssize_t k = rows_v.shape[0]
    cdef Py_ssize_t n = rows_v.shape[1]
    w = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] w_v = w
    digits = np.zeros(max(k, 1), dtype=np.int64)
    cdef long long[::1] dig = digits
    cdef long long total = 1
    cdef long long total_found = 0
    cdef Py_ssize_t i, j
    cdef long long step
    cdef int wt
    found = []
    for i in range(k):
        total *= p
    if target == 0:
        total_found += 1
        if max_count > 0:
            found.append(np.zeros(n, dtype=np.uint8))
    for step in range(total - 1):
        j = 0
        while dig[j] == p - 1:
            dig[j] = 0
            _add_row(w_v, rows_v, j, n, p)
            j += 1
        dig[j] += 1
        _add_row(w_v, rows_v, j, n, p)
        wt = 0
        for i in range(n):
            if w_v[i] != 0:
                wt += 1
        if wt == target:
            total_found += 1
            if len(found) < max_count:
                found.append(np.asarray(w_v).copy())
    words = np.array(found, dtype=np.uint8) if found else np.zeros((0, n), dtype=np.uint8)
    return words, int(total_found)


cdef int _dfs(int[:, ::1] point_lines, int[::1] cnt, int[::1] line_last, int[::1] S,
              int depth, int last, int cap, long long* nodes, long long max_nodes,
              list candidates, long long max_candidates, int n_points, int nl,
              bint disjoint_tangents):
    nodes[0] += 1
    if nodes[0] > max_nodes:
        return 1
    cdef int t_max = 0
    cdef int i, j, l, t, P, nxt, rc
    for i in range(depth):
        P = S[i]
        t = 0
        for j in range(nl):
            l = point_lines[P, j]
            if cnt[l] == 1:
                t += 1
                if line_last[l] <= last:
                    return 0
        if t > t_max:
            t_max = t
    if t_max == 0:
        candidates.append(tuple([int(S[i]) for i in range(depth)]))
        if len(candidates) > max_candidates:
            return 1
    if depth >= cap or (disjoint_tangents and depth + t_max > cap):
        return 0
    for nxt in range(last + 1, n_points):
        for j in range(nl):
            cnt[point_lines[nxt, j]] += 1
        S[depth] = nxt
        rc = _dfs(point_lines, cnt, line_last, S, depth + 1, nxt, cap,
                  nodes, max_nodes, candidates, max_candidates, n_points, nl,
                  disjoint_tangents)
        for j in range(nl):
            cnt[point_lines[nxt, j]] -= 1
        if rc:
            return rc
    return 0


def tangent_free_sets(line_points, point_lines, int n_points, int cap,
                      long long max_nodes_per_root, long long max_candidates,
                      int root_lo, int root_hi, bint disjoint_tangents=True):
    lp = np.ascontiguousarray(line_points, dtype=np.int32)
    pl = np.ascontiguousarray(point_lines, dtype=np.int32)
    cdef int[:, ::1] pl_v = pl
    last_col = np.ascontiguousarray(lp[:, lp.shape[1] - 1]).copy()
    cdef int[::1] line_last = last_col
    cnt_arr = np.zeros(lp.shape[0], dtype=np.int32)
    cdef int[::1] cnt = cnt_arr
    S_arr = np.zeros(max(cap, 1), dtype=np.int32)
    cdef int[::1] S = S_arr
    candidates = []
    cdef long long nodes_total = 0
    cdef long long nodes_root = 0
    cdef bint completed = True
    cdef int root, j, rc
    cdef int nl = pl_v.shape[1]
    for root in range(root_lo, root_hi):
        if cap < 1:
            break
        for j in range(nl):
            cnt[pl_v[root, j]] += 1
        S[0] = root
        nodes_root = 0
        rc = _dfs(pl_v, cnt, line_last, S, 1, root, cap, &nodes_root,
                  max_nodes_per_root, candidates, max_candidates, n_points, nl,
                  disjoint_tangents)
        for j in range(nl):
            cnt[pl_v[root, j]] -= 1
        nodes_total += nodes_root
        if rc:
            completed = False
            break
    return candidates, int(nodes_total), bool(completed)
