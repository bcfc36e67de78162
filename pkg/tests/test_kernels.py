"""Backend parity: the compiled kernels and the pure-Python fallback must
agree result-for-result and node-for-node."""
from __future__ import annotations

import numpy as np
import pytest

from pgcodes import kernels
from pgcodes.blocking import line_cache
from pgcodes.codes import Code
from pgcodes.kernels import _pure
from pgcodes.projgeom import projective_space


def test_backend_reports_name():
    assert kernels.backend_name() in ("compiled", "pure")


@pytest.mark.parametrize("p,h,n", [(2, 1, 2), (3, 1, 2), (2, 2, 2)])
def test_weight_histogram_parity(p, h, n):
    basis = Code(projective_space(p, h, n)).generator_basis()
    fast = kernels.weight_histogram(basis, p)
    slow = _pure.weight_histogram(basis, p)
    assert np.array_equal(fast, slow)
    assert int(fast.sum()) == p ** basis.shape[0]


def test_words_of_weight_parity():
    space = projective_space(3, 1, 2)
    basis = Code(space).generator_basis()
    fast_words, fast_total = kernels.words_of_weight(basis, 3, 4, 100)
    slow_words, slow_total = _pure.words_of_weight(basis, 3, 4, 100)
    assert fast_total == slow_total == 26
    assert np.array_equal(fast_words, slow_words)
    assert (np.count_nonzero(fast_words, axis=1) == 4).all()


@pytest.mark.parametrize("disjoint", [True, False])
def test_tangent_free_sets_parity(disjoint):
    space = projective_space(3, 1, 2)
    cache = line_cache(space)
    n = space.num_points
    args = (cache.line_points, cache.point_lines, n, 5, 10**6, 10**5, 0, n)
    fast = kernels.tangent_free_sets(*args, disjoint_tangents=disjoint)
    slow = _pure.tangent_free_sets(*args, disjoint_tangents=disjoint)
    assert fast[0] == slow[0]  # candidates, in identical DFS order
    assert fast[1] == slow[1]  # node count
    assert fast[2] == slow[2]  # completed flag
    assert fast[2] is True or fast[2] == 1


def test_tangent_free_sets_budget_abort_parity():
    space = projective_space(2, 2, 2)
    cache = line_cache(space)
    n = space.num_points
    args = (cache.line_points, cache.point_lines, n, 7, 10, 10**5, 0, n)
    fast = kernels.tangent_free_sets(*args)
    slow = _pure.tangent_free_sets(*args)
    assert fast[0] == slow[0] and fast[1] == slow[1]
    assert not fast[2] and not slow[2]


def test_relaxed_prune_explores_at_least_as_much():
    # without the disjoint-tangent prune the search must not lose candidates
    space = projective_space(3, 1, 2)
    cache = line_cache(space)
    n = space.num_points
    args = (cache.line_points, cache.point_lines, n, 6, 10**7, 10**5, 0, n)
    strict = kernels.tangent_free_sets(*args, disjoint_tangents=True)
    relaxed = kernels.tangent_free_sets(*args, disjoint_tangents=False)
    assert set(strict[0]) <= set(relaxed[0])
    assert relaxed[1] >= strict[1]
    # for lines (pairwise meeting in <= 1 point) the prune is lossless
    assert set(strict[0]) == set(relaxed[0])
