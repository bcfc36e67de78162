"""Codes from incidence matrices: dimension formula, hull structure,
membership, classification of small words, projection/embedding maps."""
from __future__ import annotations

import numpy as np
import pytest

from pgcodes import codes, fplinalg
from pgcodes.codes import Code, Codeword, dimension_formula
from pgcodes.errors import (
    AssertionFailed,
    NoTangentThroughR,
    PlaneNotInSpace,
    PointInSupport,
    PointOnHyperplane,
    UsageError,
)
from pgcodes.projgeom import (
    enumerate_subspaces,
    hyperplane_subspace,
    projective_space,
    span,
    theta,
)

DIM_CASES = [
    (2, 1, 2, 4),
    (3, 1, 2, 7),
    (2, 2, 2, 10),
    (2, 1, 3, 5),
    (3, 2, 2, 37),
    (3, 1, 3, 11),
]


@pytest.mark.parametrize("p,h,n,dim", DIM_CASES)
def test_dimension_matches_formula(p, h, n, dim):
    space = projective_space(p, h, n)
    code = Code(space)
    assert code.dimension == dim == dimension_formula(p, h, n)
    assert code.length == space.num_points
    assert code.dual_dimension() == code.length - dim


def test_code_contains_rows_and_dual_orthogonality():
    space = projective_space(3, 1, 2)
    code = Code(space)
    for row in space.incidence:
        assert code.contains(row.astype(np.int64))
    dual = code.dual_basis()
    assert dual.shape[0] == code.length - code.dimension
    assert not ((space.incidence.astype(np.int64) @ dual.T) % 3).any()


@pytest.mark.parametrize("p,h,n", [(3, 1, 2), (2, 2, 2), (2, 1, 3)])
def test_hull_is_spanned_by_hyperplane_differences(p, h, n):
    space = projective_space(p, h, n)
    code = Code(space)
    hull = code.hull_basis()
    assert hull.shape[0] == code.hull_dimension() == code.dimension - 1
    inc = space.incidence.astype(np.int64)
    for row in hull:
        assert code.contains(row)
        assert code.dual_contains(row)
    diff = (inc[3] - inc[0]) % p
    assert fplinalg.row_member(diff, hull, p)


def test_all_one_vector_membership():
    # the all-one vector is a codeword iff theta(n-1) != 0 mod p; for PG(2,q)
    # each line has q+1 = 1 mod p points, so summing all hyperplane rows
    # gives theta(1) * x... check directly instead for two spaces
    space = projective_space(3, 1, 2)
    code = Code(space)
    ones = np.ones(space.num_points, dtype=np.int64)
    assert code.contains(ones) == fplinalg.row_member(ones, space.incidence.astype(np.int64), 3)


def test_classify_hyperplane_row():
    space = projective_space(3, 1, 2)
    code = Code(space)
    rep = codes.classify_small_codeword(code, space.incidence[2].astype(np.int64))
    assert rep.weight == theta(3, 1) == 4
    assert rep.constant_valued and rep.one_mod_p_lines and rep.blocking and rep.minimal
    assert rep.is_hyperplane_multiple


def test_classify_scaled_hyperplane_row():
    space = projective_space(3, 1, 2)
    code = Code(space)
    rep = codes.classify_small_codeword(code, (2 * space.incidence[5]).astype(np.int64))
    assert rep.value == 2 and rep.is_hyperplane_multiple


def test_classify_rejects_out_of_range_weight():
    space = projective_space(3, 1, 2)
    code = Code(space)
    with pytest.raises(UsageError):
        codes.classify_small_codeword(code, (space.incidence[0] + space.incidence[1]).astype(np.int64))


def test_scalar_profile_of_dual_word_vanishes_on_hyperplanes():
    space = projective_space(3, 1, 2)
    code = Code(space)
    diff = (space.incidence[0].astype(np.int64) - space.incidence[1]) % 3
    prof = codes.scalar_profile(code, diff, [1])
    assert prof[1] == [0]  # dual word sums to zero over every line


def _embedded_line_difference():
    """(l1 - l2) of PG(2,2) zero-extended onto a plane of PG(3,2): weight 4."""
    plane_space = projective_space(2, 1, 2)
    planar = Code(plane_space)
    vec = (plane_space.incidence[0].astype(np.int64) + plane_space.incidence[1]) % 2
    target_space = projective_space(2, 1, 3)
    target = Code(target_space)
    e = lambda i: np.eye(4, dtype=np.int64)[i]
    plane = span(target_space, e(0), e(1), e(2))
    word = codes.embed_planar_dual_word(planar, vec, target, plane)
    return target, plane, word.vector


def test_project_from_point_off_the_support_plane_preserves_weight():
    # support lies in a plane pi; projecting from R off pi onto pi itself
    # carries the word over pointwise
    target, plane, vec = _embedded_line_difference()
    space = target.space
    hyp = next(
        h for h in range(space.num_hyperplanes)
        if np.array_equal(np.sort(plane.point_indices()), space.hyperplane_points(h))
    )
    r = next(i for i in range(space.num_points) if not space.incidence[hyp, i])
    word = codes.project_dual_word(target, vec, r, hyp)
    assert word.vector.shape[0] == theta(2, 2)
    assert fplinalg.weight(word.vector) == fplinalg.weight(vec) == 4
    assert Code(projective_space(2, 1, 2)).dual_contains(word.vector)


def test_plane_supported_word_admits_no_reducing_projection():
    # for a word supported in a plane pi, every secant lies inside pi and the
    # in-plane off-support points carry no tangent: projection either keeps
    # the weight (R off pi) or is refused
    target, plane, vec = _embedded_line_difference()
    space = target.space
    supp = set(fplinalg.support(vec))
    plane_pts = set(int(x) for x in plane.point_indices())
    for r in sorted(plane_pts - supp):
        hyp = next(h for h in range(space.num_hyperplanes) if not space.incidence[h, r])
        with pytest.raises(NoTangentThroughR):
            codes.project_dual_word(target, vec, r, hyp)


def test_project_from_secant_and_tangent_point_reduces_weight():
    # search the full dual of C(PG(3,2)) for a word with a point on both a
    # secant and a tangent; projection from such a point must lose weight
    from pgcodes.blocking import line_cache

    space = projective_space(2, 1, 3)
    code = Code(space)
    cache = line_cache(space)
    dual = code.dual_basis()
    reduced = []
    for bits in range(1, 2 ** dual.shape[0]):
        vec = np.zeros(space.num_points, dtype=np.int64)
        for i in range(dual.shape[0]):
            if (bits >> i) & 1:
                vec = (vec + dual[i]) % 2
        supp = set(fplinalg.support(vec))
        if not supp:
            continue
        for r in range(space.num_points):
            if r in supp:
                continue
            hits = [sum(1 for x in cache.line_points[l] if int(x) in supp)
                    for l in cache.point_lines[r]]
            if 1 in hits and any(h >= 2 for h in hits):
                hyp = next(h for h in range(space.num_hyperplanes) if not space.incidence[h, r])
                word = codes.project_dual_word(code, vec, r, hyp)
                w = fplinalg.weight(word.vector)
                assert w < len(supp)
                assert Code(projective_space(2, 1, 2)).dual_contains(word.vector)
                reduced.append((bits, r, hyp, len(supp), w))
                break
        if reduced:
            break
    assert reduced  # the reduction property is exercised at least once


def test_project_dual_word_guards():
    target, plane, vec = _embedded_line_difference()
    space = target.space
    supp = fplinalg.support(vec)
    with pytest.raises(PointInSupport):
        codes.project_dual_word(target, vec, supp[0], 0)
    r = next(i for i in range(space.num_points) if i not in set(supp))
    hyp_through_r = next(h for h in range(space.num_hyperplanes) if space.incidence[h, r])
    with pytest.raises(PointOnHyperplane):
        codes.project_dual_word(target, vec, r, hyp_through_r)


def test_embed_planar_dual_word_into_three_space():
    plane_space = projective_space(2, 1, 2)
    planar = Code(plane_space)
    vec = (plane_space.incidence[0].astype(np.int64) + plane_space.incidence[1]) % 2
    target_space = projective_space(2, 1, 3)
    target = Code(target_space)
    e = lambda i: np.eye(4, dtype=np.int64)[i]
    plane = span(target_space, e(0), e(1), e(2))
    word = codes.embed_planar_dual_word(planar, vec, target, plane)
    assert fplinalg.weight(word.vector) == fplinalg.weight(vec) == 4
    assert target.dual_contains(word.vector)


def test_embed_rejects_wrong_plane():
    plane_space = projective_space(2, 1, 2)
    planar = Code(plane_space)
    target_space = projective_space(2, 1, 3)
    vec = np.zeros(plane_space.num_points, dtype=np.int64)
    line = span(target_space, np.eye(4, dtype=np.int64)[0], np.eye(4, dtype=np.int64)[1])
    with pytest.raises(PlaneNotInSpace):
        codes.embed_planar_dual_word(planar, vec, Code(target_space), line)


def test_codeword_file_round_trip(tmp_path):
    space = projective_space(3, 1, 2)
    vec = (space.incidence[0].astype(np.int64) - space.incidence[1]) % 3
    word = Codeword(vec, {"kind": "difference"})
    path = tmp_path / "w.txt"
    codes.write_codeword(path, word, 3)
    back, p = codes.read_codeword(path)
    assert p == 3
    assert np.array_equal(back, vec)
    assert (tmp_path / "w.txt.provenance.json").exists()
