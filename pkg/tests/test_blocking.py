"""Blocking sets: predicates, profiles, reduction, spread-based linear sets,
companions, Rédei sets, Baer cones, and the size-bound calculators."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from pgcodes import blocking, projgeom
from pgcodes.blocking import PointSet, line_cache
from pgcodes.errors import (
    AssertionFailed,
    NotBlocking,
    NotInDual,
    NotOneModP,
    UsageError,
    WrongDimension,
)
from pgcodes.gfq import field
from pgcodes.projgeom import desarguesian_spread, projective_space, span, theta


def _hyperplane_set(space, i=0) -> PointSet:
    return PointSet.from_indices(space, space.hyperplane_points(i))


def test_pointset_basics():
    space = projective_space(3, 1, 2)
    ps = PointSet.from_indices(space, [3, 1, 1, 2])
    assert ps.indices == (1, 2, 3)
    assert len(ps) == 3 and 2 in ps and 0 not in ps
    assert list(ps.incidence_vector()[:4]) == [0, 1, 1, 1]
    assert ps.without(2).indices == (1, 3)


def test_line_cache_counts():
    for p, h, n, lines in [(3, 1, 2, 13), (2, 2, 2, 21), (2, 1, 3, 35)]:
        cache = line_cache(projective_space(p, h, n))
        assert cache.num_lines == lines
        assert cache.line_points.shape[1] == p**h + 1


def test_hyperplane_is_minimal_blocking():
    for p, h, n in [(3, 1, 2), (2, 2, 2), (2, 1, 3)]:
        ps = _hyperplane_set(projective_space(p, h, n))
        assert blocking.is_blocking(ps)
        assert blocking.is_minimal_blocking(ps)
        assert blocking.essential_points(ps) == list(ps.indices)


def test_tangent_counts_on_a_line():
    space = projective_space(3, 1, 2)
    ps = _hyperplane_set(space)
    for P in ps.indices:
        assert blocking.tangent_count(ps, P) == 3  # q tangents at each point of a line


def test_not_blocking_detected():
    space = projective_space(3, 1, 2)
    line = list(space.hyperplane_points(0))
    ps = PointSet.from_indices(space, line[:-1])
    assert not blocking.is_blocking(ps)


def test_reduce_within_unique_range():
    space = projective_space(3, 1, 2)
    base = list(space.hyperplane_points(0))
    extra = next(i for i in range(space.num_points) if i not in base)
    fat = PointSet.from_indices(space, base + [extra])
    red = blocking.reduce_to_minimal(fat)
    assert red.hypothesis_met
    assert red.removed == (extra,)
    assert red.points.indices == tuple(sorted(base))


def test_reduce_rejects_non_blocking():
    space = projective_space(3, 1, 2)
    with pytest.raises(NotBlocking):
        blocking.reduce_to_minimal(PointSet.from_indices(space, [0, 1]))


def test_full_line_points_of_hyperplane():
    space = projective_space(2, 1, 3)
    ps = _hyperplane_set(space)
    assert blocking.full_line_points(ps) == list(ps.indices)
    baer = blocking.baer_cone(projective_space(2, 2, 2), -1).points
    assert blocking.full_line_points(baer) == []


def test_dim_span():
    space = projective_space(2, 1, 3)
    assert blocking.dim_span(_hyperplane_set(space)) == 2
    assert blocking.dim_span(PointSet.from_indices(space, [0])) == 0
    assert blocking.dim_span(PointSet.from_indices(space, range(space.num_points))) == 3


def test_line_profile_identities_exact():
    space = projective_space(3, 2, 2)
    ps = _hyperplane_set(space)
    prof = blocking.line_profile(ps, 3)
    assert prof.holds() and prof.one_mod_E
    assert prof.histogram == {1: 90, 10: 1}
    assert prof.tau is not None


def test_line_profile_non_one_mod_e():
    space = projective_space(3, 1, 2)
    ps = PointSet.from_indices(space, range(5))
    prof = blocking.line_profile(ps, 3)
    assert prof.holds()  # the double counts hold for any point set
    assert not prof.one_mod_E
    assert prof.tau is None


def test_max_exponent_baer():
    baer = blocking.baer_cone(projective_space(2, 2, 2), -1).points
    rep = blocking.max_exponent(baer)
    assert rep.e == 1 and rep.divides_h
    line = _hyperplane_set(projective_space(2, 2, 2))
    rep = blocking.max_exponent(line)
    assert rep.e == 2  # line sizes {1, 5}: both 1 mod 4


def test_max_exponent_rejects_bad_sizes():
    space = projective_space(3, 1, 2)
    with pytest.raises(NotOneModP):
        blocking.max_exponent(PointSet.from_indices(space, range(5)))


def test_bounds_bracket_baer_subplane():
    br = blocking.bounds(9, 2, 1)
    assert br.lower == Fraction(41, 4)
    assert br.upper == Fraction(15)
    assert not br.upper_applicable  # needs E > 3
    assert br.brackets(13)
    assert br.excluded_interval is None


def test_bounds_excluded_interval_needs_deep_extension():
    br = blocking.bounds(5**3, 2, 1)
    assert br.excluded_interval is not None
    lo, hi = br.excluded_interval
    assert lo == Fraction(3 * 125, 2) and hi == 2 * 125


def test_small_dim_and_linear_blocking_set():
    spread = desarguesian_spread(3, 2, 2)
    assert blocking.small_dim(spread) == 2
    u = blocking.first_baer_plane(spread)
    ps = blocking.linear_blocking_set(spread, u)
    assert len(ps) == 13  # Baer subplane of PG(2,9)
    assert blocking.is_blocking(ps)
    assert len(ps) % 3 == 1


def test_linear_blocking_set_rejects_wrong_dim():
    spread = desarguesian_spread(3, 2, 2)
    line = projgeom.line_through(spread.ambient, 0, 1)
    with pytest.raises(WrongDimension):
        blocking.linear_blocking_set(spread, line)


def test_count_one_point_elements_tight_on_element_plane():
    spread = desarguesian_spread(3, 2, 2)
    # a plane spanned by a spread element and one extra point meets the weak
    # bound with equality on its element count side
    u = blocking.first_baer_plane(spread)
    rep = blocking.count_one_point_elements(spread, u)
    assert rep.meets_weak
    assert rep.weak_bound == 7  # 3^2 - 3 + 1
    assert Fraction(rep.count) >= rep.refined_bound or not rep.meets_refined


def test_reconstruct_bset_closure_equals_b_of():
    spread = desarguesian_spread(2, 2, 2)
    u = blocking.first_baer_plane(spread)
    elems = sorted(int(e) for e in spread.b_of(u))
    # base: B(U_{N-1}) for a line U_{N-1} inside U, plus two outside elements
    pts = u.point_indices()
    line = projgeom.line_through(spread.ambient, int(pts[0]), int(pts[1]))
    base = sorted(int(e) for e in spread.b_of(line))
    outside = [e for e in elems if e not in base]
    got = blocking.reconstruct_bset(spread, base, outside[0], outside[1])
    assert sorted(got) == elems


def test_companion_meets_in_two_mod_p():
    for p, h in [(2, 2), (3, 2)]:
        spread = desarguesian_spread(p, h, 2)
        u = blocking.first_baer_plane(spread)
        rep = blocking.companion_blocking_set(spread, u)
        assert rep.two_mod_p
        assert len(rep.intersection) % p == 2 % p
        assert rep.r_new not in set(spread.b_of(u))
        assert blocking.is_minimal_blocking(rep.b_prime)


def test_companion_rejects_hyperplane():
    spread = desarguesian_spread(2, 2, 2)
    # a plane whose blocking set is all of PG(2,4) line... pick U = span of a
    # spread element and a transversal-ish plane until b_of is a line of the
    # source: hyperplane blocking sets admit no companion
    amb = spread.ambient
    target = theta(4, 1)
    hyper_u = None
    for u in projgeom.enumerate_subspaces(amb, 2):
        if len(spread.b_of(u)) == target:
            hyper_u = u
            break
    assert hyper_u is not None
    with pytest.raises(UsageError):
        blocking.companion_blocking_set(spread, hyper_u)


@pytest.mark.parametrize("p,h,size,k,weight", [(2, 2, 7, 3, 6), (2, 3, 15, 7, 10), (3, 2, 13, 4, 15)])
def test_redei_sets_and_dual_words(p, h, size, k, weight):
    rs = blocking.redei_blocking_set(field(p, h), 1)
    assert len(rs.points) == size and rs.k == k and rs.minimal
    rep = blocking.redei_dual_word(rs)
    assert rep.weight == weight
    assert rep.hypothesis_met == (2 * k < p**h + 3)


def test_redei_rejects_bad_exponent():
    with pytest.raises(UsageError):
        blocking.redei_blocking_set(field(2, 2), 2)  # needs e < h
    with pytest.raises(UsageError):
        blocking.redei_blocking_set(field(3, 1), 1)  # needs h >= 2


def test_baer_cone_subgeometry_and_cone():
    sub = blocking.baer_cone(projective_space(3, 2, 2), -1)
    assert len(sub.points) == 13 and sub.minimal
    cone = blocking.baer_cone(projective_space(2, 2, 3), 0)
    assert len(cone.points) == 1 + theta(2, 2) * 4  # point vertex + Baer-plane base * q
    assert cone.minimal
    prof = blocking.line_profile(cone.points, 2)
    assert prof.holds()


def test_baer_cone_rejects_odd_extension():
    with pytest.raises(UsageError):
        blocking.baer_cone(projective_space(2, 3, 2), -1)


def test_sachar_bounds():
    sb = blocking.sachar_bounds(7, 49)
    assert sb.plane_bound == Fraction(12 * 49 + 6, 7)
    assert sb.general_bound == Fraction(12 * 49 + 7, 7)
    assert sb.general_ceiling == 85
    sb11 = blocking.sachar_bounds(11, 121)
    assert sb11.plane_bound == sb11.general_bound == Fraction(12 * 121 + 18, 7)
    with pytest.raises(UsageError):
        blocking.sachar_bounds(2, 4)
