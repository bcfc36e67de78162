"""Blocking sets w.r.t. lines: construction, reduction, counting profiles,
and the spread-based machinery (linear blocking sets, companions, Rédei sets,
Baer cones, Sachar-style bounds).

All counting identities are evaluated in exact (rational) arithmetic, and
every claimed property is re-verified on the constructed object rather than
assumed from the construction.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import projgeom
from .codes import Codeword
from .errors import (
    AssertionFailed,
    NotBlocking,
    NotInDual,
    NotOneModP,
    UsageError,
    WrongDimension,
)
from .gfq import Field, factor_prime_power, is_prime
from .projgeom import ProjSpace, Spread, Subspace, span, intersect, theta


# -- point sets and the line cache --------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A set of points of a projective space, as sorted indices + bitmask."""

    space: ProjSpace
    indices: tuple[int, ...]

    @classmethod
    def from_indices(cls, space: ProjSpace, indices) -> PointSet:
        idx = sorted({int(i) for i in indices})
        if idx and (idx[0] < 0 or idx[-1] >= space.num_points):
            raise UsageError("point index out of range")
        return cls(space, tuple(idx))

    @functools.cached_property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> int(i)) & 1)

    def incidence_vector(self) -> np.ndarray:
        v = np.zeros(self.space.num_points, dtype=np.int64)
        v[list(self.indices)] = 1
        return v

    def without(self, i: int) -> PointSet:
        return PointSet.from_indices(self.space, [x for x in self.indices if x != i])


class LineCache:
    """All lines of a space: point arrays, bitmasks, and the point->lines map."""

    def __init__(self, space: ProjSpace):
        self.space = space
        q = space.field.q
        if space.n == 2:
            rows = [np.nonzero(space.incidence[i])[0] for i in range(space.num_hyperplanes)]
        else:
            rows = [U.point_indices() for U in projgeom.enumerate_subspaces(space, 1)]
        self.line_points = np.array(rows, dtype=np.int32)
        assert self.line_points.shape[1] == q + 1
        self.num_lines = self.line_points.shape[0]
        self.masks = [int(sum(1 << int(x) for x in row)) for row in self.line_points]
        per_point: list[list[int]] = [[] for _ in range(space.num_points)]
        for l, row in enumerate(self.line_points):
            for x in row:
                per_point[int(x)].append(l)
        self.point_lines = np.array(per_point, dtype=np.int32)
        assert self.point_lines.shape[1] == space.theta(space.n - 1)


@functools.lru_cache(maxsize=None)
def line_cache(space: ProjSpace) -> LineCache:
    return LineCache(space)


# -- elementary blocking-set predicates ----------------------------------------


def line_sizes(ps: PointSet) -> list[int]:
    """|l /\\ B| for every line l, in line order."""
    cache = line_cache(ps.space)
    m = ps.mask
    return [(mask & m).bit_count() for mask in cache.masks]


def is_blocking(ps: PointSet) -> bool:
    m = ps.mask
    return all(mask & m for mask in line_cache(ps.space).masks)


def tangent_count(ps: PointSet, point: int) -> int:
    """Number of tangent lines (meeting B exactly once) through a point of B."""
    cache = line_cache(ps.space)
    m = ps.mask
    return sum(1 for l in cache.point_lines[point] if (cache.masks[l] & m).bit_count() == 1)


def essential_points(ps: PointSet) -> list[int]:
    return [P for P in ps.indices if tangent_count(ps, P) >= 1]


def is_minimal_blocking(ps: PointSet) -> bool:
    return is_blocking(ps) and all(tangent_count(ps, P) >= 1 for P in ps.indices)


@dataclass
class ReduceResult:
    points: PointSet
    hypothesis_met: bool  # |B| < q^(n-1) + theta(n-1), the unique-reduction range
    removed: tuple[int, ...]


def reduce_to_minimal(ps: PointSet) -> ReduceResult:
    """Reduce a blocking set to a minimal one.  Inside the unique-reduction
    size range the essential points are the answer in one step (verified);
    beyond it, lowest-index non-essential points are removed iteratively."""
    if not is_blocking(ps):
        raise NotBlocking(f"set of size {len(ps)} misses a line")
    space = ps.space
    q, n = space.field.q, space.n
    hypothesis = len(ps) < q ** (n - 1) + theta(q, n - 1)
    if hypothesis:
        ess = essential_points(ps)
        out = PointSet.from_indices(space, ess)
        if not is_minimal_blocking(out):
            raise AssertionFailed(
                "essential-point reduction is not a minimal blocking set",
                {"size": len(ps), "essential": len(ess)},
            )
        removed = tuple(P for P in ps.indices if P not in set(ess))
        return ReduceResult(out, True, removed)
    cur = ps
    removed_list: list[int] = []
    while True:
        non_essential = [P for P in cur.indices if tangent_count(cur, P) == 0]
        if not non_essential:
            return ReduceResult(cur, False, tuple(removed_list))
        cur = cur.without(non_essential[0])
        removed_list.append(non_essential[0])


def full_line_points(ps: PointSet) -> list[int]:
    """Points of B every line through which is a tangent or lies inside B."""
    cache = line_cache(ps.space)
    qp1 = ps.space.field.q + 1
    m = ps.mask
    out = []
    for P in ps.indices:
        ok = True
        for l in cache.point_lines[P]:
            c = (cache.masks[l] & m).bit_count()
            if c != 1 and c != qp1:
                ok = False
                break
        if ok:
            out.append(P)
    return out


def dim_span(ps: PointSet) -> int:
    if not ps.indices:
        return -1
    coords = ps.space.points[list(ps.indices)].astype(np.int64)
    _, rank, _ = projgeom.gfq_rref(coords, ps.space.field)
    return rank - 1


def secant_tangent_condition(ps: PointSet) -> bool:
    """True iff every point outside B lying on a secant lies on no tangent."""
    cache = line_cache(ps.space)
    m = ps.mask
    sizes = [(mask & m).bit_count() for mask in cache.masks]
    for Q in range(ps.space.num_points):
        if Q in ps:
            continue
        has_secant = has_tangent = False
        for l in cache.point_lines[Q]:
            if sizes[l] >= 2:
                has_secant = True
            elif sizes[l] == 1:
                has_tangent = True
        if has_secant and has_tangent:
            return False
    return True


# -- counting profiles and bounds -----------------------------------------------


@dataclass
class LineProfile:
    histogram: dict[int, int]  # intersection size -> number of lines
    one_mod_E: bool
    tau: dict[int, int] | None  # i -> number of (1+iE)-secants, when defined
    identities: dict[str, dict[str, str | bool]]

    def holds(self) -> bool:
        return all(v["holds"] for v in self.identities.values())


def line_profile(ps: PointSet, E: int) -> LineProfile:
    """Per-line intersection histogram plus the three standard double counts:
    (1) total line count, (2) incident point-line pairs, (3) ordered collinear
    pairs.  All three hold for any point set; the tau vector additionally
    requires every size to be 1 mod E."""
    space = ps.space
    q, n = space.field.q, space.n
    sizes = line_sizes(ps)
    hist: dict[int, int] = {}
    for s in sizes:
        hist[s] = hist.get(s, 0) + 1
    one_mod = all(s % E == 1 for s in hist)
    tau = {(s - 1) // E: c for s, c in sorted(hist.items())} if one_mod else None
    b = len(ps)
    lhs1 = sum(hist.values())
    rhs1 = Fraction((q ** (n + 1) - 1) * (q**n - 1), (q**2 - 1) * (q - 1))
    lhs2 = sum(s * c for s, c in hist.items())
    rhs2 = Fraction(b * theta(q, n - 1))
    lhs3 = sum(s * (s - 1) * c for s, c in hist.items())
    rhs3 = Fraction(b * (b - 1))
    identities = {
        "line_count": {"lhs": str(Fraction(lhs1)), "rhs": str(rhs1), "holds": Fraction(lhs1) == rhs1},
        "incident_pairs": {"lhs": str(Fraction(lhs2)), "rhs": str(rhs2), "holds": Fraction(lhs2) == rhs2},
        "collinear_pairs": {"lhs": str(Fraction(lhs3)), "rhs": str(rhs3), "holds": Fraction(lhs3) == rhs3},
    }
    return LineProfile(hist, one_mod, tau, identities)


@dataclass
class MaxExponentReport:
    e: int
    divides_h: bool


def max_exponent(ps: PointSet) -> MaxExponentReport:
    """Largest e with every line meeting B in 1 mod p^e points.  The reported
    divisibility e | h is checked, not assumed."""
    space = ps.space
    p, h = space.field.p, space.field.h
    sizes = set(line_sizes(ps))
    if any((s - 1) % p for s in sizes):
        bad = sorted(s for s in sizes if (s - 1) % p)
        raise NotOneModP(f"line intersection sizes {bad} are not 1 mod {p}")
    if max(sizes) <= 1:
        raise UsageError("profile degenerate: no line meets the set twice")
    e = 1
    while all((s - 1) % p ** (e + 1) == 0 for s in sizes):
        e += 1
    return MaxExponentReport(e, h % e == 0)


@dataclass
class BoundReport:
    q: int
    p: int
    h: int
    n: int
    e: int
    E: int
    lower: Fraction  # q^(n-1) + q^(n-1)/(E+1) - 1
    upper: Fraction  # q^(n-1) + 2 q^(n-1)/E
    upper_applicable: bool  # the upper bound requires E > 3
    excluded_interval: tuple[Fraction, Fraction] | None  # [3q^(n-1)/2, 2q^(n-1)[ for p>3, h>=3

    def brackets(self, size: int) -> bool:
        return self.lower <= size <= self.upper


def bounds(q: int, n: int, e: int) -> BoundReport:
    """Size bounds for minimal blocking sets with maximal exponent e, sizes in
    ]theta(n-1), 2q^(n-1)[.  The upper bound's E > 3 hypothesis is reported,
    and the bound value is still computed outside it."""
    p, h = factor_prime_power(q)
    if e < 1:
        raise UsageError("exponent must be >= 1")
    E = p**e
    qn1 = q ** (n - 1)
    lower = Fraction(qn1) + Fraction(qn1, E + 1) - 1
    upper = Fraction(qn1) + Fraction(2 * qn1, E)
    excluded = (Fraction(3 * qn1, 2), Fraction(2 * qn1)) if (p > 3 and h >= 3) else None
    return BoundReport(q, p, h, n, e, E, lower, upper, E > 3, excluded)


# -- linear blocking sets from field reduction -----------------------------------


def small_dim(spread: Spread) -> int:
    """N = h(n-1): ambient dimension defining a small linear blocking set."""
    f = spread.source.field
    return f.h * (spread.source.n - 1)


def linear_blocking_set(spread: Spread, u: Subspace) -> PointSet:
    """B(U) as a point set of PG(n, q) for an N-dimensional ambient subspace;
    verified blocking with |B| = 1 mod p."""
    N = small_dim(spread)
    if u.dim != N:
        raise WrongDimension(f"need dim {N} = h(n-1), got {u.dim}")
    elems = spread.b_of(u)
    ps = PointSet.from_indices(spread.source, elems)
    p = spread.source.field.p
    if len(ps) % p != 1 % p:
        raise AssertionFailed("linear blocking set size not 1 mod p", {"size": len(ps), "p": p})
    if not is_blocking(ps):
        raise AssertionFailed("B(U) misses a line of the source space", {"size": len(ps)})
    return ps


@dataclass
class OnePointReport:
    count: int
    weak_bound: int  # p^N - p^(N-1) + 1
    meets_weak: bool
    refined_bound: Fraction  # ((p+1) * Bose - |U_N|) / p, from the counting proof
    meets_refined: bool


def count_one_point_elements(spread: Spread, u: Subspace) -> OnePointReport:
    """Spread elements meeting u in exactly one point; checked against the
    one-point-element bounds when dim(u) = N."""
    if u.space != spread.ambient:
        raise UsageError("subspace does not live in the spread's ambient space")
    upts = set(int(x) for x in u.point_indices())
    count = 0
    for e in spread.b_of(u):
        if sum(1 for pt in spread.element_points[e] if int(pt) in upts) == 1:
            count += 1
    f = spread.source.field
    p, h, n = f.p, f.h, spread.source.n
    N = small_dim(spread)
    weak = p**N - p ** (N - 1) + 1
    bose = Fraction(p ** (h * n) - 1, p**h - 1)
    refined = ((p + 1) * bose - theta(p, N)) / p
    meets_weak = count >= weak
    meets_refined = Fraction(count) >= refined
    if u.dim == N and not meets_weak:
        raise AssertionFailed(
            "one-point-element count below the p^N - p^(N-1) + 1 bound",
            {"count": count, "bound": weak},
        )
    return OnePointReport(count, weak, meets_weak, refined, meets_refined)


def reconstruct_bset(spread: Spread, base_elements, r1: int, r2: int) -> set[int]:
    """Closure reconstructing B(U_N) from B(U_{N-1}) plus two elements of
    B(U_N) \\ B(U_{N-1}): repeatedly add <A, R4> /\\ <B, R5> whenever the
    intersection is a spread element, for pivots A != B outside the base and
    R4, R5 in the base."""
    base = sorted({int(x) for x in base_elements})
    base_set = set(base)
    if r1 in base_set or r2 in base_set or r1 == r2:
        raise UsageError("pivots must be two distinct elements outside the base set")
    known = set(base) | {r1, r2}
    span_cache: dict[tuple[int, int], Subspace] = {}

    def pair_span(a: int, b: int) -> Subspace:
        key = (a, b) if a < b else (b, a)
        if key not in span_cache:
            span_cache[key] = span(spread.ambient, spread.elements[key[0]], spread.elements[key[1]])
        return span_cache[key]

    h = spread.source.field.h
    while True:
        new_found: list[int] = []
        outside = sorted(known - base_set)
        for a in outside:
            for b in outside:
                if b == a:
                    continue
                for r4 in base:
                    sa = pair_span(a, r4)
                    for r5 in base:
                        sb = pair_span(b, r5)
                        x = intersect(sa, sb)
                        if x.dim != h - 1:
                            continue  # same regulus or skew reguli: no new element
                        pts = x.point_indices()
                        cand = int(spread.lookup[pts[0]])
                        if cand in known:
                            continue
                        if x != spread.elements[cand]:
                            raise AssertionFailed(
                                "regulus intersection is not a spread element",
                                {"pivots": [a, b], "base": [r4, r5]},
                            )
                        new_found.append(cand)
                        known.add(cand)
        if not new_found:
            return known


def first_baer_plane(spread: Spread) -> Subspace:
    """First plane of the ambient space (in enumeration order) whose linear
    blocking set is a Baer subplane, i.e. has q + sqrt(q) + 1 elements."""
    q = spread.source.field.q
    root = math.isqrt(q)
    if root * root != q:
        raise UsageError("Baer subplanes need a square field order")
    want = q + root + 1
    for u in projgeom.enumerate_subspaces(spread.ambient, 2):
        if len(spread.b_of(u)) == want:
            return u
    raise AssertionFailed("no plane with a Baer-subplane blocking set", {"q": q})


@dataclass
class CompanionReport:
    u_prime: Subspace
    b: PointSet
    b_prime: PointSet
    intersection: tuple[int, ...]
    two_mod_p: bool
    r1: int
    r2: int
    r_new: int  # element of B' \ B witnessing B' != B


def companion_blocking_set(spread: Spread, u: Subspace) -> CompanionReport:
    """Companion construction: from a small linear blocking set B(U) that is
    not a hyperplane, build U' = <m, U_{N-1}> whose blocking set meets B(U)
    in 2 mod p points.  All choices are lowest-index, hence deterministic."""
    source = spread.source
    f = source.field
    p, N = f.p, small_dim(spread)
    b_points = linear_blocking_set(spread, u)
    b_elems = [int(x) for x in spread.b_of(u)]
    b_elem_set = set(b_elems)
    if len(b_points) == source.theta(source.n - 1):
        for i in range(source.num_hyperplanes):
            if np.array_equal(np.array(b_points.indices), source.hyperplane_points(i)):
                raise UsageError("B(U) is a hyperplane; no companion exists for it")
    upts_set = set(int(x) for x in u.point_indices())
    one_pointers = [
        e for e in b_elems
        if sum(1 for pt in spread.element_points[e] if int(pt) in upts_set) == 1
    ]
    found = None
    for r1 in one_pointers:
        for r2 in b_elems:
            if r2 == r1:
                continue
            regulus, _ = spread.elements_in_span(r1, r2)
            missing = [e for e in regulus if e not in b_elem_set]
            if missing:
                found = (r1, r2, missing[0])
                break
        if found:
            break
    if found is None:
        raise AssertionFailed(
            "no regulus through a one-point element leaves the blocking set",
            {"elements": b_elems},
        )
    r1, r2, r_new = found
    p1 = intersect(u, spread.elements[r1])
    if p1.dim != 0:
        raise AssertionFailed("chosen one-point element fails the dimension check", {})
    p1_coords = p1.basis[0]
    # hyperplane U_{N-1} of U meeting R2 but avoiding the point U /\ R1
    fp = spread.ambient.field
    mini = projgeom.projective_space(p, 1, N)
    u_basis = u.basis.astype(np.int64)
    chosen = None
    for i in range(mini.num_points):
        normal = mini.point_coords(i).astype(np.int64)
        coef_basis = projgeom.gfq_null_basis(normal[None, :], fp)
        rows = _combine(coef_basis, u_basis, fp)
        w = Subspace(spread.ambient, rows)
        if w.contains_coords(p1_coords):
            continue
        if intersect(w, spread.elements[r2]).is_empty:
            continue
        chosen = w
        break
    if chosen is None:
        raise AssertionFailed("no hyperplane of U separates R1 from R2", {})
    u_n1 = chosen
    x = int(intersect(u_n1, spread.elements[r2]).point_indices()[0])
    m = spread.transversal_through(x, r1, r_new)
    u_prime = span(spread.ambient, m, u_n1)
    if u_prime.dim != N:
        raise AssertionFailed("companion subspace has wrong dimension", {"dim": u_prime.dim})
    b_prime = linear_blocking_set(spread, u_prime)
    inter = tuple(sorted(set(b_points.indices) & set(b_prime.indices)))
    report = CompanionReport(
        u_prime, b_points, b_prime, inter, len(inter) % p == 2 % p, r1, r2, r_new
    )
    if r_new not in b_prime or r_new in b_points:
        raise AssertionFailed("witness element not in B' \\ B", {"r_new": r_new})
    if not report.two_mod_p:
        raise AssertionFailed(
            "companion intersection size not 2 mod p",
            {"size": len(inter), "p": p},
        )
    return report


def _combine(coef: np.ndarray, basis: np.ndarray, f: Field) -> np.ndarray:
    """Rows of `coef` (coefficients w.r.t. `basis` rows) as ambient vectors."""
    out = np.zeros((coef.shape[0], basis.shape[1]), dtype=np.int64)
    for i in range(coef.shape[0]):
        acc = np.zeros(basis.shape[1], dtype=np.int64)
        for j in range(basis.shape[0]):
            c = int(coef[i, j]) % f.q
            if c:
                if f.h == 1:
                    acc = (acc + c * basis[j]) % f.p
                else:
                    acc = f.add_table[acc, f.mul_table[c, basis[j]]].astype(np.int64)
        out[i] = acc
    return out


# -- Redei-type blocking sets -----------------------------------------------------


@dataclass
class RedeiSet:
    points: PointSet
    line_index: int  # the k-secant L (line at infinity)
    k: int  # |B /\ L| = (q-1)/(p^e - 1)
    e: int
    minimal: bool


def redei_blocking_set(f: Field, e: int) -> RedeiSet:
    """The graph-type blocking set {(1, x, x^(p^e))} plus its directions on
    the line x0 = 0; size q + (q-1)/(p^e-1), with L a k-secant."""
    if f.h < 2:
        raise UsageError("Redei construction needs q = p^h with h >= 2")
    if not 1 <= e < f.h or f.h % e != 0:
        raise UsageError(f"exponent e={e} must satisfy 1 <= e < h and e | h (h={f.h})")
    space = projgeom.projective_space(f.p, f.h, 2, f.modulus)
    pe = f.p**e
    idx = [space.point_index(np.array([1, x, f.power(x, pe)])) for x in range(f.q)]
    dirs = sorted({f.power(x, pe - 1) for x in range(1, f.q)})
    idx += [space.point_index(np.array([0, 1, m])) for m in dirs]
    ps = PointSet.from_indices(space, idx)
    k = len(dirs)
    if k != (f.q - 1) // (pe - 1) or len(ps) != f.q + k:
        raise AssertionFailed(
            "Redei set size mismatch", {"size": len(ps), "k": k, "expected_k": (f.q - 1) // (pe - 1)}
        )
    line_index = 0  # hyperplane 0 has normal (1,0,0): the line x0 = 0
    on_l = [i for i in ps.indices if space.incidence[line_index, i]]
    if len(on_l) != k:
        raise AssertionFailed("L is not a k-secant", {"secant_size": len(on_l), "k": k})
    return RedeiSet(ps, line_index, k, e, is_minimal_blocking(ps))


@dataclass
class RedeiDualReport:
    word: Codeword
    weight: int
    hypothesis_met: bool  # k < (q+3)/2, the small-blocking-set range


def redei_dual_word(rs: RedeiSet) -> RedeiDualReport:
    """Difference of the incidence vectors of B and L: verified orthogonal to
    every line (raising NotInDual otherwise), expected weight 2q + 1 - k.
    The theorem hypothesis k < (q+3)/2 is reported, not required: outside it
    the verification is what decides membership."""
    space = rs.points.space
    q, p = space.field.q, space.field.p
    vec = rs.points.incidence_vector()
    vec = (vec - space.incidence[rs.line_index].astype(np.int64)) % p
    cache = line_cache(space)
    for l, row in enumerate(cache.line_points):
        if int(vec[row].sum() % p) != 0:
            raise NotInDual(f"B - L is not orthogonal to line {l}")
    wt = int(np.count_nonzero(vec))
    if wt != 2 * q + 1 - rs.k:
        raise AssertionFailed("Redei dual word weight mismatch", {"weight": wt, "expected": 2 * q + 1 - rs.k})
    word = Codeword(vec, {"redei": {"e": rs.e, "k": rs.k, "line": rs.line_index}})
    return RedeiDualReport(word, wt, 2 * rs.k < q + 3)


# -- Baer cones ---------------------------------------------------------------------


@dataclass
class BaerCone:
    points: PointSet
    vertex_dim: int
    base_dim: int
    minimal: bool


def baer_cone(space: ProjSpace, t: int) -> BaerCone:
    """Cone with a t-dimensional vertex over a 2(n-t-2)-dimensional Baer
    subgeometry (w.r.t. lines); t = -1 yields the Baer subgeometry itself."""
    f = space.field
    if f.h % 2 != 0:
        raise UsageError("Baer subgeometries need a square field order")
    nn = space.n
    t_lo, t_hi = max(-1, nn - 3), nn - 2
    if not t_lo <= t < t_hi:
        raise UsageError(f"vertex dimension {t} outside [{t_lo}, {t_hi})")
    base_dim = 2 * (nn - t - 2)
    sub = f.subfield_codes(f.h // 2)
    base_pts: list[np.ndarray] = []
    root = math.isqrt(f.q)
    for lead in range(base_dim + 1):
        tails = [[]]
        for _ in range(base_dim - lead):
            tails = [tl + [c] for tl in tails for c in sub]
        for tl in tails:
            v = np.zeros(nn + 1, dtype=np.int64)
            v[lead] = 1
            for j, c in enumerate(tl):
                v[lead + 1 + j] = c
            base_pts.append(v)
    if len(base_pts) != theta(root, base_dim):
        raise AssertionFailed("Baer subgeometry has wrong size", {"size": len(base_pts)})
    if t < 0:
        idx = [space.point_index(v) for v in base_pts]
    else:
        vertex_rows = np.zeros((t + 1, nn + 1), dtype=np.int64)
        for i in range(t + 1):
            vertex_rows[i, nn - i] = 1
        vertex = Subspace(space, vertex_rows)
        pts: set[int] = set(int(x) for x in vertex.point_indices())
        for v in base_pts:
            gen = span(space, vertex, v)
            pts.update(int(x) for x in gen.point_indices())
        idx = sorted(pts)
        expected = theta(f.q, t) + len(base_pts) * f.q ** (t + 1)
        if len(idx) != expected:
            raise AssertionFailed("cone size mismatch", {"size": len(idx), "expected": expected})
    ps = PointSet.from_indices(space, idx)
    if not is_blocking(ps):
        raise AssertionFailed("Baer cone fails to block some line", {"size": len(ps)})
    return BaerCone(ps, t, base_dim, is_minimal_blocking(ps))


# -- Sachar-style lower bounds ---------------------------------------------------


@dataclass
class SacharBounds:
    p: int
    q: int
    lem2_bound: Fraction | None  # for 2m symbols: q + (2m-1)q/(2m+1) + 6m/(2m+1)
    lem2_ceiling: int | None
    plane_bound: Fraction | None  # (12q+6)/7 if p = 7, (12q+18)/7 if p > 7
    plane_ceiling: int | None
    general_bound: Fraction | None  # (12q+7)/7 if p = 7, (12q+18)/7 if p > 7
    general_ceiling: int | None


def sachar_bounds(p: int, q: int, m: int | None = None) -> SacharBounds:
    """Lower bounds on dual minimum weights: the 2m-symbol count bound and the
    p = 7 / p > 7 plane and general-dimension bounds, as exact rationals with
    ceilings reported separately."""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if p <= 2:
        raise UsageError("symbol-count bounds need p > 2")
    lem2 = lem2_ceil = None
    if m is not None:
        if m < 1:
            raise UsageError("need m >= 1 symbol pairs")
        lem2 = Fraction(q) + Fraction((2 * m - 1) * q, 2 * m + 1) + Fraction(6 * m, 2 * m + 1)
        lem2_ceil = math.ceil(lem2)
    plane = general = None
    if p == 7:
        plane = Fraction(12 * q + 6, 7)
        general = Fraction(12 * q + 7, 7)
    elif p > 7:
        plane = Fraction(12 * q + 18, 7)
        general = plane
    return SacharBounds(
        p, q, lem2, lem2_ceil, plane, math.ceil(plane) if plane is not None else None,
        general, math.ceil(general) if general is not None else None,
    )
