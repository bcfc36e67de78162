"""The p-ary code C of points and hyperplanes of PG(n, q), its dual and hull.

C is the GF(p)-row span of the incidence matrix; the hull is C /\\ C-dual and
equals the span of all differences of two hyperplane rows, which is checked,
not assumed.  Small codewords are classified against the blocking-set
characterization: {0, a}-valued, support a minimal blocking set meeting every
line in 1 mod p points.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dfield
from pathlib import Path
from typing import Any

import numpy as np

from . import fplinalg, projgeom
from .errors import (
    AssertionFailed,
    IOFormatError,
    NoTangentThroughR,
    NotInDual,
    PlaneNotInSpace,
    PointInSupport,
    PointOnHyperplane,
    UsageError,
)
from .projgeom import ProjSpace, Subspace


def dimension_formula(p: int, h: int, n: int) -> int:
    """Known dimension of C(PG(n, p^h)): binom(n+p-1, n)^h + 1."""
    return math.comb(n + p - 1, n) ** h + 1


@dataclass
class Codeword:
    """A vector over GF(p) together with how it was produced."""

    vector: np.ndarray
    provenance: dict[str, Any] = dfield(default_factory=dict)

    @property
    def weight(self) -> int:
        return fplinalg.weight(self.vector)

    @property
    def support(self) -> list[int]:
        return fplinalg.support(self.vector)

    def digits(self) -> str:
        return fplinalg.digits_of_row(self.vector)


class Code:
    """Row span of the point-hyperplane incidence matrix over GF(p)."""

    def __init__(self, space: ProjSpace):
        self.space = space
        self.p = space.field.p
        self.matrix = space.incidence
        self._rowspace: fplinalg.RowSpace | None = None
        self._dual_basis: np.ndarray | None = None
        self._hull_basis: np.ndarray | None = None

    @property
    def rowspace(self) -> fplinalg.RowSpace:
        if self._rowspace is None:
            self._rowspace = fplinalg.RowSpace(self.matrix, self.p)
        return self._rowspace

    @property
    def dimension(self) -> int:
        return self.rowspace.rank

    @property
    def length(self) -> int:
        return self.space.num_points

    def generator_basis(self) -> np.ndarray:
        return self.rowspace.basis

    def dual_basis(self) -> np.ndarray:
        if self._dual_basis is None:
            self._dual_basis = fplinalg.null_basis(self.matrix, self.p)
        return self._dual_basis

    def dual_dimension(self) -> int:
        return self.length - self.dimension

    def hull_basis(self) -> np.ndarray:
        """Basis of C /\\ C-dual, verified equal to <H_i - H_0 : i> with
        dimension dim(C) - 1."""
        if self._hull_basis is None:
            hull = fplinalg.row_space_intersection(self.matrix, self.dual_basis(), self.p)
            diffs = (self.matrix[1:].astype(np.int64) - self.matrix[0].astype(np.int64)) % self.p
            diff_space = fplinalg.RowSpace(diffs, self.p)
            if hull.shape[0] != self.dimension - 1 or diff_space.rank != hull.shape[0]:
                raise AssertionFailed(
                    "hull is not spanned by hyperplane differences",
                    {"hull_dim": int(hull.shape[0]), "diff_dim": int(diff_space.rank),
                     "code_dim": self.dimension},
                )
            for row in hull:
                if not diff_space.contains(row):
                    raise AssertionFailed("hull vector outside difference span", {})
            self._hull_basis = hull
        return self._hull_basis

    def hull_dimension(self) -> int:
        return self.hull_basis().shape[0]

    def contains(self, vec: np.ndarray) -> bool:
        return self.rowspace.contains(vec)

    def dual_contains(self, vec: np.ndarray) -> bool:
        """v in C-dual iff A v = 0 (the rows of A generate C)."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        return not ((self.matrix.astype(np.int64) @ v) % self.p).any()

    def hull_contains(self, vec: np.ndarray) -> bool:
        return self.contains(vec) and self.dual_contains(vec)

    def word_from_hyperplanes(self, coeffs: dict[int, int]) -> Codeword:
        """Linear combination sum(coeffs[i] * H_i) of hyperplane rows."""
        vec = np.zeros(self.length, dtype=np.int64)
        for i, c in sorted(coeffs.items()):
            if not 0 <= i < self.num_hyperplanes:
                raise UsageError(f"hyperplane index {i} out of range")
            vec = (vec + (c % self.p) * self.matrix[i].astype(np.int64)) % self.p
        return Codeword(vec, {"hyperplanes": {str(i): int(c % self.p) for i, c in coeffs.items()}})

    @property
    def num_hyperplanes(self) -> int:
        return self.space.num_hyperplanes


def scalar_profile(code: Code, vec: np.ndarray, dims: list[int]) -> dict[int, list[int]]:
    """For each d: the set of values (v, U) mod p over all d-subspaces U."""
    v = np.asarray(vec, dtype=np.int64) % code.p
    out: dict[int, list[int]] = {}
    for d in dims:
        vals = set()
        for U in projgeom.enumerate_subspaces(code.space, d):
            vals.add(int(v[U.point_indices()].sum() % code.p))
        out[d] = sorted(vals)
    return out


@dataclass
class SmallWordReport:
    weight: int
    value: int
    constant_valued: bool
    one_mod_p_lines: bool
    blocking: bool
    minimal: bool
    is_hyperplane_multiple: bool


def classify_small_codeword(code: Code, vec: np.ndarray) -> SmallWordReport:
    """Check the structure forced on codewords of weight below 2q^(n-1):
    {0, a}-valued, support a minimal blocking set meeting every line in
    1 mod p points.  Violations raise AssertionFailed with a witness."""
    from . import blocking  # local import to keep the module graph acyclic

    space = code.space
    q, n, p = space.field.q, space.n, code.p
    v = np.asarray(vec, dtype=np.int64) % p
    wt = fplinalg.weight(v)
    if wt == 0 or wt >= 2 * q ** (n - 1):
        raise UsageError(f"weight {wt} outside ]0, 2q^(n-1)[ = ]0, {2 * q ** (n - 1)}[")
    if not code.contains(v):
        raise UsageError("vector is not a codeword")
    values = sorted(set(int(x) for x in v[v != 0]))
    constant = len(values) == 1
    if not constant:
        raise AssertionFailed(
            "small codeword is not {0, a}-valued",
            {"weight": wt, "values": values, "digits": fplinalg.digits_of_row(v)},
        )
    a = values[0]
    supp = blocking.PointSet.from_indices(space, fplinalg.support(v))
    cache = blocking.line_cache(space)
    sizes = {len(np.intersect1d(line, supp.indices)) for line in cache.line_points}
    one_mod_p = all(s % p == 1 for s in sizes)
    blk = 0 not in sizes
    minimal = blk and all(blocking.tangent_count(supp, P) >= 1 for P in supp.indices)
    if not (one_mod_p and blk and minimal):
        raise AssertionFailed(
            "small codeword support violates the blocking-set characterization",
            {"weight": wt, "one_mod_p": one_mod_p, "blocking": blk, "minimal": minimal,
             "digits": fplinalg.digits_of_row(v)},
        )
    is_hyp = wt == space.theta(n - 1) and any(
        np.array_equal(supp.indices, space.hyperplane_points(i)) for i in range(space.num_hyperplanes)
    )
    return SmallWordReport(wt, a, constant, one_mod_p, blk, minimal, is_hyp)


def subspace_map(target: ProjSpace, sub: Subspace) -> np.ndarray:
    """Ambient indices phi(x) for every point x of `target`, where phi sends
    coordinates through the canonical RREF basis of `sub`.  phi is a
    collineation onto `sub`, so subspaces map to subspaces."""
    if sub.dim != target.n:
        raise UsageError(f"subspace dim {sub.dim} does not match target PG({target.n}, q)")
    f = sub.space.field
    coords = target.points.astype(np.int64)
    B = sub.basis.astype(np.int64)
    acc = np.zeros((coords.shape[0], B.shape[1]), dtype=np.int64)
    for r in range(B.shape[0]):
        if f.h == 1:
            acc = (acc + coords[:, r : r + 1] * B[r : r + 1, :]) % f.p
        else:
            acc = f.add_table[acc, f.mul_table[coords[:, r : r + 1], B[r : r + 1, :]]].astype(np.int64)
    return sub.space.point_index_array(acc)


def project_dual_word(code: Code, vec: np.ndarray, r: int, hyp: int) -> Codeword:
    """Project a dual codeword from a point r onto hyperplane `hyp`:
    c'_P = sum of c over the line <r, P>, for P on the hyperplane.

    The result is indexed by PG(n-1, q) through the hyperplane's canonical
    basis and is verified to lie in the dual of the smaller code.
    """
    space = code.space
    v = np.asarray(vec, dtype=np.int64) % code.p
    if not code.dual_contains(v):
        raise UsageError("vector is not in the dual code")
    if v[r] != 0:
        raise PointInSupport(f"projection point {r} lies in the support")
    if space.incidence[hyp, r]:
        raise PointOnHyperplane(f"projection point {r} lies on hyperplane {hyp}")
    supp = set(fplinalg.support(v))
    tangent = False
    for pt in sorted(supp):
        line = projgeom.line_through(space, r, pt).point_indices()
        if sum(1 for x in line if int(x) in supp) == 1:
            tangent = True
            break
    if not tangent:
        raise NoTangentThroughR(f"no tangent line to the support passes through {r}")
    f = space.field
    target = projgeom.projective_space(f.p, f.h, space.n - 1, f.modulus if f.h > 1 else None)
    H = projgeom.hyperplane_subspace(space, hyp)
    phi = subspace_map(target, H)
    out = np.zeros(target.num_points, dtype=np.int64)
    for t in range(target.num_points):
        line = projgeom.line_through(space, r, int(phi[t])).point_indices()
        out[t] = int(v[line].sum() % code.p)
    small = Code(target)
    if not small.dual_contains(out):
        raise AssertionFailed("projection left the dual code", {"r": r, "hyperplane": hyp})
    return Codeword(out, {"projection": {"r": r, "hyperplane": hyp, "from": repr(space)}})


def embed_planar_dual_word(planar: Code, vec: np.ndarray, target_code: Code, plane: Subspace) -> Codeword:
    """Zero-extend a planar dual word onto a plane of a larger space; the
    result is verified to lie in the dual of the larger code."""
    space = target_code.space
    if plane.space != space:
        raise PlaneNotInSpace("plane lives in a different space")
    if plane.dim != 2:
        raise PlaneNotInSpace(f"subspace has dimension {plane.dim}, not 2")
    if planar.space.field != space.field:
        raise UsageError("planar code and target code have different fields")
    v = np.asarray(vec, dtype=np.int64) % planar.p
    if v.shape[0] != planar.length:
        raise UsageError("vector length does not match the planar code")
    phi = subspace_map(planar.space, plane)
    out = np.zeros(space.num_points, dtype=np.int64)
    out[phi] = v
    if not target_code.dual_contains(out):
        raise NotInDual("embedded word fails orthogonality against some hyperplane")
    return Codeword(out, {"embedding": {"plane_basis": plane.basis.tolist(), "into": repr(space)}})


# -- interchange format ------------------------------------------------------


def write_codeword(path: str | Path, word: Codeword, p: int) -> None:
    path = Path(path)
    vec = np.asarray(word.vector, dtype=np.int64) % p
    path.write_text(f"{p} {vec.shape[0]}\n{fplinalg.digits_of_row(vec)}\n")
    if word.provenance:
        path.with_suffix(path.suffix + ".provenance.json").write_text(
            json.dumps(word.provenance, sort_keys=True, indent=2) + "\n"
        )


def read_codeword(path: str | Path) -> tuple[np.ndarray, int]:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 2:
        raise IOFormatError(f"{path}: truncated codeword file")
    try:
        p, n = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise IOFormatError(f"{path}: bad header {lines[0]!r}") from exc
    vec = fplinalg.row_of_digits(lines[1], p)
    if vec.shape[0] != n:
        raise IOFormatError(f"{path}: expected {n} digits, found {vec.shape[0]}")
    return vec, p
