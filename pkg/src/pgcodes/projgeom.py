"""Desarguesian projective spaces PG(n, q): points, subspaces, incidences,
and the field-reduction spread machinery.

Canonical point order: increasing position of the first nonzero coordinate,
then lexicographic in the integer element codes of the remaining coordinates.
Hyperplane i is the zero set of the dot product with the coordinate vector of
point i, so the point and hyperplane orders match under duality.
"""
from __future__ import annotations

import functools
import itertools
from pathlib import Path

import numpy as np

from . import fplinalg
from .errors import AssertionFailed, IOFormatError, NoTransversal, UsageError, WrongDimension
from .gfq import Field, field


def theta(q: int, k: int) -> int:
    """Number of points of PG(k, q): (q^(k+1) - 1)/(q - 1); theta(-1) = 0."""
    if k < 0:
        return 0
    return (q ** (k + 1) - 1) // (q - 1)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an m-dimensional vector space over GF(q)."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


class ProjSpace:
    """PG(n, q) over an explicit field, with cached point table and incidences."""

    def __init__(self, f: Field, n: int):
        if n < 1:
            raise UsageError(f"projective dimension must be >= 1, got {n}")
        self.field = f
        self.n = n
        self.num_points = theta(f.q, n)
        self.num_hyperplanes = self.num_points
        # offsets[k] = index of the first point whose leading coordinate is position k
        q = f.q
        self._offsets = [0] * (n + 2)
        for k in range(n + 1):
            self._offsets[k + 1] = self._offsets[k] + q ** (n - k)
        self._points: np.ndarray | None = None
        self._incidence: np.ndarray | None = None

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProjSpace) and self.field == other.field and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.field, self.n))

    def __repr__(self) -> str:
        return f"PG({self.n},{self.field.q})"

    def theta(self, k: int) -> int:
        return theta(self.field.q, k)

    # -- points ----------------------------------------------------------------

    @property
    def points(self) -> np.ndarray:
        """(num_points, n+1) array of normalized coordinates in canonical order."""
        if self._points is None:
            q, n = self.field.q, self.n
            dtype = np.uint8 if q <= 256 else np.int64
            blocks = []
            for k in range(n + 1):
                m = n - k  # free coordinates after the leading 1
                count = q**m
                block = np.zeros((count, n + 1), dtype=dtype)
                block[:, k] = 1
                if m:
                    tail = np.arange(count, dtype=np.int64)
                    for j in range(m - 1, -1, -1):
                        block[:, k + 1 + j] = tail % q
                        tail //= q
                blocks.append(block)
            self._points = np.vstack(blocks)
        return self._points

    def normalize(self, vec: np.ndarray) -> np.ndarray:
        """Scale so the first nonzero coordinate is 1."""
        v = np.asarray(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            raise UsageError("zero vector does not define a point")
        lead = int(v[nz[0]])
        if lead == 1:
            return v.copy()
        f = self.field
        inv = f.inv(lead)
        return np.array([f.mul(inv, int(x)) for x in v], dtype=v.dtype)

    def point_index(self, vec: np.ndarray) -> int:
        v = self.normalize(vec)
        k = int(np.nonzero(v)[0][0])
        acc = 0
        for x in v[k + 1 :]:
            acc = acc * self.field.q + int(x)
        return self._offsets[k] + acc

    def point_index_array(self, coords: np.ndarray) -> np.ndarray:
        """Vectorized point_index for an (m, n+1) array of (possibly unnormalized) rows."""
        f = self.field
        C = np.asarray(coords, dtype=np.int64)
        if C.ndim != 2 or C.shape[1] != self.n + 1:
            raise UsageError(f"expected (m, {self.n + 1}) coordinate array")
        nonzero = C != 0
        if not nonzero.any(axis=1).all():
            raise UsageError("zero row does not define a point")
        lead_pos = np.argmax(nonzero, axis=1)
        lead_val = C[np.arange(C.shape[0]), lead_pos]
        if f.h == 1:
            inv = np.array([0] + [pow(v, -1, f.p) for v in range(1, f.p)], dtype=np.int64)
            C = (C * inv[lead_val][:, None]) % f.p
        else:
            C = f.mul_table[f.inv_table[lead_val][:, None], C].astype(np.int64)
        q = f.q
        idx = np.zeros(C.shape[0], dtype=np.int64)
        for j in range(self.n + 1):
            past_lead = lead_pos < j
            idx[past_lead] = idx[past_lead] * q + C[past_lead, j]
        return np.array(self._offsets, dtype=np.int64)[lead_pos] + idx

    def point_coords(self, i: int) -> np.ndarray:
        return self.points[i]

    # -- GF(q) vector helpers --------------------------------------------------

    def dot(self, u: np.ndarray, v: np.ndarray) -> int:
        f = self.field
        acc = 0
        for a, b in zip(u, v):
            acc = f.add(acc, f.mul(int(a), int(b)))
        return acc

    @property
    def incidence(self) -> np.ndarray:
        """Point-hyperplane incidence matrix A: A[i, j] = 1 iff point j lies on hyperplane i."""
        if self._incidence is None:
            f = self.field
            P = self.points.astype(np.int64)
            N = self.num_points
            if f.h == 1:
                acc = (P @ P.T) % f.p
            else:
                acc = np.zeros((N, N), dtype=np.int64)
                for k in range(self.n + 1):
                    term = f.mul_table[np.ix_(P[:, k], P[:, k])].astype(np.int64)
                    acc = f.add_table[acc, term].astype(np.int64)
            self._incidence = (acc == 0).astype(np.uint8)
        return self._incidence

    def hyperplane_points(self, i: int) -> np.ndarray:
        return np.nonzero(self.incidence[i])[0]


@functools.lru_cache(maxsize=None)
def projective_space(p: int, h: int, n: int, modulus: tuple[int, ...] | None = None) -> ProjSpace:
    return ProjSpace(field(p, h, modulus), n)


# -- GF(q) row reduction (small dense matrices of element codes) --------------


def gfq_rref(M: np.ndarray, f: Field) -> tuple[np.ndarray, int, list[int]]:
    """RREF over GF(q); deterministic leftmost-pivot choice, like the GF(p) version."""
    R = np.asarray(M, dtype=np.int64).copy()
    if R.ndim != 2:
        R = np.atleast_2d(R)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if R[i, col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = f.inv(int(R[r, col]))
        if inv != 1:
            if f.h == 1:
                R[r] = (R[r] * inv) % f.p
            else:
                R[r] = f.mul_table[inv, R[r]]
        for i in range(nrows):
            if i != r and R[i, col]:
                c = int(R[i, col])
                if f.h == 1:
                    R[i] = (R[i] - c * R[r]) % f.p
                else:
                    R[i] = f.add_table[R[i], f.mul_table[f.neg_table[c], R[r]]]
        pivots.append(col)
        r += 1
    return R, r, pivots


def gfq_null_basis(M: np.ndarray, f: Field) -> np.ndarray:
    """Canonical right-null-space basis over GF(q)."""
    W = np.atleast_2d(np.asarray(M, dtype=np.int64))
    ncols = W.shape[1]
    R, rank, pivots = gfq_rref(W, f)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fr in enumerate(free):
        out[k, fr] = 1
        for i, c in enumerate(pivots):
            out[k, c] = f.neg(int(R[i, fr]))
    return out


class Subspace:
    """Projective subspace stored as a canonical GF(q)-RREF basis (rows)."""

    def __init__(self, space: ProjSpace, basis: np.ndarray):
        R, rank, _ = gfq_rref(np.atleast_2d(np.asarray(basis, dtype=np.int64)), space.field)
        self.space = space
        self.basis = R[:rank]
        self._point_idx: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0] - 1

    @property
    def is_empty(self) -> bool:
        return self.basis.shape[0] == 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.space == other.space
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.space, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} of {self.space!r})"

    def contains_coords(self, vec: np.ndarray) -> bool:
        f = self.space.field
        w = np.asarray(vec, dtype=np.int64).copy()
        for i in range(self.basis.shape[0]):
            col = int(np.nonzero(self.basis[i])[0][0])
            c = int(w[col])
            if c:
                if f.h == 1:
                    w = (w - c * self.basis[i]) % f.p
                else:
                    w = f.add_table[w, f.mul_table[f.neg_table[c], self.basis[i]]].astype(np.int64)
        return not w.any()

    def contains_point(self, idx: int) -> bool:
        return self.contains_coords(self.space.point_coords(idx))

    def point_indices(self) -> np.ndarray:
        """Sorted ambient indices of all points on this subspace."""
        if self._point_idx is None:
            f = self.space.field
            k = self.basis.shape[0]
            if k == 0:
                self._point_idx = np.zeros(0, dtype=np.int64)
            else:
                q = f.q
                combos = []
                for lead in range(k):
                    m = k - lead - 1
                    block = np.zeros((q**m, k), dtype=np.int64)
                    block[:, lead] = 1
                    tail = np.arange(q**m, dtype=np.int64)
                    for j in range(m - 1, -1, -1):
                        block[:, lead + 1 + j] = tail % q
                        tail //= q
                    combos.append(block)
                coef = np.vstack(combos)
                B = self.basis.astype(np.int64)
                acc = np.zeros((coef.shape[0], B.shape[1]), dtype=np.int64)
                for r in range(k):
                    if f.h == 1:
                        acc = (acc + coef[:, r : r + 1] * B[r : r + 1, :]) % f.p
                    else:
                        term = f.mul_table[coef[:, r : r + 1], B[r : r + 1, :]].astype(np.int64)
                        acc = f.add_table[acc, term].astype(np.int64)
                idx = self.space.point_index_array(acc)
                idx = np.unique(idx)
                if idx.size != self.space.theta(self.dim):
                    raise AssertionFailed(
                        "subspace point count mismatch",
                        {"expected": self.space.theta(self.dim), "got": int(idx.size)},
                    )
                self._point_idx = idx
        return self._point_idx


def span(space: ProjSpace, *items: int | np.ndarray | Subspace) -> Subspace:
    """Span of points (by index or coordinates) and subspaces."""
    rows = []
    for it in items:
        if isinstance(it, Subspace):
            rows.extend(it.basis)
        elif isinstance(it, (int, np.integer)):
            rows.append(space.point_coords(int(it)))
        else:
            rows.append(np.asarray(it))
    if not rows:
        raise UsageError("span of nothing")
    return Subspace(space, np.vstack([np.asarray(r, dtype=np.int64) for r in rows]))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection subspace (possibly empty), via the Zassenhaus block trick over GF(q)."""
    if u.space != v.space:
        raise UsageError("subspaces of different spaces")
    f = u.space.field
    n1 = u.basis.shape[1]
    A, B = u.basis, v.basis
    if A.shape[0] == 0 or B.shape[0] == 0:
        return Subspace(u.space, np.zeros((0, n1), dtype=np.int64))
    top = np.hstack([A, A])
    bot = np.hstack([B, np.zeros_like(B)])
    R, rank, _ = gfq_rref(np.vstack([top, bot]), f)
    keep = [i for i in range(rank) if not R[i, :n1].any()]
    return Subspace(u.space, R[keep, n1:] if keep else np.zeros((0, n1), dtype=np.int64))


def line_through(space: ProjSpace, i: int, j: int) -> Subspace:
    if i == j:
        raise UsageError("line needs two distinct points")
    return span(space, i, j)


def hyperplane_subspace(space: ProjSpace, i: int) -> Subspace:
    """Hyperplane i as a Subspace (null space of its normal vector)."""
    normal = space.point_coords(i).astype(np.int64)
    return Subspace(space, gfq_null_basis(normal[None, :], space.field))


def enumerate_subspaces(space: ProjSpace, d: int):
    """All d-dimensional subspaces, canonically ordered: pivot columns ascending
    lexicographic, then free entries lexicographic (row-major)."""
    n1 = space.n + 1
    k = d + 1
    if k < 1 or k > n1:
        raise UsageError(f"no subspaces of projective dimension {d} in {space!r}")
    q = space.field.q
    for pivots in itertools.combinations(range(n1), k):
        pivset = set(pivots)
        free_pos = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n1) if j not in pivset]
        base = np.zeros((k, n1), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        if not free_pos:
            yield Subspace(space, base)
            continue
        for values in itertools.product(range(q), repeat=len(free_pos)):
            M = base.copy()
            for (i, j), v in zip(free_pos, values):
                M[i, j] = v
            yield Subspace(space, M)


def num_subspaces(space: ProjSpace, d: int) -> int:
    return gaussian_binomial(space.n + 1, d + 1, space.field.q)


# -- field reduction: Desarguesian spreads ------------------------------------


class Spread:
    """Desarguesian (h-1)-spread of PG(h(n+1)-1, p) obtained by field reduction
    from PG(n, p^h).  Element i corresponds to point i of the source space."""

    def __init__(self, space: ProjSpace):
        f = space.field
        if f.h < 2:
            raise UsageError("field reduction needs an extension field (h >= 2)")
        self.source = space
        p, h, n = f.p, f.h, space.n
        self.ambient = projective_space(p, 1, h * (n + 1) - 1)
        fp = self.ambient.field
        num_elems = space.num_points
        self.elements: list[Subspace] = []
        element_points: list[np.ndarray] = []
        lookup = np.full(self.ambient.num_points, -1, dtype=np.int64)
        omega = p if h > 1 else 1  # code of the generator w (class of x)
        for i in range(num_elems):
            c = space.point_coords(i)
            rows = np.zeros((h, h * (n + 1)), dtype=np.int64)
            scale = 1
            for j in range(h):
                for t in range(n + 1):
                    rows[j, t * h : (t + 1) * h] = f.to_prime_vector(f.mul(scale, int(c[t])))
                scale = f.mul(scale, omega)
            el = Subspace(self.ambient, rows)
            if el.dim != h - 1:
                raise AssertionFailed("spread element has wrong dimension", {"point": i, "dim": el.dim})
            pts = el.point_indices()
            if (lookup[pts] != -1).any():
                raise AssertionFailed("spread elements overlap", {"point": i})
            lookup[pts] = i
            self.elements.append(el)
            element_points.append(pts)
        if (lookup == -1).any():
            raise AssertionFailed(
                "spread does not cover the ambient space",
                {"uncovered": int(np.count_nonzero(lookup == -1))},
            )
        self.element_points = element_points
        self.lookup = lookup

    @property
    def num_elements(self) -> int:
        return len(self.elements)

    def b_of(self, u: Subspace) -> np.ndarray:
        """Sorted indices of spread elements meeting the ambient subspace u."""
        if u.space != self.ambient:
            raise UsageError("subspace does not live in the spread's ambient space")
        return np.unique(self.lookup[u.point_indices()])

    def elements_in_span(self, i: int, j: int) -> tuple[list[int], Subspace]:
        """Spread elements contained in <E_i, E_j> (the regulus through the pair),
        plus the span itself.  Asserts the q+1 count and the exact partition."""
        if i == j:
            raise UsageError("need two distinct spread elements")
        s = span(self.ambient, self.elements[i], self.elements[j])
        spts = s.point_indices()
        hit = np.unique(self.lookup[spts])
        spt_set = set(int(x) for x in spts)
        inside = [int(e) for e in hit if all(int(pt) in spt_set for pt in self.element_points[e])]
        q = self.source.field.q
        if len(inside) != q + 1:
            raise AssertionFailed(
                "regulus size mismatch", {"expected": q + 1, "got": len(inside), "pair": [i, j]}
            )
        if sum(len(self.element_points[e]) for e in inside) != spts.size:
            raise AssertionFailed("span not partitioned by contained elements", {"pair": [i, j]})
        return inside, s

    def transversal_through(self, x: int, e2: int, e3: int) -> Subspace:
        """Line through ambient point x (on some element) meeting elements e2 and e3.

        Built as < x, <x, E2> /\\ E3 >, with incidence of the result asserted.
        """
        pi = span(self.ambient, x, self.elements[e2])
        y = intersect(pi, self.elements[e3])
        if y.dim != 0:
            raise NoTransversal(f"<x, E{e2}> meets E{e3} in dimension {y.dim}, not a point")
        m = span(self.ambient, x, y)
        if m.dim != 1:
            raise NoTransversal("transversal construction degenerated to a point")
        if intersect(m, self.elements[e2]).dim != 0:
            raise NoTransversal("constructed line misses the second element")
        return m


@functools.lru_cache(maxsize=None)
def desarguesian_spread(p: int, h: int, n: int, modulus: tuple[int, ...] | None = None) -> Spread:
    return Spread(projective_space(p, h, n, modulus))


# -- interchange formats -------------------------------------------------------


def write_points(path: str | Path, space: ProjSpace) -> None:
    f = space.field
    lines = [f"{f.p} {f.h} {space.n}"]
    for row in space.points:
        lines.append(" ".join(str(int(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_points(path: str | Path) -> tuple[ProjSpace, np.ndarray]:
    text = Path(path).read_text().splitlines()
    if not text:
        raise IOFormatError(f"{path}: empty point file")
    try:
        p, h, n = (int(t) for t in text[0].split())
    except ValueError as exc:
        raise IOFormatError(f"{path}: bad header {text[0]!r}") from exc
    space = projective_space(p, h, n)
    rows = []
    for line in text[1 : 1 + space.num_points]:
        rows.append([int(t) for t in line.split()])
    pts = np.array(rows, dtype=np.int64)
    if pts.shape != (space.num_points, n + 1):
        raise IOFormatError(f"{path}: expected {space.num_points} x {n + 1} points, got {pts.shape}")
    if not np.array_equal(pts, space.points.astype(np.int64)):
        raise IOFormatError(f"{path}: point table does not match canonical order")
    return space, pts


def write_spread(path: str | Path, spread: Spread) -> None:
    f = spread.source.field
    lines = [f"{f.p} {f.h} {spread.source.n}"]
    for pts in spread.element_points:
        lines.append(" ".join(str(int(x)) for x in pts))
    Path(path).write_text("\n".join(lines) + "\n")


def read_spread(path: str | Path) -> Spread:
    text = Path(path).read_text().splitlines()
    if not text:
        raise IOFormatError(f"{path}: empty spread file")
    try:
        p, h, n = (int(t) for t in text[0].split())
    except ValueError as exc:
        raise IOFormatError(f"{path}: bad header {text[0]!r}") from exc
    spread = desarguesian_spread(p, h, n)
    for i, line in enumerate(text[1 : 1 + spread.num_elements]):
        pts = np.array([int(t) for t in line.split()], dtype=np.int64)
        if not np.array_equal(pts, spread.element_points[i]):
            raise IOFormatError(f"{path}: element {i} does not match the canonical spread")
    return spread


def write_pointset(path: str | Path, space: ProjSpace, indices) -> None:
    f = space.field
    idx = sorted(int(i) for i in indices)
    if idx and (idx[0] < 0 or idx[-1] >= space.num_points):
        raise UsageError("point index out of range")
    lines = [f"{f.p} {f.h} {space.n} {len(idx)}"]
    lines.extend(str(i) for i in idx)
    Path(path).write_text("\n".join(lines) + "\n")


def read_pointset(path: str | Path) -> tuple[ProjSpace, np.ndarray]:
    text = Path(path).read_text().split()
    if len(text) < 4:
        raise IOFormatError(f"{path}: truncated point-set file")
    try:
        p, h, n, count = (int(t) for t in text[:4])
        idx = np.array([int(t) for t in text[4 : 4 + count]], dtype=np.int64)
    except ValueError as exc:
        raise IOFormatError(f"{path}: bad entry ({exc})") from exc
    if idx.size != count:
        raise IOFormatError(f"{path}: expected {count} indices, found {idx.size}")
    space = projective_space(p, h, n)
    if idx.size and (idx.min() < 0 or idx.max() >= space.num_points):
        raise IOFormatError(f"{path}: point index out of range for {space!r}")
    if not np.array_equal(idx, np.unique(idx)):
        raise IOFormatError(f"{path}: indices must be strictly increasing")
    return space, idx
