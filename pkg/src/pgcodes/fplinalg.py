"""Dense exact linear algebra over GF(p) on numpy integer arrays.

All routines are deterministic: pivots are chosen leftmost-column,
lowest-row-index, and canonical forms (RREF, null basis) depend only on
the input matrix, never on timing or hashing order.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import IOFormatError, UsageError

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _as_work(M: np.ndarray, p: int) -> np.ndarray:
    W = np.atleast_2d(np.asarray(M, dtype=np.int64)) % p
    return W


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form over GF(p): (R, rank, pivot_columns)."""
    R = _as_work(M, p).copy()
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, col]), -1, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        others = np.nonzero(R[:, col])[0]
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[r])) % p
        pivots.append(col)
        r += 1
    return R, r, pivots


def rank_modp(M: np.ndarray, p: int) -> int:
    return rref(M, p)[1]


def reduce_vector(v: np.ndarray, R: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Residue of v after eliminating against RREF rows; zero iff v in row space."""
    w = np.asarray(v, dtype=np.int64).copy() % p
    for i, col in enumerate(pivots):
        c = int(w[col])
        if c:
            w = (w - c * R[i]) % p
    return w


class RowSpace:
    """Row space of a matrix over GF(p), cached in RREF for membership tests."""

    def __init__(self, M: np.ndarray, p: int):
        self.p = p
        R, rank, pivots = rref(M, p)
        self.basis = R[:rank].copy()
        self.rank = rank
        self.pivots = pivots

    def contains(self, v: np.ndarray) -> bool:
        return not reduce_vector(v, self.basis, self.pivots, self.p).any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RowSpace)
            and self.p == other.p
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.basis.tobytes()))


def row_member(v: np.ndarray, M: np.ndarray, p: int) -> bool:
    return RowSpace(M, p).contains(v)


def null_basis(M: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rows) of the right null space {x : M x = 0 mod p}."""
    W = _as_work(M, p)
    ncols = W.shape[1]
    R, rank, pivots = rref(W, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-int(R[i, f])) % p
    return basis


def row_space_intersection(M1: np.ndarray, M2: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of rowspace(M1) /\\ rowspace(M2) (Zassenhaus block trick)."""
    A = _as_work(M1, p)
    B = _as_work(M2, p)
    if A.shape[1] != B.shape[1]:
        raise UsageError("row spaces live in different ambient dimensions")
    n = A.shape[1]
    top = np.hstack([A, A])
    bot = np.hstack([B, np.zeros_like(B)])
    R, rank, _ = rref(np.vstack([top, bot]), p)
    keep = [i for i in range(rank) if not R[i, :n].any()]
    inter = R[keep, n:]
    Rr, rr, _ = rref(inter, p) if len(keep) else (np.zeros((0, n), dtype=np.int64), 0, [])
    return Rr[:rr]


def weight(v: np.ndarray) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def support(v: np.ndarray) -> list[int]:
    return [int(i) for i in np.nonzero(np.asarray(v))[0]]


# -- interchange format ------------------------------------------------------


def digits_of_row(row: np.ndarray) -> str:
    return "".join(_DIGITS[int(x)] for x in row)


def row_of_digits(line: str, p: int) -> np.ndarray:
    try:
        vals = [_DIGITS.index(ch) for ch in line.strip()]
    except ValueError as exc:
        raise IOFormatError(f"bad digit in matrix row: {exc}") from exc
    if any(v >= p for v in vals):
        raise IOFormatError(f"entry >= p={p} in row {line.strip()!r}")
    return np.array(vals, dtype=np.int64)


def write_matrix(path: str | Path, M: np.ndarray, p: int) -> None:
    if p > len(_DIGITS):
        raise IOFormatError(f"digit alphabet covers p <= {len(_DIGITS)}")
    W = _as_work(M, p)
    lines = [f"{p} {W.shape[0]} {W.shape[1]}"]
    lines.extend(digits_of_row(row) for row in W)
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path: str | Path) -> tuple[np.ndarray, int]:
    text = Path(path).read_text().splitlines()
    if not text:
        raise IOFormatError(f"{path}: empty matrix file")
    try:
        p, nrows, ncols = (int(t) for t in text[0].split())
    except ValueError as exc:
        raise IOFormatError(f"{path}: bad header {text[0]!r}") from exc
    if len(text) < 1 + nrows:
        raise IOFormatError(f"{path}: expected {nrows} rows, found {len(text) - 1}")
    rows = []
    for line in text[1 : 1 + nrows]:
        row = row_of_digits(line, p)
        if row.size != ncols:
            raise IOFormatError(f"{path}: row length {row.size} != {ncols}")
        rows.append(row)
    return np.array(rows, dtype=np.int64), p
