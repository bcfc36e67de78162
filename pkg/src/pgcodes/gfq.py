"""Arithmetic in GF(q), q = p^h, with table-backed operations.

Elements are integer codes 0..q-1: the code of sum(a_i * w^i) is
sum(a_i * p^i), where w is the class of x modulo the defining polynomial
and a_i in {0..p-1}.  Code arithmetic is exposed both as Field methods
(fast path, used by the geometry layer) and as a small operator-overloading
wrapper (convenient in tests and scripts).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import NoModulusKnown, NotIrreducible, NotPrime, UsageError

# Shipped monic moduli, coefficients low -> high degree.
#   GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+1, GF(16): x^4+x+1,
#   GF(25): x^2+2, GF(27): x^3+2x+1.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (7, 2): (1, 0, 1),
}

_TABLE_LIMIT = 512  # largest q for which dense q x q tables are built


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """(p, h) with q = p^h, p prime; raises NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = 2
    while q % p != 0:
        p += 1
    h, m = 0, q
    while m % p == 0:
        m //= p
        h += 1
    if m != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, h


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return tuple(out)


def _poly_divmod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    quo = [0] * max(len(a) - dm, 1)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            f = (c * lead_inv) % p
            quo[i - dm] = f
            for j, mj in enumerate(m):
                a[i - dm + j] = (a[i - dm + j] - f * mj) % p
    rem = a[:dm] if dm else []
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return tuple(quo), tuple(rem or [0])


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial root/factor search; sufficient for degrees up to 4."""
    h = len(modulus) - 1
    if h < 1 or modulus[-1] % p == 0:
        return False
    if h == 1:
        return True
    for r in range(p):  # linear factors
        if sum(c * pow(r, i, p) for i, c in enumerate(modulus)) % p == 0:
            return False
    if h >= 4:  # degree-2 factors (degree-3 cofactors would expose a root first)
        for c0 in range(p):
            for c1 in range(p):
                _, rem = _poly_divmod(modulus, (c0, c1, 1), p)
                if rem == (0,):
                    return False
    return True


class Field:
    """GF(p^h) with precomputed add/mul/inv tables for table-sized q."""

    def __init__(self, p: int, h: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if h < 1:
            raise UsageError(f"extension degree must be >= 1, got {h}")
        self.p = p
        self.h = h
        self.q = p**h
        if h == 1:
            modulus = (0, 1) if modulus is None else tuple(c % p for c in modulus)
        else:
            if modulus is None:
                if (p, h) not in MODULI:
                    raise NoModulusKnown(f"no modulus shipped for GF({p}^{h}); pass one explicitly")
                modulus = MODULI[(p, h)]
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != h + 1:
                raise UsageError(f"modulus degree {len(modulus) - 1} != extension degree {h}")
            if not _is_irreducible(modulus, p):
                raise NotIrreducible(f"modulus {modulus} is reducible over GF({p})")
            if self.q > _TABLE_LIMIT:
                raise UsageError(f"q={self.q} exceeds table limit {_TABLE_LIMIT} for extension fields")
        self.modulus = modulus
        self._has_tables = self.q <= _TABLE_LIMIT
        if self._has_tables:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _code_to_poly(self, x: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.h):
            digits.append(x % self.p)
            x //= self.p
        return tuple(digits)

    def _poly_to_code(self, poly: tuple[int, ...]) -> int:
        code = 0
        for c in reversed(poly[: self.h]):
            code = code * self.p + (c % self.p)
        return code

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        dtype = np.uint8 if q <= 256 else np.uint16
        add = np.zeros((q, q), dtype=dtype)
        mul = np.zeros((q, q), dtype=dtype)
        polys = [self._code_to_poly(x) for x in range(q)]
        for a in range(q):
            pa = polys[a]
            for b in range(a, q):
                pb = polys[b]
                s = tuple((u + v) % p for u, v in zip(pa, pb))
                add[a, b] = add[b, a] = self._poly_to_code(s)
                prod = _poly_mul(pa, pb, p)
                if len(prod) > self.h:
                    _, prod = _poly_divmod(prod, self.modulus, p)
                mul[a, b] = mul[b, a] = self._poly_to_code(prod)
        inv = np.zeros(q, dtype=dtype)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        neg = np.zeros(q, dtype=dtype)
        for a in range(q):
            neg[a] = self._poly_to_code(tuple((-c) % p for c in polys[a]))
        self.add_table = add
        self.mul_table = mul
        self.inv_table = inv
        self.neg_table = neg

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        if self.h == 1:
            return (-a) % self.p
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a * b) % self.p
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        if self.h == 1:
            return pow(a, -1, self.p)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a: int, e: int = 1) -> int:
        """a -> a^(p^e), the e-th power of the Frobenius automorphism."""
        return self.power(a, pow(self.p, e % self.h if self.h > 1 else 1))

    def to_prime_vector(self, a: int) -> tuple[int, ...]:
        """Coordinates of a over GF(p) w.r.t. the power basis 1, w, ..., w^(h-1)."""
        return self._code_to_poly(a)

    def from_prime_vector(self, vec: tuple[int, ...]) -> int:
        if len(vec) != self.h:
            raise UsageError(f"expected length-{self.h} vector, got {len(vec)}")
        return self._poly_to_code(tuple(vec))

    def subfield_codes(self, e: int) -> list[int]:
        """Sorted codes of the subfield GF(p^e); requires e | h."""
        if self.h % e != 0:
            raise UsageError(f"GF({self.p}^{e}) is not a subfield of GF({self.p}^{self.h})")
        return sorted(a for a in range(self.q) if self.frobenius(a, e) == a)

    def elements(self) -> range:
        return range(self.q)

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code % self.q)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.h, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.h})" if self.h > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    """Operator-overloading wrapper around an element code."""

    field: Field
    code: int

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError("elements of different fields")
            return other.code
        return other % self.field.q

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code


@functools.lru_cache(maxsize=None)
def field(p: int, h: int = 1, modulus: tuple[int, ...] | None = None) -> Field:
    """Cached field constructor; same (p, h, modulus) returns the same object."""
    return Field(p, h, modulus)
