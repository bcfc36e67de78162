"""Exception hierarchy shared across the package."""
from __future__ import annotations

import json
from typing import Any


class PgcodesError(Exception):
    """Base class for all package errors."""


class UsageError(PgcodesError):
    """Caller passed inconsistent or out-of-domain arguments."""


class NotPrime(UsageError):
    """Claimed characteristic is not a prime number."""


class NotIrreducible(UsageError):
    """Supplied modulus polynomial factors over the prime field."""


class NoModulusKnown(UsageError):
    """No modulus is shipped for this field order and none was supplied."""


class WrongDimension(UsageError):
    """Subspace has the wrong projective dimension for the operation."""


class PlaneNotInSpace(UsageError):
    """Plane argument does not live in the target space."""


class NotBlocking(UsageError):
    """Point set fails to meet some line."""


class NotOneModP(UsageError):
    """A line intersection size violates the required 1 mod p congruence."""


class PointInSupport(UsageError):
    """Projection point lies in the codeword support."""


class PointOnHyperplane(UsageError):
    """Projection point lies on the target hyperplane."""


class NoTangentThroughR(UsageError):
    """No tangent line to the support passes through the projection point."""


class NoTransversal(PgcodesError):
    """Transversal construction degenerated (no unique intersection point)."""


class NotInDual(PgcodesError):
    """Constructed vector failed direct verification against the dual code."""


class BudgetExceeded(PgcodesError):
    """Search would exceed the declared enumeration/combination budget."""

    def __init__(self, message: str, needed: int | None = None, allowed: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.allowed = allowed


class AssertionFailed(PgcodesError):
    """A machine-checked identity that must hold was violated.

    Carries a JSON-serializable payload describing the witness so the
    failure can be reproduced.
    """

    def __init__(self, message: str, payload: dict[str, Any] | None = None):
        super().__init__(message)
        self.payload = payload or {}

    def serialized(self) -> str:
        return json.dumps({"message": str(self), "payload": self.payload}, sort_keys=True)


class IOFormatError(PgcodesError):
    """File did not parse as the expected interchange format."""
