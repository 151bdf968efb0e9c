"""Exception hierarchy shared by every module.

Each error class maps to one CLI exit code, so callers can separate
"your input was bad" from "a verified invariant failed" from "a resource
cap was hit".
"""

from __future__ import annotations


class PolybanError(Exception):
    """Base class for all library errors."""


class InputError(PolybanError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DegeneracyError(InputError):
    """Geometric degeneracy: unbounded hrep, vrep not full-dimensional."""


class PreconditionError(InputError):
    """A documented operation precondition does not hold."""


class VerificationError(PolybanError):
    """An exact invariant or certificate check failed (CLI exit code 1)."""


class ResourceCapError(PolybanError):
    """A configured hard cap was exceeded (CLI exit code 3).

    Carries enough structure for the chain runner to defer the offending
    request instead of aborting, and for the CLI to report completed work.
    """

    def __init__(self, cap_name, limit, attempted, detail=None):
        self.cap_name = cap_name
        self.limit = limit
        self.attempted = attempted
        self.detail = detail
        message = f"cap {cap_name} exceeded: attempted {attempted}, limit {limit}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)

    def payload(self):
        return {
            "cap": self.cap_name,
            "limit": self.limit,
            "attempted": self.attempted,
            "detail": self.detail,
        }
