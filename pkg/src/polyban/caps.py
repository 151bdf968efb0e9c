"""Hard resource caps.

Defaults: dimension <= 6, vertices per polytope <= 4096. Both are
configurable through environment variables (POLYBAN_DIM_CAP,
POLYBAN_VERTEX_CAP) or programmatically via ``set_caps``. Exceeding a cap
always raises a structured ResourceCapError; nothing is silently truncated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputError, ResourceCapError

DIM_CAP_ENV = "POLYBAN_DIM_CAP"
VERTEX_CAP_ENV = "POLYBAN_VERTEX_CAP"


@dataclass(frozen=True)
class Caps:
    dim_cap: int = 6
    vertex_cap: int = 4096


def _caps_from_env() -> Caps:
    caps = Caps()
    dim = os.environ.get(DIM_CAP_ENV)
    vert = os.environ.get(VERTEX_CAP_ENV)
    try:
        if dim is not None:
            caps = Caps(dim_cap=int(dim), vertex_cap=caps.vertex_cap)
        if vert is not None:
            caps = Caps(dim_cap=caps.dim_cap, vertex_cap=int(vert))
    except ValueError as exc:
        raise InputError(f"cap environment variables must be integers: {exc}") from exc
    if caps.dim_cap < 1 or caps.vertex_cap < 1:
        raise InputError("caps must be positive")
    return caps


_active = _caps_from_env()


def current_caps() -> Caps:
    return _active


def set_caps(caps: Caps) -> Caps:
    """Install new caps, returning the previous ones (for test scoping)."""
    global _active
    if caps.dim_cap < 1 or caps.vertex_cap < 1:
        raise InputError("caps must be positive")
    previous = _active
    _active = caps
    return previous


def check_dim(dim: int, context: str = "") -> None:
    caps = current_caps()
    if dim > caps.dim_cap:
        raise ResourceCapError("dimension", caps.dim_cap, dim, context or None)
    if dim < 0:
        raise InputError(f"dimension must be nonnegative, got {dim}")


def check_vertex_count(count: int, context: str = "") -> None:
    caps = current_caps()
    if count > caps.vertex_cap:
        raise ResourceCapError("vertices", caps.vertex_cap, count, context or None)
