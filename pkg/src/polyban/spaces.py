"""Polyhedral normed spaces.

A PolyhedralSpace is a dimension plus a canonical symmetric polytope, its
unit ball; the ball's functionals realize the norm as max_i |phi_i(x)|.
Spaces compare equal iff dim and canonical ball data are equal (labels are
display-only), which makes isometric-identity a syntactic check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .linalg import Matrix, dot, identity, mat, matvec, rank, transpose
from .polytope import (
    SymmetricPolytope,
    dd_convert,
    from_hrep,
    from_vrep,
    polar,
    polytope_contains,
)
from .rationals import ZERO, format_rational, parse_rational


@dataclass(frozen=True, eq=False)
class PolyhedralSpace:
    dim: int
    ball: SymmetricPolytope
    label: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.ball, SymmetricPolytope):
            raise InputError("ball must be a SymmetricPolytope")
        if not self.ball.canonical:
            raise InputError("space ball must be canonical; run dd_convert first")
        if self.ball.dim != self.dim:
            raise InputError(f"ball dimension {self.ball.dim} != space dimension {self.dim}")

    # identity deliberately ignores the label
    def __eq__(self, other):
        if not isinstance(other, PolyhedralSpace):
            return NotImplemented
        return self.dim == other.dim and self.ball == other.ball

    def __hash__(self):
        return hash((self.dim, self.ball))

    @property
    def functionals(self) -> Matrix:
        return self.ball.hrep

    @property
    def vertices(self) -> Matrix:
        return self.ball.vrep


@dataclass(frozen=True)
class Subspace:
    ambient: PolyhedralSpace
    basis: Matrix  # ambient.dim rows, k columns

    def __post_init__(self):
        basis = self.basis
        if not isinstance(basis, tuple) or not basis:
            raise InputError("basis must be a nonempty tuple matrix; use mat()")
        if len(basis) != self.ambient.dim:
            raise InputError(f"basis has {len(basis)} rows, ambient dimension is {self.ambient.dim}")
        k = len(basis[0])
        if k < 1 or k > self.ambient.dim:
            raise InputError(f"subspace dimension {k} out of range 1..{self.ambient.dim}")
        if rank(basis) != k:
            raise InputError("basis columns are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis[0])


def space_from_functionals(functionals, label=None) -> PolyhedralSpace:
    ball = dd_convert(from_hrep(functionals))
    return PolyhedralSpace(dim=ball.dim, ball=ball, label=label)


def space_from_vertices(vertices, label=None) -> PolyhedralSpace:
    ball = dd_convert(from_vrep(vertices))
    return PolyhedralSpace(dim=ball.dim, ball=ball, label=label)


def norm(space: PolyhedralSpace, x) -> object:
    """The norm max_i |phi_i(x)|, computed exactly."""
    if len(x) != space.dim:
        raise InputError(f"vector of length {len(x)} in space of dimension {space.dim}")
    best = ZERO
    for phi in space.functionals:
        value = dot(phi, x)
        if value < 0:
            value = -value
        if value > best:
            best = value
    return best


def unit_ball_contains(space: PolyhedralSpace, x) -> bool:
    return polytope_contains(space.ball, x)


def make_linf(n: int, label=None) -> PolyhedralSpace:
    """sup-norm space: ball is the cube [-1, 1]^n."""
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    return space_from_functionals(identity(n), label=label)


def make_l1(n: int, label=None) -> PolyhedralSpace:
    """sum-norm space: ball is the cross-polytope conv(+-e_i)."""
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    return space_from_vertices(identity(n), label=label)


def dual(space: PolyhedralSpace) -> PolyhedralSpace:
    """The dual space: unit ball is the polar of the primal ball.

    Pure representation swap (facets become vertices and vice versa), so
    dual(dual(X)) == X exactly.
    """
    label = None if space.label is None else f"dual({space.label})"
    return PolyhedralSpace(dim=space.dim, ball=polar(space.ball), label=label)


def induced(sub: Subspace, label=None) -> PolyhedralSpace:
    """The subspace with the norm inherited from the ambient space.

    Functionals are the ambient ones composed with the basis; the ball is
    re-canonicalized in the subspace coordinates. For every u,
    norm(induced(sub), u) == norm(ambient, basis . u).
    """
    bt = transpose(sub.basis)
    pulled = []
    for phi in sub.ambient.functionals:
        row = matvec(bt, phi)
        if any(x != 0 for x in row):
            pulled.append(row)
    return space_from_functionals(mat(pulled), label=label)


def embed_vector(sub: Subspace, u):
    """Coordinates of the subspace point u in the ambient space."""
    if len(u) != sub.dim:
        raise InputError("subspace coordinate dimension mismatch")
    return matvec(sub.basis, u)


def space_to_json(space: PolyhedralSpace) -> dict:
    data = {
        "dim": space.dim,
        "functionals": [[format_rational(x) for x in row] for row in space.functionals],
        "vertices": [[format_rational(x) for x in row] for row in space.vertices],
    }
    if space.label is not None:
        data["label"] = space.label
    return data


def space_from_json(data: dict) -> PolyhedralSpace:
    if not isinstance(data, dict):
        raise InputError("space JSON must be an object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("space JSON needs an integer 'dim'")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise InputError("'label' must be a string")

    def load(name):
        rows = data.get(name)
        if rows is None:
            return None
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError(f"'{name}' must be a list of rows")
        loaded = mat([[parse_rational(x) for x in row] for row in rows])
        for row in loaded:
            if len(row) != dim:
                raise InputError(f"'{name}' row width {len(row)} != dim {dim}")
        return loaded

    functionals = load("functionals")
    vertices = load("vertices")
    if functionals is None and vertices is None:
        raise InputError("space JSON needs 'functionals' or 'vertices'")
    if functionals is not None:
        space = space_from_functionals(functionals, label=label)
        if vertices is not None:
            # both given: they must describe the same body
            given = dd_convert(from_vrep(vertices))
            if given != space.ball:
                raise InputError("'functionals' and 'vertices' describe different bodies")
        return space
    return space_from_vertices(vertices, label=label)
