"""Centrally symmetric polytopes with dual representations.

A SymmetricPolytope carries a halfspace representation (a list of
functionals phi, each standing for the pair of halfspaces +-phi(x) <= 1)
and a vertex representation (the full vertex list, closed under negation).
Either may be absent until dd_convert fills it in.

Canonical form: hrep keeps one functional per antipodal pair, sign-fixed so
the first nonzero entry is positive, with redundant functionals dropped and
the list lex-sorted descending; vrep keeps exactly the vertices (both
signs), same order.
Functionals are never rescaled: phi and 2*phi bound different bodies, so
scale is geometric data. Two canonical polytopes are equal iff their data
is equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .caps import check_dim, check_vertex_count
from .dd import ball_facets, ball_vertices
from .errors import InputError
from .linalg import Matrix, dot, is_zero_vec, mat, rank, sign_canonical, vneg
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class SymmetricPolytope:
    dim: int
    hrep: Optional[Matrix] = None
    vrep: Optional[Matrix] = None
    canonical: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"polytope dimension must be >= 1, got {self.dim}")
        check_dim(self.dim, "polytope construction")
        if self.hrep is None and self.vrep is None:
            raise InputError("a polytope needs at least one representation")
        for name, rows in (("hrep", self.hrep), ("vrep", self.vrep)):
            if rows is None:
                continue
            if not isinstance(rows, tuple):
                raise InputError(f"{name} must be a tuple of rational tuples; use mat()")
            for row in rows:
                if len(row) != self.dim:
                    raise InputError(f"{name} entry of length {len(row)} in dimension {self.dim}")
        if self.vrep is not None:
            check_vertex_count(len(self.vrep), "polytope construction")


def from_hrep(functionals) -> SymmetricPolytope:
    rows = mat(functionals)
    return SymmetricPolytope(dim=len(rows[0]) if rows else 0, hrep=rows)


def from_vrep(vertices) -> SymmetricPolytope:
    rows = mat(vertices)
    return SymmetricPolytope(dim=len(rows[0]) if rows else 0, vrep=rows)


# canonical list order is descending lex; it puts e_1 before e_2 (etc.), so
# the cube's functionals read off in coordinate order
def _signed_sorted_functionals(functionals):
    """One sign-canonical representative per antipodal pair, deduped, sorted."""
    seen = set()
    for phi in functionals:
        if is_zero_vec(phi):
            raise InputError("zero functional in hrep")
        seen.add(sign_canonical(phi))
    return tuple(sorted(seen, reverse=True))


def _symmetrized_sorted_vertices(vertices):
    seen = set()
    for v in vertices:
        if is_zero_vec(v):
            raise InputError("the origin cannot be a vertex of a symmetric body")
        seen.add(v)
        seen.add(vneg(v))
    return tuple(sorted(seen, reverse=True))


def canonicalize(polytope: SymmetricPolytope) -> SymmetricPolytope:
    """Scrub both representations down to facets and vertices.

    Needs both reps present and describing the same body (dd_convert
    guarantees that). A functional survives iff its contact vertices span
    the whole space (rank dim, i.e. the touching face has dimension
    dim - 1); a point survives iff its tight constraint rows have rank dim.
    """
    if polytope.canonical:
        return polytope
    if polytope.hrep is None or polytope.vrep is None:
        raise InputError("canonicalize needs both representations; run dd_convert first")
    dim = polytope.dim
    functionals = _signed_sorted_functionals(polytope.hrep)
    vertices = _symmetrized_sorted_vertices(polytope.vrep)

    for v in vertices:
        for phi in functionals:
            value = dot(phi, v)
            if value > 1 or value < -1:
                raise InputError("vrep point violates hrep; representations disagree")

    kept_functionals = []
    for phi in functionals:
        contact = [v for v in vertices if dot(phi, v) == 1 or dot(phi, v) == -1]
        if contact and rank(mat(contact)) == dim:
            kept_functionals.append(phi)

    kept_vertices = []
    for v in vertices:
        tight = []
        for phi in kept_functionals:
            value = dot(phi, v)
            if value == 1:
                tight.append(phi)
            elif value == -1:
                tight.append(vneg(phi))
        if tight and rank(mat(tight)) == dim:
            kept_vertices.append(v)

    if not kept_functionals or rank(mat(kept_functionals)) < dim or not kept_vertices:
        raise InputError("representations do not describe the same bounded symmetric body")

    return SymmetricPolytope(
        dim=dim,
        hrep=tuple(kept_functionals),
        vrep=tuple(kept_vertices),
        canonical=True,
    )


def dd_convert(polytope: SymmetricPolytope) -> SymmetricPolytope:
    """Fill in the missing representation and canonicalize.

    Conversion is deterministic: inputs are pre-sorted into canonical order
    before enumeration, so the result does not depend on input order.
    """
    if polytope.canonical:
        return polytope
    if polytope.hrep is not None:
        functionals = _signed_sorted_functionals(polytope.hrep)
        vertices = ball_vertices(functionals)
    else:
        vertices = _symmetrized_sorted_vertices(polytope.vrep)
        functionals = _signed_sorted_functionals(ball_facets(vertices))
        if polytope.vrep is not None and polytope.hrep is None:
            # vertices listed by the caller may include non-vertex points;
            # rebuild the true vertex set from the facets
            vertices = ball_vertices(functionals)
    raw = SymmetricPolytope(dim=polytope.dim, hrep=functionals, vrep=vertices)
    return canonicalize(raw)


def polar(polytope: SymmetricPolytope) -> SymmetricPolytope:
    """The polar body, by pure representation swap.

    Facets of the body are vertices of the polar and vice versa, so for a
    canonical polytope no enumeration is needed: the new hrep is the old
    vertex list (one per antipodal pair) and the new vrep is the old
    functional list with both signs. polar(polar(P)) == P exactly.
    """
    if not polytope.canonical:
        raise InputError("polar needs a canonical polytope; run dd_convert first")
    return SymmetricPolytope(
        dim=polytope.dim,
        hrep=_signed_sorted_functionals(polytope.vrep),
        vrep=_symmetrized_sorted_vertices(polytope.hrep),
        canonical=True,
    )


def polytope_contains(polytope: SymmetricPolytope, x) -> bool:
    """Membership test through whichever hrep is available."""
    if polytope.hrep is None:
        raise InputError("membership test needs an hrep; run dd_convert first")
    if len(x) != polytope.dim:
        raise InputError("point dimension mismatch")
    for phi in polytope.hrep:
        value = dot(phi, x)
        if value > 1 or value < -1:
            return False
    return True


def polytope_to_json(polytope: SymmetricPolytope) -> dict:
    def render(rows):
        if rows is None:
            return None
        return [[format_rational(x) for x in row] for row in rows]

    return {
        "dim": polytope.dim,
        "hrep": render(polytope.hrep),
        "vrep": render(polytope.vrep),
        "canonical": polytope.canonical,
    }


def polytope_from_json(data: dict) -> SymmetricPolytope:
    if not isinstance(data, dict):
        raise InputError("polytope JSON must be an object")
    try:
        dim = data["dim"]
    except KeyError:
        raise InputError("polytope JSON needs a 'dim' field") from None
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("'dim' must be an integer")

    def load(name):
        rows = data.get(name)
        if rows is None:
            return None
        if not isinstance(rows, list):
            raise InputError(f"'{name}' must be a list of rows")
        return mat([[parse_rational(x) for x in row] for row in rows])

    poly = SymmetricPolytope(dim=dim, hrep=load("hrep"), vrep=load("vrep"))
    if data.get("canonical", False):
        # never trust the flag on the wire; recompute
        return dd_convert(poly)
    return poly
