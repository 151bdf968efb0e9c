"""Extending a renormed subspace norm to the whole space.

Given E inside F and a new norm on E that is strictly eps-equivalent to the
inherited one, there is a norm on all of F that restricts to the new norm
exactly and stays eps-equivalent to F's original norm. The construction is
dual: take every functional psi on F whose restriction to E lies on the
dual sphere of the new norm and whose original dual norm is at most 1+eps,
plus the original dual ball shrunk by (1+eps)^-1 (this keeps the result a
genuine norm; without it the sup degenerates to a seminorm exactly when the
eps-equivalence is attained with equality, which is why the precondition is
strict). The result's unit ball is the polar of that functional set.
"""

from __future__ import annotations

from .dd import general_polytope_vertices
from .errors import PreconditionError, VerificationError
from .linalg import mat, matvec, vscale
from .maps import LinearMap, identity_map, is_eps_isometric
from .rationals import ONE, rat
from .spaces import PolyhedralSpace, Subspace, induced, space_from_functionals


def extend_norm(E: Subspace, new_norm: PolyhedralSpace, eps) -> PolyhedralSpace:
    """A norm on E's ambient space restricting to new_norm on E exactly.

    Preconditions: new_norm lives on E's coordinates and the identity from
    induced(E) to new_norm is a strict eps-isometry; otherwise
    PreconditionError. The returned space's norm is eps-equivalent
    (non-strictly) to the ambient's original norm.
    """
    eps = rat(eps)
    inherited = induced(E)
    if new_norm.dim != E.dim:
        raise PreconditionError(
            f"new_norm has dimension {new_norm.dim}, subspace has {E.dim}")
    ident = LinearMap(domain=inherited, codomain=new_norm, matrix=identity_map(inherited).matrix)
    ok, report = is_eps_isometric(ident, eps, strict=True)
    if not ok:
        raise PreconditionError(
            "new norm is not strictly eps-equivalent to the inherited norm "
            f"(op_norm {report.op_norm}, min_gain {report.min_gain}, eps {eps})")

    ambient = E.ambient
    bound = ONE + eps
    # constraint block shared by every dual-sphere facet: psi restricted to E
    # stays in the new dual ball, psi itself stays in (1+eps) * original dual ball
    shared_rows = []
    shared_rhs = []
    for w in new_norm.vertices:
        shared_rows.append(matvec(E.basis, w))
        shared_rhs.append(ONE)
    for v in ambient.vertices:
        shared_rows.append(v)
        shared_rhs.append(bound)

    # each facet of the new dual ball is paired (by polarity) with a primal
    # ball vertex u: the facet is {s : s(u) = 1} within the dual ball
    collected = []
    for u in _vertex_pairs(new_norm):
        pin = matvec(E.basis, u)
        rows = [pin, tuple(-x for x in pin)] + shared_rows
        rhs = [ONE, -ONE] + shared_rhs
        for psi in general_polytope_vertices(mat(rows), rhs):
            collected.append(psi)
    scale = ONE / bound
    collected.extend(vscale(scale, phi) for phi in ambient.functionals)

    result = space_from_functionals(mat(collected))

    # exact post-conditions: restriction recovers new_norm syntactically,
    # and the identity from the original space is eps-isometric
    restricted = induced(Subspace(ambient=result, basis=E.basis))
    if restricted != new_norm:
        raise VerificationError("extended norm does not restrict to the new norm")
    ok, _ = is_eps_isometric(
        LinearMap(domain=ambient, codomain=result, matrix=identity_map(ambient).matrix), eps)
    if not ok:
        raise VerificationError("extended norm is not eps-equivalent to the original")
    return result


def _vertex_pairs(space: PolyhedralSpace):
    """One vertex per antipodal pair (the vrep holds both signs)."""
    seen = set()
    out = []
    for v in space.vertices:
        if v in seen:
            continue
        seen.add(v)
        seen.add(tuple(-x for x in v))
        out.append(v)
    return out
