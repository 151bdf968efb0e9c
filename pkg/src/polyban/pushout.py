"""Amalgamation of two embeddings over a common subspace.

Given an isometric embedding i: Z -> X and an eps-isometric f: Z -> Y, the
amalgam W is the quotient of X (+) Y by the antidiagonal of (i, f), where
the sum carries a weighted l1 norm: ||(x, y)|| = a||x|| + ||y|| with
a = max(1, ||f||). When ||f|| <= 1 the weight is 1 and this is the plain l1
sum. The weight is forced: the leg j out of Y being exactly isometric and
the leg g out of X being a contraction together imply ||f|| <= 1 (apply j
and g to the two sides of the commuting square), so when ||f|| > 1 some
conclusion must give; scaling the X side keeps j isometric and g
eps-isometric, which is what downstream chain extensions rely on.

The quotient is taken in explicit rational coordinates: the complement of
the antidiagonal is the coordinate subspace on the non-pivot rows of its
reduced column echelon form, and the amalgam ball is the convex hull of the
quotient images of the sum ball's vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .errors import InputError, PreconditionError, VerificationError
from .linalg import (
    Matrix,
    identity,
    is_zero_vec,
    mat,
    matmul,
    matvec,
    rank,
    rcef,
    vneg,
    zeros_vec,
)
from .maps import (
    LinearMap,
    compose,
    distortion,
    identity_map,
    is_eps_isometric,
    map_from_json,
    map_to_json,
    operator_norm,
)
from .rationals import ONE, ZERO, format_rational, parse_rational, rat
from .spaces import PolyhedralSpace, space_from_vertices, space_to_json


@dataclass(frozen=True)
class PushoutResult:
    """The amalgam space with its two legs and the quotient witness data.

    coords lists which rows of X (+) Y survive as coordinates of W, and
    weight is the X-side scale factor of the sum norm (1 unless ||f|| > 1).
    checks records which invariants were verified exactly at build time.
    """

    W: PolyhedralSpace
    g: LinearMap           # X -> W
    j: LinearMap           # Y -> W
    delta_basis: Matrix    # columns (i(e_l), -f(e_l)) inside X (+) Y
    quotient: Matrix       # X (+) Y -> W in the surviving coordinates
    i: Optional[LinearMap]
    f: Optional[LinearMap]
    eps: object
    weight: object
    coords: tuple
    checks: Dict[str, bool]


def pushout(i: LinearMap, f: LinearMap, eps, *, relax_min_gain: bool = False) -> PushoutResult:
    """Amalgamate i: Z -> X (isometric) with f: Z -> Y (eps-isometric).

    With relax_min_gain, f only needs operator norm at most 1 + eps; the
    lower eps-isometry bound on f (and hence on g) is not required. In
    either case j is exactly isometric and the square g o i = j o f
    commutes exactly; everything verified before returning.
    """
    eps = rat(eps)
    if eps < 0:
        raise InputError("eps must be nonnegative")
    if i.domain != f.domain:
        raise InputError("i and f must share their domain")
    rep = distortion(i)
    if rep.eps_star != 0:
        raise PreconditionError("i must be exactly isometric")
    norm_f = operator_norm(f)
    if relax_min_gain:
        if norm_f > ONE + eps:
            raise PreconditionError("f has operator norm above 1 + eps")
    else:
        ok, _ = is_eps_isometric(f, eps)
        if not ok:
            raise PreconditionError("f is not eps-isometric for the given eps")

    X, Y = i.codomain, f.codomain
    weight = norm_f if norm_f > ONE else ONE
    delta = mat(list(i.matrix) + [vneg(row) for row in f.matrix])
    zdim = i.domain.dim
    if rank(delta) != zdim:
        raise VerificationError("antidiagonal basis is rank deficient")

    coords, quotient = _quotient_matrix(delta, X.dim + Y.dim)
    images = []
    inv_weight = ONE / weight
    for v in X.vertices:
        images.append(matvec(quotient, tuple(inv_weight * c for c in v) + zeros_vec(Y.dim)))
    for w in Y.vertices:
        images.append(matvec(quotient, zeros_vec(X.dim) + w))
    # vertices collapsing to the origin are interior points of the hull
    images = [u for u in images if not is_zero_vec(u)]
    W = space_from_vertices(mat(images))

    g = LinearMap(domain=X, codomain=W, matrix=mat([row[:X.dim] for row in quotient]))
    j = LinearMap(domain=Y, codomain=W, matrix=mat([row[X.dim:] for row in quotient]))

    checks = {"square_commutes": matmul(g.matrix, i.matrix) == matmul(j.matrix, f.matrix)}
    if not checks["square_commutes"]:
        raise VerificationError("amalgamation square does not commute")
    j_rep = distortion(j)
    checks["j_isometric"] = j_rep.eps_star == 0
    if not checks["j_isometric"]:
        raise VerificationError("leg out of Y is not exactly isometric")
    g_norm = operator_norm(g)
    checks["g_contractive"] = g_norm <= ONE
    if g_norm > weight:
        raise VerificationError("leg out of X exceeds the sum-norm weight")
    if relax_min_gain:
        checks["g_eps_isometric"] = None
    else:
        ok, g_rep = is_eps_isometric(g, eps)
        checks["g_eps_isometric"] = ok
        if not ok:
            raise VerificationError("leg out of X is not eps-isometric")
        if eps == 0 and g_rep.eps_star != 0:
            raise VerificationError("eps is zero but the leg out of X is not isometric")
        if weight == ONE and not checks["g_contractive"]:
            raise VerificationError("plain sum must give a contractive leg out of X")
    return PushoutResult(
        W=W, g=g, j=j, delta_basis=delta, quotient=quotient,
        i=i, f=f, eps=eps, weight=weight, coords=coords, checks=checks)


def l1_sum(X: PolyhedralSpace, Y: PolyhedralSpace) -> PushoutResult:
    """Degenerate amalgam over the zero subspace: W = X (+) Y with the l1
    sum norm, legs the two canonical injections."""
    dim = X.dim + Y.dim
    quotient = identity(dim)
    images = [v + zeros_vec(Y.dim) for v in X.vertices]
    images += [zeros_vec(X.dim) + w for w in Y.vertices]
    W = space_from_vertices(mat(images))
    g = LinearMap(domain=X, codomain=W, matrix=mat([row[:X.dim] for row in quotient]))
    j = LinearMap(domain=Y, codomain=W, matrix=mat([row[X.dim:] for row in quotient]))
    checks = {
        "square_commutes": True,
        "j_isometric": distortion(j).eps_star == 0,
        "g_contractive": True,
        "g_eps_isometric": distortion(g).eps_star == 0,
    }
    if not (checks["j_isometric"] and checks["g_eps_isometric"]):
        raise VerificationError("l1 sum injections must be isometric")
    delta = tuple(() for _ in range(dim))
    return PushoutResult(
        W=W, g=g, j=j, delta_basis=delta, quotient=quotient,
        i=None, f=None, eps=rat(0), weight=ONE,
        coords=tuple(range(dim)), checks=checks)


def _quotient_matrix(delta: Matrix, total: int):
    """Coordinates and matrix of the quotient by the column span of delta.

    The surviving coordinates are the non-pivot rows of the reduced column
    echelon form D; the quotient sends e_m to itself for surviving m and
    the pivot row's basis vector to minus the matching column of D.
    """
    reduced, pivots = rcef(delta)
    pivot_of = {row: k for k, row in enumerate(pivots)}
    coords = tuple(m for m in range(total) if m not in pivot_of)
    rows = []
    for m in coords:
        row = []
        for col in range(total):
            if col in pivot_of:
                row.append(-reduced[m][pivot_of[col]])
            else:
                row.append(ONE if col == m else ZERO)
        rows.append(row)
    return coords, mat(rows)


def mediate(p: PushoutResult, T: LinearMap, S: LinearMap) -> LinearMap:
    """The unique map h: W -> V with h o g = T and h o j = S.

    Requires T o i = S o f, equivalently that the block map [T | S]
    annihilates the antidiagonal; the norm of h never exceeds
    max(||T||, ||S||), verified exactly.
    """
    if T.domain != p.g.domain or S.domain != p.j.domain:
        raise InputError("T and S must be defined on the two amalgamated spaces")
    if T.codomain != S.codomain:
        raise InputError("T and S must share their codomain")
    block = mat([T.matrix[v] + S.matrix[v] for v in range(T.codomain.dim)])
    if p.delta_basis and p.delta_basis[0]:
        for col in matmul(block, p.delta_basis):
            if not is_zero_vec(col):
                raise InputError("incompatible pair: T o i differs from S o f")
    h = LinearMap(
        domain=p.W, codomain=T.codomain,
        matrix=mat([[row[m] for m in p.coords] for row in block]))
    if matmul(h.matrix, p.g.matrix) != T.matrix or matmul(h.matrix, p.j.matrix) != S.matrix:
        raise VerificationError("mediating map fails a triangle identity")
    bound = max(operator_norm(T), operator_norm(S))
    if operator_norm(h) > bound:
        raise VerificationError("mediating map exceeds max(||T||, ||S||)")
    return h


def extend_projection(p: PushoutResult, P: LinearMap) -> LinearMap:
    """Push a retraction P: X -> Z through the amalgam.

    Needs P o i = id_Z and ||f|| <= 1. The result h: W -> Y restricts to
    the identity on j(Y), satisfies h o g = f o P, and has norm at most
    ||P||; so j(Y) is ||P||-complemented in W.
    """
    if p.i is None or p.f is None:
        raise InputError("projection extension needs a genuine amalgam over Z")
    if P.domain != p.i.codomain or P.codomain != p.i.domain:
        raise InputError("P must map X onto the amalgamated subspace Z")
    if matmul(P.matrix, p.i.matrix) != identity(p.i.domain.dim):
        raise InputError("P is not a retraction onto Z")
    if operator_norm(p.f) > ONE:
        raise PreconditionError("projection extension needs ||f|| <= 1")
    h = mediate(p, compose(p.f, P), identity_map(p.j.domain))
    if operator_norm(h) > operator_norm(P):
        raise VerificationError("extended projection exceeds the norm of P")
    return h


def pushout_to_json(p: PushoutResult) -> dict:
    data = {
        "space": space_to_json(p.W),
        "g": map_to_json(p.g),
        "j": map_to_json(p.j),
        "delta_basis": [[format_rational(x) for x in row] for row in p.delta_basis],
        "quotient": [[format_rational(x) for x in row] for row in p.quotient],
        "weight": format_rational(p.weight),
        "coords": list(p.coords),
        "eps": format_rational(p.eps),
        "checks": {k: v for k, v in p.checks.items()},
    }
    if p.i is not None:
        data["i"] = map_to_json(p.i)
        data["f"] = map_to_json(p.f)
    return data


def pushout_from_json(data: dict) -> PushoutResult:
    """Rebuild (and hence re-verify) an amalgam from its record."""
    if "i" in data:
        return pushout(map_from_json(data["i"]), map_from_json(data["f"]),
                       parse_rational(data["eps"]),
                       relax_min_gain=data["checks"].get("g_eps_isometric") is None)
    g = map_from_json(data["g"])
    j = map_from_json(data["j"])
    return l1_sum(g.domain, j.domain)
