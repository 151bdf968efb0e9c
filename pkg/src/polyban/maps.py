"""Linear maps between polyhedral spaces.

Exact operator norms (max over domain ball vertices), exact minimal gain
over the unit sphere (per-facet epigraph LPs), certification of the
two-sided eps-isometry bounds, the canonical isometric embedding into
linf(m), and Hahn-Banach extension of operators into linf(n) with a
deterministic tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InputError, VerificationError
from .linalg import (
    Matrix,
    columns,
    identity,
    mat,
    mat_sub,
    matmul,
    matvec,
    transpose,
    vec,
    vneg,
)
from .lp import lp_solve, lp_value
from .rationals import ONE, ZERO, format_rational, parse_rational, rat
from .spaces import (
    PolyhedralSpace,
    Subspace,
    induced,
    make_linf,
    norm,
    space_from_json,
    space_to_json,
)


@dataclass(frozen=True)
class LinearMap:
    domain: PolyhedralSpace
    codomain: PolyhedralSpace
    matrix: Matrix  # codomain.dim rows, domain.dim columns

    def __post_init__(self):
        m = self.matrix
        if not isinstance(m, tuple) or len(m) != self.codomain.dim:
            raise InputError(f"matrix must have {self.codomain.dim} rows")
        for row in m:
            if len(row) != self.domain.dim:
                raise InputError(f"matrix rows must have {self.domain.dim} entries")

    def apply(self, x):
        if len(x) != self.domain.dim:
            raise InputError("vector dimension mismatch")
        return matvec(self.matrix, x)


@dataclass(frozen=True)
class DistortionReport:
    op_norm: object
    min_gain: object
    eps_star: Optional[object]  # None means infinity (the map is singular)

    @property
    def finite(self) -> bool:
        return self.eps_star is not None


def identity_map(space: PolyhedralSpace) -> LinearMap:
    return LinearMap(domain=space, codomain=space, matrix=identity(space.dim))


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f after g."""
    if g.codomain != f.domain:
        raise InputError("compose: inner codomain differs from outer domain")
    return LinearMap(domain=g.domain, codomain=f.codomain, matrix=matmul(f.matrix, g.matrix))


def operator_norm(f: LinearMap):
    """max over the closed unit ball of the codomain norm of f(x).

    The max of a convex function over a polytope sits at a vertex, so the
    exact value is the max over the domain ball's vertex list.
    """
    best = ZERO
    for v in f.domain.vertices:
        value = norm(f.codomain, matvec(f.matrix, v))
        if value > best:
            best = value
    return best


def min_gain(f: LinearMap):
    """min over the unit sphere of the codomain norm of f(x).

    The sphere is the union of the ball's facets, and on each facet the
    minimum of the convex function max_j |psi_j(f(x))| is a single LP in
    (x, t): minimize t subject to x on the facet and +-psi_j(f(x)) <= t.
    Exactly 0 iff the matrix kills some sphere point (is singular).
    """
    n = f.domain.dim
    mt = transpose(f.matrix)
    base = []
    for psi in f.codomain.functionals:
        pulled = matvec(mt, psi)  # the functional x -> psi(f(x))
        base.append((vec(list(pulled) + [-1]), ZERO))
        base.append((vec(list(vneg(pulled)) + [-1]), ZERO))
    for phi in f.domain.functionals:
        base.append((vec(list(phi) + [0]), ONE))
        base.append((vec(list(vneg(phi)) + [0]), ONE))
    objective = vec([0] * n + [1])
    best = None
    for facet in f.domain.functionals:
        cons = list(base)
        cons.append((vec(list(vneg(facet)) + [0]), -ONE))  # phi(x) >= 1 pins the facet
        res = lp_value(objective, cons, sense="min")
        if not res.optimal:
            raise VerificationError("facet LP failed; ball data inconsistent")
        if best is None or res.value < best:
            best = res.value
    return best


def distortion(f: LinearMap) -> DistortionReport:
    op = operator_norm(f)
    gain = min_gain(f)
    if gain == 0:
        return DistortionReport(op_norm=op, min_gain=gain, eps_star=None)
    candidate = ONE / gain
    if op > candidate:
        candidate = op
    return DistortionReport(op_norm=op, min_gain=gain, eps_star=candidate - ONE)


def is_eps_isometric(f: LinearMap, eps, strict: bool = False) -> Tuple[bool, DistortionReport]:
    """Does (1+eps)^-1 ||x|| <= ||f(x)|| <= (1+eps) ||x|| hold for all x?

    Exact two-sided check: upper bound via operator_norm, lower via
    min_gain. With strict=True both inequalities must be strict.
    """
    eps = rat(eps)
    if eps < 0:
        raise InputError("eps must be nonnegative")
    report = distortion(f)
    bound = ONE + eps
    if strict:
        ok = report.op_norm < bound and report.min_gain * bound > 1
    else:
        ok = report.op_norm <= bound and report.min_gain * bound >= 1
    return ok, report


def map_distance(f: LinearMap, g: LinearMap):
    """operator_norm(f - g) for maps with identical domain and codomain."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise InputError("map_distance needs equal domains and codomains")
    diff = LinearMap(domain=f.domain, codomain=f.codomain, matrix=mat_sub(f.matrix, g.matrix))
    return operator_norm(diff)


def linf_embedding(space: PolyhedralSpace) -> LinearMap:
    """The canonical isometric embedding x -> (phi_i(x))_i into linf(m).

    m is the number of canonical functional pairs; by definition of the
    norm the embedding is exactly isometric.
    """
    rows = space.functionals
    return LinearMap(domain=space, codomain=make_linf(len(rows)), matrix=mat(rows))


def is_linf_isometric(space: PolyhedralSpace) -> Optional[LinearMap]:
    """A bijective isometry onto linf(dim), if one exists.

    The space is isometric to linf(dim) iff its canonical ball has exactly
    dim functional pairs (they always span, so they are then a basis and
    x -> (phi_i(x))_i is bijective). Returns None otherwise.
    """
    if len(space.functionals) != space.dim:
        return None
    return linf_embedding(space)


def _require_linf(space: PolyhedralSpace, who: str):
    if space != make_linf(space.dim):
        raise InputError(f"{who} must be an exact linf(n) space")


def extend_into_linf(T: LinearMap, E: Subspace) -> LinearMap:
    """Extend T: induced(E) -> linf(n) to all of E's ambient space,
    preserving the operator norm exactly (1-injectivity of linf(n)).

    Each coordinate functional T_i is extended by Hahn-Banach, realized as
    an LP: find psi on the ambient space with psi . basis = T_i and dual
    norm at most ||T||; the lexicographically smallest vertex of that
    polytope is taken, so extensions are deterministic.
    """
    _require_linf(T.codomain, "extend_into_linf codomain")
    if T.domain != induced(E):
        raise InputError("T's domain must be induced(E)")
    ambient = E.ambient
    bound = operator_norm(T)
    basis_cols = columns(E.basis, E.dim)
    rows = []
    for i in range(T.codomain.dim):
        target = T.matrix[i]
        cons = []
        for w in ambient.vertices:
            cons.append((w, bound))
        for col, value in zip(basis_cols, target):
            cons.append((col, value))
            cons.append((vneg(col), -value))
        res = lp_solve(vec([0] * ambient.dim), cons, sense="max")
        if not res.optimal:
            raise VerificationError("Hahn-Banach extension LP infeasible; extension precondition violated")
        rows.append(res.point)
    extension = LinearMap(domain=ambient, codomain=T.codomain, matrix=mat(rows))
    if matmul(extension.matrix, E.basis) != T.matrix:
        raise VerificationError("extension does not restrict to T")
    if operator_norm(extension) != bound:
        raise VerificationError("extension does not preserve the operator norm")
    return extension


def map_to_json(f: LinearMap) -> dict:
    return {
        "domain": space_to_json(f.domain),
        "codomain": space_to_json(f.codomain),
        "matrix": [[format_rational(x) for x in row] for row in f.matrix],
    }


def map_from_json(data: dict) -> LinearMap:
    if not isinstance(data, dict):
        raise InputError("map JSON must be an object")
    for key in ("domain", "codomain", "matrix"):
        if key not in data:
            raise InputError(f"map JSON needs '{key}'")
    rows = data["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("'matrix' must be a list of rows")
    return LinearMap(
        domain=space_from_json(data["domain"]),
        codomain=space_from_json(data["codomain"]),
        matrix=mat([[parse_rational(x) for x in row] for row in rows]),
    )


def report_to_json(report: DistortionReport) -> dict:
    return {
        "op_norm": format_rational(report.op_norm),
        "min_gain": format_rational(report.min_gain),
        "eps_star": None if report.eps_star is None else format_rational(report.eps_star),
    }
