"""Certified finite stages of a generic chain of polyhedral spaces.

A chain is a finite increasing sequence of stages, each a polyhedral space
on a contiguous support of naturals, starting from linf(1). A step serves
an embedding request (E, F, f, n): if f is (1/n)-isometric into the stage,
the stage is amalgamated with F along E and re-coordinatized so that the
old coordinates keep their meaning and the old norm extends exactly; the
witness map F -> new stage is (1/n)-isometric and restricts to f on E,
and both facts are recorded in an exactly checked certificate.

The scheduler is deterministic and dovetailed: one substream per ambient
dimension of F walks the (complexity level, lex) enumeration lazily; every
step appends the next unseen family from each substream to a FIFO queue
and serves the queue head, re-enqueueing the served family at the back so
every family is revisited arbitrarily often as steps grow. Stage growth
re-opens the substreams against the new coordinates (the seen-set keeps
families unique). Requests whose satisfaction would exceed the caps are
deferred, not dropped: the certificate records the deferral and the family
stays in rotation.

Modes: "gurarii" serves requests every step; "lindenstrauss" applies the
linf envelope every second step, so the chain is cofinally 1-injective;
"complemented" additionally tracks a norm-one retraction from every stage
onto the initial linf(1), extended through each pushout by the mediating
norm-one projection when that route is sound (contractive f and a norm-one
retraction of F onto E, which exists when E is all of F or a line) and by
coordinatewise Hahn-Banach extension into the 1-injective target otherwise
and at every envelope.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Tuple

from .caps import current_caps
from .enumeration import EmbeddingRequest, iter_level, request_level, retarget
from .errors import (
    InputError,
    PreconditionError,
    ResourceCapError,
    VerificationError,
)
from .linalg import (
    Matrix,
    columns,
    complete_to_basis,
    identity,
    inverse,
    mat,
    mat_from_cols,
    matmul,
)
from .maps import (
    LinearMap,
    compose,
    extend_into_linf,
    is_eps_isometric,
    is_linf_isometric,
    operator_norm,
    report_to_json,
)
from .pushout import extend_projection, pushout
from .rationals import ONE, ZERO, format_rational
from .spaces import (
    PolyhedralSpace,
    Subspace,
    induced,
    make_linf,
    space_from_functionals,
)

MODES = ("gurarii", "lindenstrauss", "complemented")


@dataclass(frozen=True)
class ChainConfig:
    steps: int
    dim_cap: int = 4
    bit_cap: int = 3
    seed: int = 0
    mode: str = "gurarii"

    def __post_init__(self):
        if self.steps < 0:
            raise InputError(f"steps must be >= 0, got {self.steps}")
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        limits = current_caps()
        if not 1 <= self.dim_cap <= limits.dim_cap:
            raise InputError(
                f"dim_cap must be in 1..{limits.dim_cap}, got {self.dim_cap}")
        if self.bit_cap < 1:
            raise InputError(f"bit_cap must be >= 1, got {self.bit_cap}")


@dataclass(frozen=True, eq=False, repr=False)
class ChainStage:
    index: int
    support: Tuple[int, ...]
    space: PolyhedralSpace
    parent: Optional["ChainStage"]
    witness: Dict[str, object]
    retraction: Optional[LinearMap] = None

    def __repr__(self):
        return f"ChainStage(index={self.index}, dim={self.space.dim})"


@dataclass(frozen=True)
class Certificate:
    request: EmbeddingRequest
    applicable: bool
    deferred: bool
    witness: Optional[LinearMap]
    checks: Dict[str, object]
    stage_index: int
    step: Optional[int] = None


def initial_stage(mode: str = "gurarii") -> ChainStage:
    space = make_linf(1)
    retraction = None
    if mode == "complemented":
        retraction = LinearMap(domain=space, codomain=space, matrix=identity(1))
    return ChainStage(index=0, support=(0,), space=space, parent=None,
                      witness={"kind": "initial", "step": 0},
                      retraction=retraction)


def _padding(big: int, small: int) -> Matrix:
    # the coordinate inclusion matrix [I; 0], big x small
    return mat([row[:small] for row in identity(big)])


def _pad_rows(rows: Matrix, nrows: int) -> Matrix:
    width = len(rows[0])
    zero = tuple(ZERO for _ in range(width))
    return mat(list(rows) + [zero] * (nrows - len(rows)))


def pad_into(f: LinearMap, space: PolyhedralSpace) -> LinearMap:
    """The same map followed by the coordinate inclusion into a later
    stage space. Exact norm extension makes this distortion-preserving."""
    if f.codomain.dim > space.dim:
        raise InputError("cannot pad a map into a smaller space")
    if f.codomain == space:
        return f
    return LinearMap(domain=f.domain, codomain=space,
                     matrix=_pad_rows(f.matrix, space.dim))


def _norm_one_retraction(request: EmbeddingRequest) -> Optional[LinearMap]:
    """A norm-one left inverse of the inclusion E -> F, when one is
    certain to exist: E = F (invert the basis) or dim E = 1 (Hahn-Banach
    through a 1-dimensional sup-norm space). None otherwise."""
    E, F, Z = request.E, request.F, request.f.domain
    if E.dim == F.dim:
        P = LinearMap(domain=F, codomain=Z, matrix=inverse(E.basis))
        return P if operator_norm(P) == ONE else None
    if E.dim == 1:
        probe = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[ONE]]))
        try:
            functional = extend_into_linf(probe, E)
        except (InputError, VerificationError):
            return None
        P = LinearMap(domain=F, codomain=Z, matrix=functional.matrix)
        if operator_norm(P) == ONE and matmul(P.matrix, E.basis) == identity(1):
            return P
    return None


def _extend_retraction(stage: ChainStage, request: EmbeddingRequest,
                       push, new_space: PolyhedralSpace,
                       n_mat: Matrix) -> Tuple[LinearMap, str]:
    """Carry the stage's norm-one retraction onto the grown stage.

    Preferred route: the pushout's mediating projection (needs contractive
    f and a norm-one retraction of F onto E). Fallback: coordinatewise
    Hahn-Banach into the 1-injective linf(1) target. Both are verified
    exactly: norm stays 1 and the restriction to old coordinates is the
    old retraction, entry for entry.
    """
    old = stage.retraction
    pad = _padding(new_space.dim, stage.space.dim)
    if operator_norm(request.f) <= ONE:
        P = _norm_one_retraction(request)
        if P is not None:
            try:
                h = extend_projection(push, P)  # new copy of W -> old stage
                into_w = LinearMap(domain=new_space, codomain=push.W, matrix=n_mat)
                candidate = compose(old, compose(h, into_w))
                if (operator_norm(candidate) == ONE
                        and matmul(candidate.matrix, pad) == old.matrix):
                    return candidate, "projection"
            except (InputError, PreconditionError):
                pass
    sub = Subspace(ambient=new_space, basis=pad)
    through = LinearMap(domain=induced(sub), codomain=old.codomain,
                        matrix=old.matrix)
    extended = extend_into_linf(through, sub)
    if operator_norm(extended) != ONE:
        raise VerificationError("retraction extension lost norm one")
    return extended, "hahn-banach"


def satisfy_request(stage: ChainStage, request: EmbeddingRequest, *,
                    dim_cap: Optional[int] = None) -> Tuple[ChainStage, Certificate]:
    """Serve one embedding request against a stage.

    Not applicable (f fails the exact (1/n)-isometry check): the stage is
    returned unchanged with a non-applicable certificate. Applicable: the
    stage is amalgamated with F along E, re-coordinatized so old
    coordinates extend exactly, and the certificate carries the verified
    witness. Cap overflow defers: stage unchanged, certificate flagged.
    """
    if request.f.codomain != stage.space:
        raise InputError("request does not target this stage; retarget first")
    eps = request.eps
    applicable, rep = is_eps_isometric(request.f, eps)
    checks: Dict[str, object] = {"applicability": report_to_json(rep)}
    if not applicable:
        cert = Certificate(request=request, applicable=False, deferred=False,
                           witness=None, checks=checks, stage_index=stage.index)
        return stage, cert

    cap = current_caps().dim_cap if dim_cap is None else dim_cap
    target_dim = stage.space.dim + request.F.dim - request.E.dim
    if target_dim > cap:
        checks["deferred_reason"] = (
            f"target dimension {target_dim} exceeds cap {cap}")
        cert = Certificate(request=request, applicable=True, deferred=True,
                           witness=None, checks=checks, stage_index=stage.index)
        return stage, cert

    inclusion = LinearMap(domain=request.f.domain, codomain=request.F,
                          matrix=request.E.basis)
    try:
        push = pushout(inclusion, request.f, eps)
        n_mat = mat_from_cols(
            complete_to_basis(list(columns(push.j.matrix)), target_dim),
            nrows=target_dim)
        new_space = space_from_functionals(matmul(push.W.functionals, n_mat))
    except ResourceCapError as exc:
        checks["deferred_reason"] = str(exc)
        cert = Certificate(request=request, applicable=True, deferred=True,
                           witness=None, checks=checks, stage_index=stage.index)
        return stage, cert

    pad = _padding(target_dim, stage.space.dim)
    if induced(Subspace(ambient=new_space, basis=pad)) != stage.space:
        raise VerificationError("stage extension does not restrict to the parent norm")

    witness = LinearMap(domain=request.F, codomain=new_space,
                        matrix=matmul(inverse(n_mat), push.g.matrix))
    ok, wrep = is_eps_isometric(witness, eps)
    if not ok:
        raise VerificationError("witness lost the (1/n)-isometry bound")
    if matmul(witness.matrix, request.E.basis) != _pad_rows(request.f.matrix, target_dim):
        raise VerificationError("witness does not restrict to the request map on E")
    checks["witness_eps_isometric"] = True
    checks["restriction_exact"] = True
    checks["witness_distortion"] = report_to_json(wrep)
    checks["weight"] = format_rational(push.weight)

    retraction = None
    route = None
    if stage.retraction is not None:
        retraction, route = _extend_retraction(stage, request, push, new_space, n_mat)

    fresh = target_dim - stage.space.dim
    start = stage.support[-1] + 1
    support = stage.support + tuple(range(start, start + fresh))
    record: Dict[str, object] = {
        "kind": "pushout",
        "level": request_level(request),
        "weight": format_rational(push.weight),
        "fresh": fresh,
    }
    if route is not None:
        record["retraction_route"] = route
    child = ChainStage(index=stage.index + 1, support=support, space=new_space,
                       parent=stage, witness=record, retraction=retraction)
    cert = Certificate(request=request, applicable=True, deferred=False,
                       witness=witness, checks=checks, stage_index=stage.index)
    return child, cert


def linf_envelope(stage: ChainStage, *, dim_cap: Optional[int] = None) -> ChainStage:
    """Embed the stage isometrically into a 1-injective stage.

    The new space on m coordinates (m = number of canonical functional
    pairs) has norm ||M y||_inf for an invertible M whose first dim columns
    are the functional matrix's columns; old points x map to (x, 0), where
    the new norm is max_i |phi_i(x)|: the old norm on the nose. A stage
    that already has m = dim functional pairs yields a child with the same
    space, unchanged up to relabeling.
    """
    space = stage.space
    m = len(space.functionals)
    if m == space.dim:
        record: Dict[str, object] = {"kind": "envelope", "pairs": m, "noop": True}
        return ChainStage(index=stage.index + 1, support=stage.support,
                          space=space, parent=stage, witness=record,
                          retraction=stage.retraction)
    cap = current_caps().dim_cap if dim_cap is None else dim_cap
    if m > cap:
        raise ResourceCapError("dimension", cap, m, "linf envelope")
    m_mat = mat_from_cols(
        complete_to_basis(list(columns(space.functionals)), m), nrows=m)
    new_space = space_from_functionals(m_mat)
    pad = _padding(m, space.dim)
    if induced(Subspace(ambient=new_space, basis=pad)) != space:
        raise VerificationError("envelope does not restrict to the stage norm")
    if is_linf_isometric(new_space) is None:
        raise VerificationError("envelope is not isometric to a sup-norm space")

    retraction = None
    if stage.retraction is not None:
        sub = Subspace(ambient=new_space, basis=pad)
        through = LinearMap(domain=induced(sub),
                            codomain=stage.retraction.codomain,
                            matrix=stage.retraction.matrix)
        retraction = extend_into_linf(through, sub)
        if operator_norm(retraction) != ONE:
            raise VerificationError("envelope retraction lost norm one")

    start = stage.support[-1] + 1
    support = stage.support + tuple(range(start, start + m - space.dim))
    record = {"kind": "envelope", "pairs": m}
    return ChainStage(index=stage.index + 1, support=support, space=new_space,
                      parent=stage, witness=record, retraction=retraction)


class _Substream:
    """Lazy walk of one dimension's slice of the level enumeration."""

    def __init__(self, space: PolyhedralSpace, dim: int, config: ChainConfig):
        self.space = space
        self.dim = dim
        self.config = config
        self.level = dim - 1
        self.items = iter(())

    def next_unseen(self, seen) -> EmbeddingRequest:
        while True:
            for request in self.items:
                if request.family_key() not in seen:
                    return request
            self.level += 1
            self.items = iter_level(self.space, self.level,
                                    dim_cap=self.config.dim_cap,
                                    bit_cap=self.config.bit_cap,
                                    only_dim=self.dim)


Observer = Callable[[str, object], None]


def run_chain(config: ChainConfig,
              observer: Optional[Observer] = None
              ) -> Tuple[List[ChainStage], List[Certificate]]:
    """Run the deterministic scheduler for config.steps steps.

    Every step first appends one unseen family from each dimension
    substream to the FIFO queue, then either serves the queue head
    (re-enqueueing the family afterwards) or, in lindenstrauss and
    complemented modes on even steps, applies the linf envelope. The
    observer, if given, is fed ("stage", ChainStage) and ("certificate",
    Certificate) events in occurrence order, for streaming transcripts.

    Before returning, the whole chain is re-certified exactly against the
    final stage; any violation raises VerificationError, so returned data
    always carries verified certificates.
    """
    stage = initial_stage(config.mode)
    stages = [stage]
    certificates: List[Certificate] = []
    if observer is not None:
        observer("stage", stage)

    queue: deque = deque()
    seen = set()
    streams = [_Substream(stage.space, d, config)
               for d in range(1, config.dim_cap + 1)]

    def pull_round():
        for stream in streams:
            request = stream.next_unseen(seen)
            seen.add(request.family_key())
            queue.append(request)

    def adopt(new_stage: ChainStage, step: int):
        nonlocal stage, streams
        new_stage.witness["step"] = step
        stages.append(new_stage)
        stage = new_stage
        streams = [_Substream(stage.space, d, config)
                   for d in range(1, config.dim_cap + 1)]
        if observer is not None:
            observer("stage", new_stage)

    for step in range(1, config.steps + 1):
        try:
            pull_round()
            if config.mode != "gurarii" and step % 2 == 0:
                try:
                    grown = linf_envelope(stage, dim_cap=config.dim_cap)
                except ResourceCapError as exc:
                    grown = ChainStage(
                        index=stage.index + 1, support=stage.support,
                        space=stage.space, parent=stage,
                        witness={"kind": "envelope-deferred",
                                 "detail": str(exc)},
                        retraction=stage.retraction)
                adopt(grown, step)
                continue
            family = queue.popleft()
            request = retarget(family, stage)
            new_stage, certificate = satisfy_request(stage, request,
                                                     dim_cap=config.dim_cap)
            certificate = replace(certificate, step=step)
            certificates.append(certificate)
            if observer is not None:
                observer("certificate", certificate)
            if new_stage is not stage:
                adopt(new_stage, step)
            queue.append(family)
        except ResourceCapError as exc:
            raise ResourceCapError(
                exc.cap_name, exc.limit, exc.attempted,
                f"chain aborted at step {step} after {len(stages)} stages "
                f"and {len(certificates)} certificates") from exc

    report = certify(stages, certificates)
    if not report["ok"]:
        raise VerificationError(
            "chain self-check failed: " + "; ".join(report["violations"][:3]))
    return stages, certificates


def _stage_pairs(stages: List[ChainStage]):
    for k in range(1, len(stages)):
        yield stages[k - 1], stages[k]


def certify(stages: List[ChainStage],
            certificates: List[Certificate]) -> Dict[str, object]:
    """Re-verify a finished chain exactly; pure function of its inputs.

    Checks stage shape and exact norm extension along the chain, envelope
    and retraction invariants where present, and every certificate against
    the final stage (stage norms extend exactly, so verdicts are stable
    under padding). Violations name the check that failed; the report
    also tallies coverage by complexity level.
    """
    violations: List[str] = []
    if not stages:
        violations.append("chain has no stages")
        return {"ok": False, "violations": violations}

    first = stages[0]
    if first.space != make_linf(1) or first.index != 0 or first.parent is not None:
        violations.append("stage 0 is not the initial linf(1) stage")
    for parent, child in _stage_pairs(stages):
        name = f"stage {child.index}"
        if child.index != parent.index + 1 or child.parent is not parent:
            violations.append(f"{name}: broken parent linkage")
            continue
        if child.support[:len(parent.support)] != parent.support:
            violations.append(f"{name}: support does not extend the parent's")
        if child.space.dim != len(child.support):
            violations.append(f"{name}: support size differs from dimension")
        if child.space.dim < parent.space.dim:
            violations.append(f"{name}: dimension decreased")
            continue
        try:
            pad = _padding(child.space.dim, parent.space.dim)
            if induced(Subspace(ambient=child.space, basis=pad)) != parent.space:
                violations.append(f"{name}: norm does not extend the parent norm exactly")
            if child.witness.get("kind") == "envelope":
                if is_linf_isometric(child.space) is None:
                    violations.append(f"{name}: envelope stage is not isometric to linf(m)")
            if child.witness.get("kind") == "envelope-deferred":
                if child.space != parent.space:
                    violations.append(f"{name}: deferred envelope changed the space")
            if parent.retraction is not None:
                r = child.retraction
                if r is None:
                    violations.append(f"{name}: retraction dropped")
                else:
                    if operator_norm(r) != ONE:
                        violations.append(f"{name}: retraction norm is not exactly 1")
                    if matmul(r.matrix, pad) != parent.retraction.matrix:
                        violations.append(f"{name}: retraction incompatible with parent")
        except (InputError, VerificationError, ResourceCapError) as exc:
            violations.append(f"{name}: stage check failed: {exc}")

    envelopes = [s for s in stages if s.witness.get("kind") == "envelope"]
    for earlier, later in zip(envelopes, envelopes[1:]):
        try:
            embed = LinearMap(domain=earlier.space, codomain=later.space,
                              matrix=_padding(later.space.dim,
                                              earlier.space.dim))
            ok, _ = is_eps_isometric(embed, ZERO)
            if not ok:
                violations.append(
                    f"stage {later.index}: envelope stage does not contain "
                    f"envelope stage {earlier.index} isometrically")
        except (InputError, VerificationError, ResourceCapError) as exc:
            violations.append(
                f"stage {later.index}: envelope embedding check failed: {exc}")

    final = stages[-1].space
    counts = {"total": len(certificates), "applicable": 0,
              "inapplicable": 0, "deferred": 0, "verified": 0}
    coverage: Dict[int, Dict[str, int]] = {}

    for idx, cert in enumerate(certificates):
        name = f"certificate {idx}"
        level = request_level(cert.request)
        bucket = coverage.setdefault(level, {"scheduled": 0, "satisfied": 0,
                                             "deferred": 0, "inapplicable": 0})
        bucket["scheduled"] += 1
        if cert.stage_index >= len(stages):
            violations.append(f"{name}: stage index out of range")
            continue
        try:
            _certify_one(cert, name, final, counts, bucket, violations)
        except (InputError, VerificationError, ResourceCapError) as exc:
            violations.append(f"{name}: re-verification failed: {exc}")

    report: Dict[str, object] = {
        "ok": not violations,
        "stages": len(stages),
        "envelope_stages": len(envelopes),
        "final_dim": final.dim,
        "final_support": list(stages[-1].support),
        "certificates": counts,
        "coverage": {str(level): coverage[level] for level in sorted(coverage)},
        "violations": violations,
    }
    return report


def _certify_one(cert: Certificate, name: str, final: PolyhedralSpace,
                 counts: Dict[str, int], bucket: Dict[str, int],
                 violations: List[str]) -> None:
    ok, _ = is_eps_isometric(pad_into(cert.request.f, final), cert.request.eps)
    if ok != cert.applicable:
        violations.append(f"{name}: applicability flag contradicts the exact check")
    if cert.deferred:
        counts["deferred"] += 1
        bucket["deferred"] += 1
        return
    if not cert.applicable:
        counts["inapplicable"] += 1
        bucket["inapplicable"] += 1
        if cert.witness is not None:
            violations.append(f"{name}: non-applicable but carries a witness")
        return
    counts["applicable"] += 1
    if cert.witness is None:
        violations.append(f"{name}: applicable but has no witness")
        return
    witness = pad_into(cert.witness, final)
    ok, rep = is_eps_isometric(witness, cert.request.eps)
    if not ok:
        violations.append(
            f"{name}: witness violates the (1/n)-isometry bound "
            f"(op_norm {format_rational(rep.op_norm)}, "
            f"min_gain {format_rational(rep.min_gain)}, n {cert.request.n})")
        return
    restricted = matmul(witness.matrix, cert.request.E.basis)
    if restricted != _pad_rows(cert.request.f.matrix, final.dim):
        violations.append(f"{name}: witness restricted to E differs from f")
        return
    counts["verified"] += 1
    bucket["satisfied"] += 1
