"""Exact computation with finite-dimensional polyhedral Banach spaces.

Everything is rational and every check is an exact equality or
inequality: spaces are polytope unit balls, maps are rational matrices,
amalgamation and extension results come with certificates that re-verify
by recomputation.
"""

from .caps import Caps, current_caps, set_caps
from .chain import (
    Certificate,
    ChainConfig,
    ChainStage,
    certify,
    initial_stage,
    linf_envelope,
    run_chain,
    satisfy_request,
)
from .enumeration import (
    EmbeddingRequest,
    enumerate_requests,
    iter_level,
    request_level,
    retarget,
)
from .errors import (
    DegeneracyError,
    InputError,
    PolybanError,
    PreconditionError,
    ResourceCapError,
    VerificationError,
)
from .extension import extend_norm
from .lp import LpResult, check_dual_certificate, lp_solve, lp_value
from .maps import (
    DistortionReport,
    LinearMap,
    compose,
    distortion,
    extend_into_linf,
    identity_map,
    is_eps_isometric,
    is_linf_isometric,
    linf_embedding,
    map_distance,
    map_from_json,
    map_to_json,
    min_gain,
    operator_norm,
    report_to_json,
)
from .polytope import (
    SymmetricPolytope,
    canonicalize,
    dd_convert,
    from_hrep,
    from_vrep,
    polar,
    polytope_contains,
    polytope_from_json,
    polytope_to_json,
)
from .pushout import (
    PushoutResult,
    extend_projection,
    l1_sum,
    mediate,
    pushout,
    pushout_from_json,
    pushout_to_json,
)
from .rationals import (
    ONE,
    ZERO,
    Rational,
    bit_size,
    den,
    format_rational,
    num,
    parse_rational,
    rat,
    rationals_of_bit_size,
)
from .spaces import (
    PolyhedralSpace,
    Subspace,
    dual,
    embed_vector,
    induced,
    make_l1,
    make_linf,
    norm,
    space_from_functionals,
    space_from_json,
    space_from_vertices,
    space_to_json,
    unit_ball_contains,
)
from .transcript import (
    TranscriptWriter,
    read_transcript,
    replay_transcript,
    write_transcript,
)
from .verify import run_suites

__version__ = "0.1.0"

__all__ = [
    "Caps", "current_caps", "set_caps",
    "Certificate", "ChainConfig", "ChainStage", "certify", "initial_stage",
    "linf_envelope", "run_chain", "satisfy_request",
    "EmbeddingRequest", "enumerate_requests", "iter_level", "request_level",
    "retarget",
    "DegeneracyError", "InputError", "PolybanError", "PreconditionError",
    "ResourceCapError", "VerificationError",
    "extend_norm",
    "LpResult", "check_dual_certificate", "lp_solve", "lp_value",
    "DistortionReport", "LinearMap", "compose", "distortion",
    "extend_into_linf", "identity_map", "is_eps_isometric",
    "is_linf_isometric", "linf_embedding", "map_distance", "map_from_json",
    "map_to_json", "min_gain", "operator_norm", "report_to_json",
    "SymmetricPolytope", "canonicalize", "dd_convert", "from_hrep",
    "from_vrep", "polar", "polytope_contains", "polytope_from_json",
    "polytope_to_json",
    "PushoutResult", "extend_projection", "l1_sum", "mediate", "pushout",
    "pushout_from_json", "pushout_to_json",
    "ONE", "ZERO", "Rational", "bit_size", "den", "format_rational", "num",
    "parse_rational", "rat", "rationals_of_bit_size",
    "PolyhedralSpace", "Subspace", "dual", "embed_vector", "induced",
    "make_l1", "make_linf", "norm", "space_from_functionals",
    "space_from_json", "space_from_vertices", "space_to_json",
    "unit_ball_contains",
    "TranscriptWriter", "read_transcript", "replay_transcript",
    "write_transcript",
    "run_suites",
    "__version__",
]
