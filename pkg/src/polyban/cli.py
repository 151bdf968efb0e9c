"""Command-line surface: constructions, checks, chain runs, reports.

Verbs: space, embed-check, pushout, extend, chain, certify, verify-suite.
All file formats carry rationals as "p/q" strings; outputs are
deterministic given argv and inputs. Exit codes: 0 success, 1 exact
verification failure, 2 input error, 3 resource cap.
"""

import argparse
import csv
import json
import sys

from .chain import ChainConfig, certify, run_chain
from .errors import InputError, ResourceCapError, VerificationError
from .extension import extend_norm
from .linalg import mat
from .maps import (
    distortion,
    extend_into_linf,
    is_eps_isometric,
    map_from_json,
    map_to_json,
    report_to_json,
)
from .pushout import pushout, pushout_to_json
from .rationals import parse_rational
from .spaces import (
    Subspace,
    make_l1,
    make_linf,
    space_from_json,
    space_to_json,
)
from .transcript import TranscriptWriter, read_transcript, replay_transcript
from .verify import run_suites


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: "
                         f"{exc.msg}")


def _subspace_from_json(data, what: str) -> Subspace:
    if not isinstance(data, dict) or "ambient" not in data or "basis" not in data:
        raise InputError(f"{what} must be an object with ambient and basis")
    ambient = space_from_json(data["ambient"])
    basis = mat([[parse_rational(x) for x in row] for row in data["basis"]])
    return Subspace(ambient=ambient, basis=basis)


def _cmd_space(args) -> int:
    if args.builder == "l1":
        _emit(space_to_json(make_l1(args.dim)))
    elif args.builder == "linf":
        _emit(space_to_json(make_linf(args.dim)))
    else:
        _emit(space_to_json(space_from_json(_load_json(args.file))))
    return 0


def _cmd_embed_check(args) -> int:
    f = map_from_json(_load_json(args.file))
    eps = parse_rational(args.eps)
    verdict, report = is_eps_isometric(f, eps, strict=args.strict)
    _emit({"verdict": verdict, "eps": args.eps,
           "report": report_to_json(report)})
    return 0 if verdict else 1


def _cmd_pushout(args) -> int:
    i = map_from_json(_load_json(args.inclusion))
    f = map_from_json(_load_json(args.map))
    result = pushout(i, f, parse_rational(args.eps),
                     relax_min_gain=args.relax_min_gain)
    _emit(pushout_to_json(result))
    return 0


def _cmd_extend_norm(args) -> int:
    sub = _subspace_from_json(_load_json(args.subspace), "subspace file")
    new_norm = space_from_json(_load_json(args.norm))
    result = extend_norm(sub, new_norm, parse_rational(args.eps))
    _emit(space_to_json(result))
    return 0


def _cmd_extend_into_linf(args) -> int:
    T = map_from_json(_load_json(args.map))
    sub = _subspace_from_json(_load_json(args.subspace), "subspace file")
    extended = extend_into_linf(T, sub)
    _emit({"map": map_to_json(extended),
           "report": report_to_json(distortion(extended))})
    return 0


def _cmd_chain(args) -> int:
    config = ChainConfig(steps=args.steps, dim_cap=args.dim_cap,
                         bit_cap=args.bit_cap, seed=args.seed, mode=args.mode)
    with TranscriptWriter(args.out, config) as writer:
        stages, certificates = run_chain(config, observer=writer.observe)
    report = certify(stages, certificates)
    _emit({"transcript": args.out, "ok": report["ok"],
           "stages": report["stages"],
           "final_dim": report["final_dim"],
           "certificates": report["certificates"]})
    return 0 if report["ok"] else 1


def _cmd_certify(args) -> int:
    config, stages, certificates = read_transcript(args.transcript)
    report = certify(stages, certificates)
    if args.replay:
        report = dict(report)
        outcome = replay_transcript(args.transcript)
        report["replay"] = outcome
        if not outcome["match"]:
            report["ok"] = False
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["level", "scheduled", "satisfied",
                             "deferred", "inapplicable"])
            for level, bucket in report["coverage"].items():
                writer.writerow([level, bucket["scheduled"],
                                 bucket["satisfied"], bucket["deferred"],
                                 bucket["inapplicable"]])
    _emit(report)
    return 0 if report["ok"] else 1


def _cmd_verify_suite(args) -> int:
    rows = run_suites(args.suites or None, seed=args.seed)
    width = max(len(f"{r['suite']}: {r['check']}") for r in rows)
    failures = 0
    for row in rows:
        mark = "PASS" if row["ok"] else "FAIL"
        failures += not row["ok"]
        label = f"{row['suite']}: {row['check']}"
        line = f"{mark}  {label:<{width}}"
        if row["detail"]:
            line += f"  {row['detail']}"
        print(line.rstrip())
    print(f"{len(rows) - failures}/{len(rows)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyban",
        description="Exact polyhedral Banach space constructions")
    verbs = parser.add_subparsers(dest="verb", required=True)

    space = verbs.add_parser("space", help="build or echo a canonical space")
    builders = space.add_subparsers(dest="builder", required=True)
    for kind in ("l1", "linf"):
        sub = builders.add_parser(kind, help=f"{kind} space of a dimension")
        sub.add_argument("dim", type=int)
        sub.set_defaults(handler=_cmd_space)
    from_json = builders.add_parser("from-json", help="canonicalize a file")
    from_json.add_argument("file")
    from_json.set_defaults(handler=_cmd_space)

    check = verbs.add_parser("embed-check",
                             help="verdict on an eps-isometric embedding")
    check.add_argument("file", help="LinearMap JSON file")
    check.add_argument("--eps", required=True, help='tolerance as "p/q"')
    check.add_argument("--strict", action="store_true",
                       help="require strict inequalities")
    check.set_defaults(handler=_cmd_embed_check)

    push = verbs.add_parser("pushout", help="amalgamate two embeddings")
    push.add_argument("inclusion", help="isometric inclusion map JSON")
    push.add_argument("map", help="eps-isometric map JSON, same domain")
    push.add_argument("--eps", default="0", help='tolerance as "p/q"')
    push.add_argument("--relax-min-gain", action="store_true",
                      help="accept any contractive map, not just embeddings")
    push.set_defaults(handler=_cmd_pushout)

    extend = verbs.add_parser("extend", help="norm and operator extensions")
    kinds = extend.add_subparsers(dest="kind", required=True)
    norm_cmd = kinds.add_parser("norm",
                                help="extend a strictly equivalent norm")
    norm_cmd.add_argument("--subspace", required=True,
                          help="Subspace JSON file (ambient + basis)")
    norm_cmd.add_argument("--norm", required=True,
                          help="replacement norm on the subspace")
    norm_cmd.add_argument("--eps", required=True, help='tolerance as "p/q"')
    norm_cmd.set_defaults(handler=_cmd_extend_norm)
    linf_cmd = kinds.add_parser("into-linf",
                                help="Hahn-Banach extension into linf")
    linf_cmd.add_argument("--map", required=True,
                          help="operator on the subspace, target linf")
    linf_cmd.add_argument("--subspace", required=True,
                          help="Subspace JSON file (ambient + basis)")
    linf_cmd.set_defaults(handler=_cmd_extend_into_linf)

    chain = verbs.add_parser("chain", help="run the certified chain builder")
    chain.add_argument("--steps", type=int, required=True)
    chain.add_argument("--dim-cap", type=int, default=4)
    chain.add_argument("--bit-cap", type=int, default=3)
    chain.add_argument("--seed", type=int, default=0)
    chain.add_argument("--mode", default="gurarii",
                       choices=("gurarii", "lindenstrauss", "complemented"))
    chain.add_argument("--out", required=True, help="transcript path (jsonl)")
    chain.set_defaults(handler=_cmd_chain)

    cert = verbs.add_parser("certify", help="re-verify a chain transcript")
    cert.add_argument("--transcript", required=True)
    cert.add_argument("--csv", help="write per-level coverage CSV here")
    cert.add_argument("--replay", action="store_true",
                      help="also rerun the config and compare line by line")
    cert.set_defaults(handler=_cmd_certify)

    suite = verbs.add_parser("verify-suite",
                             help="run per-module property suites")
    suite.add_argument("suites", nargs="*",
                       help="suite names (default: all)")
    suite.add_argument("--seed", type=int, default=0)
    suite.set_defaults(handler=_cmd_verify_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        print(json.dumps(exc.payload(), sort_keys=True), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
