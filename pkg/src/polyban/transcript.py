"""Chain transcripts: replayable, byte-stable JSON-lines files.

One JSON object per line, serialized canonically (sorted keys, compact
separators, rationals as "p/q" strings), so two runs of the same config
produce byte-identical files. Line order is occurrence order: the config,
the initial stage, then per step a certificate line and, when the stage
grew, the new stage line, and finally a summary line that guards against
truncation. Reading a transcript rebuilds the full chain objects; replay
reruns the config and compares line by line.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Tuple

from .chain import Certificate, ChainConfig, ChainStage, run_chain
from .enumeration import EmbeddingRequest
from .errors import InputError
from .linalg import mat
from .maps import LinearMap
from .rationals import format_rational, parse_rational
from .spaces import Subspace, induced, make_linf, space_from_json, space_to_json

TRANSCRIPT_VERSION = 1


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _matrix_json(rows) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def _matrix_parse(rows, what: str):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a list of rows")
    return mat([[parse_rational(x) for x in row] for row in rows])


def config_to_json(config: ChainConfig) -> dict:
    return {
        "type": "config",
        "version": TRANSCRIPT_VERSION,
        "steps": config.steps,
        "dim_cap": config.dim_cap,
        "bit_cap": config.bit_cap,
        "seed": config.seed,
        "mode": config.mode,
    }


def config_from_json(data: dict) -> ChainConfig:
    if data.get("version") != TRANSCRIPT_VERSION:
        raise InputError(f"unsupported transcript version {data.get('version')!r}")
    try:
        return ChainConfig(steps=data["steps"], dim_cap=data["dim_cap"],
                           bit_cap=data["bit_cap"], seed=data["seed"],
                           mode=data["mode"])
    except KeyError as exc:
        raise InputError(f"config line is missing {exc}") from exc


def stage_to_json(stage: ChainStage) -> dict:
    return {
        "type": "stage",
        "index": stage.index,
        "support": list(stage.support),
        "parent": None if stage.parent is None else stage.parent.index,
        "space": space_to_json(stage.space),
        "witness": stage.witness,
        "retraction": None if stage.retraction is None
        else _matrix_json(stage.retraction.matrix),
    }


def certificate_to_json(cert: Certificate) -> dict:
    request = cert.request
    return {
        "type": "certificate",
        "step": cert.step,
        "stage_index": cert.stage_index,
        "applicable": cert.applicable,
        "deferred": cert.deferred,
        "n": request.n,
        "request": {
            "F": space_to_json(request.F),
            "E_basis": _matrix_json(request.E.basis),
            "f": _matrix_json(request.f.matrix),
        },
        "witness": None if cert.witness is None else _matrix_json(cert.witness.matrix),
        "checks": cert.checks,
    }


def chain_to_lines(config: ChainConfig, stages: List[ChainStage],
                   certificates: List[Certificate]) -> List[str]:
    entries = []
    for stage in stages:
        step = stage.witness.get("step", stage.index)
        entries.append((step, 1, stage_to_json(stage)))
    for cert in certificates:
        entries.append((cert.step, 0, certificate_to_json(cert)))
    entries.sort(key=lambda e: (e[0], e[1]))
    lines = [_dumps(config_to_json(config))]
    lines.extend(_dumps(entry[2]) for entry in entries)
    lines.append(_dumps({"type": "summary", "stages": len(stages),
                         "certificates": len(certificates)}))
    return lines


def write_transcript(path: str, config: ChainConfig, stages: List[ChainStage],
                     certificates: List[Certificate]) -> None:
    with open(path, "w") as handle:
        for line in chain_to_lines(config, stages, certificates):
            handle.write(line + "\n")


class TranscriptWriter:
    """Streaming writer fed by run_chain's observer, for tailing a run.

    Produces byte-identical output to write_transcript on the finished
    chain, but line by line as the run progresses.
    """

    def __init__(self, path: str, config: ChainConfig):
        self.handle = open(path, "w")
        self.stages = 0
        self.certificates = 0
        self._emit(config_to_json(config))

    def _emit(self, obj) -> None:
        self.handle.write(_dumps(obj) + "\n")
        self.handle.flush()

    def observe(self, kind: str, payload) -> None:
        if kind == "stage":
            self.stages += 1
            self._emit(stage_to_json(payload))
        elif kind == "certificate":
            self.certificates += 1
            self._emit(certificate_to_json(payload))

    def close(self) -> None:
        self._emit({"type": "summary", "stages": self.stages,
                    "certificates": self.certificates})
        self.handle.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def _parse_lines(path: str) -> List[dict]:
    records = []
    with open(path) as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{number}: invalid JSON: {exc.msg}") from exc
            if not isinstance(record, dict) or "type" not in record:
                raise InputError(f"{path}:{number}: expected an object with a 'type'")
            records.append(record)
    if not records:
        raise InputError(f"{path}: empty transcript")
    return records


def _stage_from_json(data: dict, stages: List[ChainStage]) -> ChainStage:
    index = data["index"]
    parent_index = data["parent"]
    if parent_index is None:
        parent = None
    elif 0 <= parent_index < len(stages):
        parent = stages[parent_index]
    else:
        raise InputError(f"stage {index}: parent {parent_index} not yet defined")
    space = space_from_json(data["space"])
    retraction = None
    if data.get("retraction") is not None:
        retraction = LinearMap(
            domain=space, codomain=make_linf(1),
            matrix=_matrix_parse(data["retraction"], f"stage {index} retraction"))
    witness = data.get("witness")
    if not isinstance(witness, dict):
        raise InputError(f"stage {index}: witness must be an object")
    support = data.get("support")
    if not isinstance(support, list) or not all(isinstance(s, int) for s in support):
        raise InputError(f"stage {index}: support must be a list of integers")
    return ChainStage(index=index, support=tuple(support), space=space,
                      parent=parent, witness=witness, retraction=retraction)


def _certificate_from_json(data: dict, stages: List[ChainStage]) -> Certificate:
    step = data.get("step")
    name = f"certificate at step {step}"
    body = data.get("request")
    if not isinstance(body, dict):
        raise InputError(f"{name}: missing request object")
    F = space_from_json(body["F"])
    E = Subspace(ambient=F, basis=_matrix_parse(body["E_basis"], f"{name} E_basis"))
    stage_index = data.get("stage_index")
    if not isinstance(stage_index, int) or not 0 <= stage_index < len(stages):
        raise InputError(f"{name}: stage_index out of range")
    f = LinearMap(domain=induced(E), codomain=stages[stage_index].space,
                  matrix=_matrix_parse(body["f"], f"{name} map"))
    n = data.get("n")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{name}: n must be a positive integer")
    request = EmbeddingRequest(E=E, F=F, f=f, n=n)
    witness = None
    if data.get("witness") is not None:
        if stage_index + 1 >= len(stages):
            raise InputError(f"{name}: witness has no target stage")
        witness = LinearMap(
            domain=F, codomain=stages[stage_index + 1].space,
            matrix=_matrix_parse(data["witness"], f"{name} witness"))
    checks = data.get("checks")
    if not isinstance(checks, dict):
        raise InputError(f"{name}: checks must be an object")
    return Certificate(request=request, applicable=bool(data.get("applicable")),
                       deferred=bool(data.get("deferred")), witness=witness,
                       checks=checks, stage_index=stage_index, step=step)


def read_transcript(path: str) -> Tuple[ChainConfig, List[ChainStage], List[Certificate]]:
    records = _parse_lines(path)
    if records[0].get("type") != "config":
        raise InputError(f"{path}: first line must be the config")
    config = config_from_json(records[0])
    stages: List[ChainStage] = []
    certificates: List[Certificate] = []
    summary: Optional[dict] = None
    # stages first: a certificate line precedes the stage it creates
    pending = []
    for record in records[1:]:
        kind = record["type"]
        if summary is not None:
            raise InputError(f"{path}: content after the summary line")
        if kind == "stage":
            stages.append(_stage_from_json(record, stages))
        elif kind == "certificate":
            pending.append(record)
        elif kind == "summary":
            summary = record
        else:
            raise InputError(f"{path}: unknown record type {kind!r}")
    for record in pending:
        certificates.append(_certificate_from_json(record, stages))
    if summary is None:
        raise InputError(f"{path}: missing summary line (truncated transcript?)")
    if summary.get("stages") != len(stages) or summary.get("certificates") != len(certificates):
        raise InputError(f"{path}: summary counts do not match the content")
    return config, stages, certificates


def replay_transcript(path: str) -> Dict[str, object]:
    """Rerun the recorded config and compare, line by line."""
    with open(path) as handle:
        recorded = [line.rstrip("\n") for line in handle if line.strip()]
    config = config_from_json(_parse_lines(path)[0])
    stages, certificates = run_chain(config)
    fresh = chain_to_lines(config, stages, certificates)
    divergence = None
    for k, (a, b) in enumerate(zip(recorded, fresh)):
        if a != b:
            divergence = k
            break
    if divergence is None and len(recorded) != len(fresh):
        divergence = min(len(recorded), len(fresh))
    return {"match": divergence is None, "first_divergence": divergence,
            "lines": len(fresh)}
