"""Run a certified tower of amalgamations and audit its transcript.

Each step either satisfies the next embedding request from a fair
enumeration or wraps the current space in sup-norm coordinates. Every
step leaves behind an exact certificate; the whole run serializes to a
deterministic JSON-lines transcript that can be re-read, re-verified and
replayed byte for byte.
"""

import tempfile
from pathlib import Path

from polyban import (
    ChainConfig,
    certify,
    read_transcript,
    replay_transcript,
    run_chain,
    write_transcript,
)


def main():
    config = ChainConfig(steps=20, dim_cap=3, bit_cap=4, seed=0, mode="lindenstrauss")
    stages, certs = run_chain(config)
    print("stages:", len(stages), "| final dim:", stages[-1].space.dim)
    for s in stages[:6]:
        print("  step", s.witness.get("step"), "kind", s.witness.get("kind"),
              "dim", s.space.dim)

    report = certify(stages, certs)
    print("certified:", report["ok"],
          "| verified", report["certificates"]["verified"],
          "of", report["certificates"]["applicable"], "applicable")
    print("coverage by request level:", report["coverage"])

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "tower.jsonl"
        write_transcript(path, config, stages, certs)
        config2, stages2, certs2 = read_transcript(path)
        print("roundtrip stages match:", len(stages2) == len(stages))
        replay = replay_transcript(path)
        print("replay matches byte for byte:", replay["match"])


if __name__ == "__main__":
    main()
