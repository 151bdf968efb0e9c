"""Self-contained property suites behind the verify-suite command.

Each suite re-checks a module's core guarantees on small deterministic
instances, runnable from an installed package without any test
infrastructure. A suite yields (check name, passed, detail) rows; the
runner never lets one failing check hide the others.
"""

import os
import random
import tempfile

from .chain import ChainConfig, certify, run_chain
from .errors import InputError, PreconditionError
from .linalg import (
    identity,
    inverse,
    mat,
    matmul,
    matvec,
    rank,
    rcef,
    vec,
)
from .lp import lp_value
from .maps import (
    LinearMap,
    distortion,
    extend_into_linf,
    is_eps_isometric,
    linf_embedding,
    operator_norm,
)
from .polytope import dd_convert, from_vrep, polar, polytope_contains
from .pushout import mediate, pushout
from .rationals import (
    ONE,
    ZERO,
    bit_size,
    format_rational,
    parse_rational,
    rat,
    rationals_of_bit_size,
)
from .extension import extend_norm
from .spaces import (
    Subspace,
    dual,
    induced,
    make_l1,
    make_linf,
    norm,
    space_from_functionals,
    space_from_vertices,
)
from .transcript import read_transcript, replay_transcript, write_transcript


def _random_space(rng, dim, bit=2, max_extra=1):
    pool = list(rationals_of_bit_size(bit))
    while True:
        count = dim + rng.randint(0, max_extra)
        rows = mat([[rng.choice(pool) for _ in range(dim)]
                    for _ in range(count)])
        if rank(rows) != dim:
            continue
        try:
            return space_from_functionals(rows)
        except InputError:
            continue


def _random_subspace(rng, ambient, k, bit=1):
    pool = list(rationals_of_bit_size(bit))
    while True:
        basis = mat([[rng.choice(pool) for _ in range(k)]
                     for _ in range(ambient.dim)])
        if rank(basis) == k:
            return Subspace(ambient=ambient, basis=basis)


def _random_contraction(rng, Z, bit=2):
    """A random injective map out of Z scaled to operator norm exactly 1."""
    pool = list(rationals_of_bit_size(bit))
    while True:
        ydim = rng.randint(Z.dim, Z.dim + 1)
        Y = _random_space(rng, ydim, bit=bit)
        rows = mat([[rng.choice(pool) for _ in range(Z.dim)]
                    for _ in range(ydim)])
        if rank(rows) != Z.dim:
            continue
        probe = LinearMap(domain=Z, codomain=Y, matrix=rows)
        top = operator_norm(probe)
        if top == 0:
            continue
        scaled = mat([[x / top for x in row] for row in rows])
        return LinearMap(domain=Z, codomain=Y, matrix=scaled)


def _run(pairs):
    for name, thunk in pairs:
        try:
            detail = thunk()
            yield name, True, detail or ""
        except Exception as exc:
            yield name, False, f"{type(exc).__name__}: {exc}"


def _suite_rationals(rng):
    def roundtrip():
        sample = sorted(rationals_of_bit_size(4))
        for q in sample:
            assert parse_rational(format_rational(q)) == q
        return f"{len(sample)} values"

    def symmetric():
        grid = set(rationals_of_bit_size(3))
        for q in grid:
            assert -q in grid
            if q != 0:
                assert 1 / q in grid and bit_size(1 / q) == bit_size(q)

    def reject_floats():
        for text in ("0.5", "1e3", "nan"):
            try:
                parse_rational(text)
            except InputError:
                continue
            raise AssertionError(f"accepted {text!r}")

    return _run([("format/parse roundtrip", roundtrip),
                 ("bit-size grids symmetric", symmetric),
                 ("non-rational text rejected", reject_floats)])


def _suite_linalg(rng):
    pool = list(rationals_of_bit_size(2))

    def inverses():
        done = 0
        while done < 15:
            m = mat([[rng.choice(pool) for _ in range(3)] for _ in range(3)])
            if rank(m) != 3:
                continue
            assert matmul(inverse(m), m) == identity(3)
            done += 1
        return "15 random invertible 3x3"

    def rcef_idempotent():
        for _ in range(15):
            m = mat([[rng.choice(pool) for _ in range(2)] for _ in range(4)])
            reduced = rcef(m)[0]
            assert rcef(reduced)[0] == reduced
        return "15 random 4x2"

    return _run([("inverse exactness", inverses),
                 ("rcef idempotence", rcef_idempotent)])


def _suite_lp(rng):
    def lp_matches_vertices():
        for _ in range(10):
            space = _random_space(rng, rng.randint(1, 3))
            objective = vec([rng.choice(list(rationals_of_bit_size(2)))
                             for _ in range(space.dim)])
            constraints = []
            for row in space.functionals:
                constraints.append((row, ONE))
                constraints.append((tuple(-x for x in row), ONE))
            best = lp_value(objective, constraints, sense="max")
            by_hand = max(sum(c * x for c, x in zip(objective, v))
                          for v in space.vertices)
            assert best.value == by_hand
        return "10 random objectives"

    return _run([("optimum equals vertex maximum", lp_matches_vertices)])


def _suite_polytope(rng):
    def roundtrips():
        for _ in range(10):
            space = _random_space(rng, rng.randint(1, 3))
            ball = space.ball
            assert dd_convert(dd_convert(ball)) == ball
            assert polar(polar(ball)) == ball
        return "10 random balls"

    def membership():
        grid = sorted(rationals_of_bit_size(2))
        space = _random_space(rng, 2)
        hits = 0
        for a in grid:
            for b in grid:
                x = vec([a, b])
                inside = polytope_contains(space.ball, x)
                assert inside == (norm(space, x) <= ONE)
                hits += inside
        return f"{hits} interior grid points"

    def vertices_have_norm_one():
        for _ in range(5):
            space = _random_space(rng, rng.randint(1, 3))
            for v in space.vertices:
                assert norm(space, v) == ONE

    return _run([("double description involutions", roundtrips),
                 ("membership agrees with the norm", membership),
                 ("ball vertices lie on the sphere", vertices_have_norm_one)])


def _suite_spaces(rng):
    def duality():
        for n in (1, 2, 3):
            assert dual(make_l1(n)) == make_linf(n)
            assert dual(make_linf(n)) == make_l1(n)

    def induced_full_basis():
        for _ in range(5):
            space = _random_space(rng, rng.randint(1, 3))
            sub = Subspace(ambient=space, basis=identity(space.dim))
            assert induced(sub) == space

    def vertex_reconstruction():
        for _ in range(5):
            space = _random_space(rng, rng.randint(1, 3))
            assert space_from_vertices(space.vertices) == space

    return _run([("l1/linf polar duality", duality),
                 ("induced norm of the full subspace", induced_full_basis),
                 ("vertex-presented reconstruction", vertex_reconstruction)])


def _suite_maps(rng):
    def embeddings_are_exact():
        for _ in range(8):
            space = _random_space(rng, rng.randint(1, 3))
            emb = linf_embedding(space)
            assert distortion(emb).eps_star == ZERO

    def extension_preserves_norm():
        for _ in range(8):
            F = _random_space(rng, rng.randint(2, 3))
            sub = _random_subspace(rng, F, 1)
            Z = induced(sub)
            T = _random_contraction(rng, Z)
            target = linf_embedding(T.codomain)
            into = LinearMap(domain=Z, codomain=target.codomain,
                             matrix=matmul(target.matrix, T.matrix))
            extended = extend_into_linf(into, sub)
            assert operator_norm(extended) == operator_norm(into)
            assert matmul(extended.matrix, sub.basis) == into.matrix
        return "8 random triples"

    return _run([("linf embeddings exactly isometric", embeddings_are_exact),
                 ("Hahn-Banach extension norm equality",
                  extension_preserves_norm)])


def _suite_extension(rng):
    def happy_path():
        F = make_linf(2)
        sub = Subspace(ambient=F, basis=mat([["1"], ["0"]]))
        tighter = space_from_functionals(mat([["5/4"]]))
        result = extend_norm(sub, tighter, rat(1, 2))
        pulled = induced(Subspace(ambient=result, basis=sub.basis))
        assert pulled == tighter
        bridge = LinearMap(domain=F, codomain=result, matrix=identity(2))
        ok, _ = is_eps_isometric(bridge, rat(1, 2))
        assert ok

    def degenerate_rejected():
        F = make_linf(2)
        sub = Subspace(ambient=F, basis=mat([["1"], ["0"]]))
        doubled = space_from_functionals(mat([["2"]]))
        try:
            extend_norm(sub, doubled, rat(1))
        except PreconditionError:
            return
        raise AssertionError("boundary input accepted")

    return _run([("extension restricts exactly", happy_path),
                 ("non-strict equivalence rejected", degenerate_rejected)])


def _suite_pushout(rng):
    def lemma():
        for k in range(8):
            eps = rat(0) if k % 2 == 0 else rat(1, 2)
            F = _random_space(rng, 2)
            sub = _random_subspace(rng, F, 1)
            Z = induced(sub)
            i = LinearMap(domain=Z, codomain=F, matrix=sub.basis)
            f = _random_contraction(rng, Z)
            p = pushout(i, f, eps)
            assert matmul(p.g.matrix, i.matrix) == matmul(p.j.matrix, f.matrix)
            assert distortion(p.j).eps_star == ZERO
            ok, _ = is_eps_isometric(p.g, eps)
            assert ok
        return "8 random squares"

    def mediating_identity():
        F = make_l1(2)
        sub = Subspace(ambient=F, basis=mat([["1"], ["1"]]))
        Z = induced(sub)
        i = LinearMap(domain=Z, codomain=F, matrix=sub.basis)
        # the diagonal of the diamond has length 2, so the isometry onto
        # the interval is t -> 2t in basis coordinates
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([["2"]]))
        p = pushout(i, f, rat(0))
        h = mediate(p, p.g, p.j)
        assert h.matrix == identity(p.W.dim)

    return _run([("amalgamation lemma bounds", lemma),
                 ("mediating map of the cocone itself", mediating_identity)])


def _suite_chain(rng):
    def short_run_certifies():
        stages, certificates = run_chain(
            ChainConfig(steps=8, dim_cap=2, bit_cap=2))
        report = certify(stages, certificates)
        assert report["ok"], report["violations"]
        return f"{len(stages)} stages, {len(certificates)} certificates"

    def envelope_mode():
        stages, certificates = run_chain(
            ChainConfig(steps=8, dim_cap=2, bit_cap=2, mode="lindenstrauss"))
        report = certify(stages, certificates)
        assert report["ok"], report["violations"]
        assert report["envelope_stages"] > 0

    def retraction_mode():
        stages, certificates = run_chain(
            ChainConfig(steps=8, dim_cap=2, bit_cap=2, mode="complemented"))
        report = certify(stages, certificates)
        assert report["ok"], report["violations"]
        for stage in stages:
            assert operator_norm(stage.retraction) == ONE

    return _run([("gurarii short run certifies", short_run_certifies),
                 ("lindenstrauss short run certifies", envelope_mode),
                 ("complemented short run certifies", retraction_mode)])


def _suite_transcript(rng):
    def roundtrip_and_replay():
        config = ChainConfig(steps=6, dim_cap=2, bit_cap=2)
        stages, certificates = run_chain(config)
        handle, path = tempfile.mkstemp(suffix=".jsonl")
        os.close(handle)
        try:
            write_transcript(path, config, stages, certificates)
            config2, stages2, certificates2 = read_transcript(path)
            assert config2 == config
            assert len(stages2) == len(stages)
            assert len(certificates2) == len(certificates)
            outcome = replay_transcript(path)
            assert outcome["match"] is True
        finally:
            os.unlink(path)

    return _run([("write/read/replay agreement", roundtrip_and_replay)])


SUITES = {
    "rationals": _suite_rationals,
    "linalg": _suite_linalg,
    "lp": _suite_lp,
    "polytope": _suite_polytope,
    "spaces": _suite_spaces,
    "maps": _suite_maps,
    "extension": _suite_extension,
    "pushout": _suite_pushout,
    "chain": _suite_chain,
    "transcript": _suite_transcript,
}


def run_suites(names=None, seed=0):
    """Run the named suites (default: all) and return result rows."""
    chosen = list(SUITES) if names is None else list(names)
    rows = []
    for name in chosen:
        if name not in SUITES:
            raise InputError(f"unknown suite {name!r}; "
                             f"choices: {', '.join(SUITES)}")
        rng = random.Random(seed)
        for check, ok, detail in SUITES[name](rng):
            rows.append({"suite": name, "check": check,
                         "ok": bool(ok), "detail": detail})
    return rows
