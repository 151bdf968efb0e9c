"""Random instance generation shared by the module tests and the
acceptance suite. Deterministic given the caller's rng."""

from polyban.linalg import mat, rank, vec
from polyban.maps import LinearMap, compose, distortion, linf_embedding, operator_norm
from polyban.pushout import pushout
from polyban.rationals import ONE, rat, rationals_of_bit_size
from polyban.spaces import (
    PolyhedralSpace,
    Subspace,
    induced,
    make_linf,
    space_from_functionals,
)


def random_space(rng, dim, bit=3, max_extra=2):
    """A random polyhedral space of the exact dimension given."""
    pool = [q for q in rationals_of_bit_size(bit)]
    while True:
        count = dim + rng.randint(0, max_extra)
        rows = [[rng.choice(pool) for _ in range(dim)] for _ in range(count)]
        candidate = mat(rows)
        if rank(candidate) != dim:
            continue
        try:
            return space_from_functionals(candidate)
        except Exception:
            continue


def random_subspace(rng, ambient, k, bit=2):
    """A random k-dimensional subspace of the given space."""
    pool = [q for q in rationals_of_bit_size(bit)]
    while True:
        cols = [[rng.choice(pool) for _ in range(k)] for _ in range(ambient.dim)]
        basis = mat(cols)
        if rank(basis) == k:
            return Subspace(ambient=ambient, basis=basis)


def random_isometry_from(rng, Z):
    """An exactly isometric embedding out of Z, with a varied codomain."""
    kind = rng.randrange(3)
    if kind == 0:
        return LinearMap(domain=Z, codomain=Z, matrix=_signed_permutation(rng, Z))
    emb = linf_embedding(Z)
    if kind == 1:
        return emb
    twist = LinearMap(domain=emb.codomain, codomain=emb.codomain,
                      matrix=_signed_permutation(rng, emb.codomain))
    return compose(twist, emb)


def _signed_permutation(rng, space):
    n = space.dim
    perm = list(range(n))
    rng.shuffle(perm)
    rows = []
    for target in perm:
        sign = ONE if rng.random() < 0.5 else -ONE
        rows.append([sign if c == target else rat(0) for c in range(n)])
    candidate = mat(rows)
    probe = LinearMap(domain=space, codomain=space, matrix=candidate)
    if distortion(probe).eps_star == 0:
        return candidate
    return mat([[ONE if c == r else rat(0) for c in range(n)] for r in range(n)])


def random_eps_embedding(rng, Z, eps, bit=2, tries=60):
    """An eps-isometric f out of Z with operator norm exactly 1, or an
    exact isometry when eps is 0. None if sampling keeps failing."""
    eps = rat(eps)
    if eps == 0:
        return random_isometry_from(rng, Z)
    pool = [q for q in rationals_of_bit_size(bit)]
    for _ in range(tries):
        qdim = rng.randint(Z.dim, Z.dim + 1)
        Y = random_space(rng, qdim, bit=bit)
        rows = [[rng.choice(pool) for _ in range(Z.dim)] for _ in range(qdim)]
        matrix = mat(rows)
        if rank(matrix) != Z.dim:
            continue
        probe = LinearMap(domain=Z, codomain=Y, matrix=matrix)
        rep = distortion(probe)
        if rep.min_gain == 0:
            continue
        # scale to operator norm 1; the distortion ratio is scale invariant
        if rep.op_norm > (ONE + eps) * rep.min_gain:
            continue
        scaled = mat([[x / rep.op_norm for x in row] for row in rows])
        return LinearMap(domain=Z, codomain=Y, matrix=scaled)
    return None


def random_pushout_instance(rng, eps, zdim_max=2, xdim_max=3, bit=3):
    """(i, f) ready for amalgamation: i a subspace inclusion, f an
    eps-isometric map of operator norm at most 1."""
    while True:
        zdim = 1 if rng.random() < 0.7 else rng.randint(1, zdim_max)
        xdim = rng.randint(zdim, xdim_max)
        X = random_space(rng, xdim, bit=bit)
        sub = random_subspace(rng, X, zdim)
        Z = induced(sub)
        i = LinearMap(domain=Z, codomain=X, matrix=sub.basis)
        f = random_eps_embedding(rng, Z, eps)
        if f is None:
            continue
        return i, f
