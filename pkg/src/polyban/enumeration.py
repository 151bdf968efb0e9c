"""Fair enumeration of embedding requests against a growing stage.

A request is a tuple (E, F, f, n): a subspace E of a finite polyhedral
space F, a rational linear map f from E into the current stage, and a
precision index n standing for the tolerance 1/n. Countability is realized
by a single complexity level: the level of a request is the maximum of
dim F, the number of F's functional pairs, n, and the largest bit size
among all rational entries of F, E's basis, and f's matrix. Levels are
finite and every request appears at exactly one level, so streaming the
levels in order enumerates every request exactly once; the enumeration at
complexity k is literally a prefix of the one at k + 1.

Within a level the order is the generation order documented here, most
significant first: dim F ascending, functional-pair count ascending, F's
canonical functional rows (descending-sorted tuples, in combination
order over the descending entry pool), E's dimension ascending, E's pivot
rows, E's free entries, f's columns over the coordinate grid of the stage,
and n ascending. F ranges over canonically presented spaces only (the
functional tuple must equal its own canonicalization), so each polyhedral
space occurs once; E's basis is in reduced column echelon form, so each
subspace occurs once.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, List, Optional, Tuple

from .caps import current_caps
from .errors import InputError, ResourceCapError
from .linalg import Matrix, mat, rank
from .maps import LinearMap
from .rationals import Rational, bit_size, rat, rationals_of_bit_size
from .spaces import PolyhedralSpace, Subspace, induced, space_from_functionals


@dataclass(frozen=True)
class EmbeddingRequest:
    E: Subspace
    F: PolyhedralSpace
    f: LinearMap            # induced(E) -> the stage it was created against
    n: int

    @property
    def eps(self) -> Rational:
        return rat(1, self.n)

    def family_key(self) -> tuple:
        """Stage-independent identity: trailing zero rows of f are the
        padding added as the stage grows and do not distinguish families."""
        rows = list(self.f.matrix)
        while rows and all(x == 0 for x in rows[-1]):
            rows.pop()
        return (self.F.functionals, self.E.basis, tuple(rows), self.n)


def request_level(request: EmbeddingRequest) -> int:
    rows = request.family_key()[2]
    return _measure(request.F.functionals, request.E.basis, rows, request.n)


def _measure(f_rows, e_basis, f_map_rows, n) -> int:
    bits = [bit_size(x) for row in f_rows for x in row]
    bits += [bit_size(x) for row in e_basis for x in row]
    bits += [bit_size(x) for row in f_map_rows for x in row]
    return max(len(f_rows[0]), len(f_rows), n, max(bits))


def _pool(bit: int):
    return sorted(rationals_of_bit_size(bit))


def _canonical_spaces(dim: int, pairs: int, bit: int) -> Iterator[PolyhedralSpace]:
    """Canonically presented spaces of the given dimension with exactly the
    given number of functional pairs and entries of at most the given bit
    size, in canonical hrep order."""
    pool = sorted(_pool(bit), reverse=True)
    candidates = []
    for entries in product(pool, repeat=dim):
        row = tuple(entries)
        lead = next((x for x in row if x != 0), None)
        if lead is None or lead < 0:
            continue
        candidates.append(row)
    for rows in combinations(candidates, pairs):
        candidate = mat(rows)
        if rank(candidate) != dim:
            continue
        try:
            space = space_from_functionals(candidate)
        except (InputError, ResourceCapError):
            continue
        if space.functionals == candidate:
            yield space


def _echelon_bases(dim: int, k: int, bit: int) -> Iterator[Matrix]:
    """All dim x k bases in reduced column echelon form with bit-bounded
    entries: pivot rows carry the identity pattern, entries above a pivot
    or in another pivot's row are zero, the rest range over the pool."""
    pool = _pool(bit)
    for pivots in combinations(range(dim), k):
        free = [(m, c) for c in range(k) for m in range(dim)
                if m not in pivots and m > pivots[c]]
        free.sort()
        for values in product(pool, repeat=len(free)):
            fill = dict(zip(free, values))
            rows = []
            for m in range(dim):
                if m in pivots:
                    rows.append([rat(1) if pivots[c] == m else rat(0) for c in range(k)])
                else:
                    rows.append([fill.get((m, c), rat(0)) for c in range(k)])
            yield mat(rows)


def _stage_maps(stage_dim: int, k: int, bit: int) -> Iterator[Matrix]:
    """Injective stage_dim x k matrices whose columns run over the
    bit-bounded coordinate grid of the stage."""
    if k > stage_dim:
        return
    pool = _pool(bit)
    grid = [col for col in product(pool, repeat=stage_dim)
            if any(x != 0 for x in col)]
    for cols in product(grid, repeat=k):
        candidate = mat([[cols[c][m] for c in range(k)] for m in range(stage_dim)])
        if rank(candidate) == k:
            yield candidate


def iter_level(stage, level: int, *,
               dim_cap: Optional[int] = None,
               bit_cap: Optional[int] = None,
               only_dim: Optional[int] = None) -> Iterator[EmbeddingRequest]:
    """All requests of exactly the given complexity level, in order.

    Accepts a PolyhedralSpace or anything with a .space attribute.
    only_dim restricts to a single value of dim F (one substream of the
    dovetailed schedule); the relative order within the substream is the
    same as in the full level.
    """
    stage = getattr(stage, "space", stage)
    if level < 1:
        return
    dim_cap = current_caps().dim_cap if dim_cap is None else dim_cap
    bit = min(level, bit_cap) if bit_cap is not None else level
    dims = range(1, min(level, dim_cap) + 1)
    if only_dim is not None:
        dims = [only_dim] if only_dim <= min(level, dim_cap) else []
    for dim in dims:
        for pairs in range(dim, level + 1):
            for F in _canonical_spaces(dim, pairs, bit):
                for k in range(1, dim + 1):
                    for basis in _echelon_bases(dim, k, bit):
                        sub = Subspace(ambient=F, basis=basis)
                        try:
                            domain = induced(sub)
                        except ResourceCapError:
                            continue
                        for matrix in _stage_maps(stage.dim, k, bit):
                            for n in range(1, level + 1):
                                if _measure(F.functionals, basis, matrix, n) != level:
                                    continue
                                f = LinearMap(domain=domain, codomain=stage,
                                              matrix=matrix)
                                yield EmbeddingRequest(E=sub, F=F, f=f, n=n)


def enumerate_requests(stage, complexity: int, *,
                       dim_cap: Optional[int] = None,
                       bit_cap: Optional[int] = None) -> List[EmbeddingRequest]:
    """Every request of complexity at most the bound, lowest level first.

    The result at complexity k is a prefix of the result at k + 1.
    Accepts a PolyhedralSpace or anything with a .space attribute.
    """
    if complexity < 1:
        raise InputError("complexity must be at least 1")
    out: List[EmbeddingRequest] = []
    for level in range(1, complexity + 1):
        out.extend(iter_level(stage, level, dim_cap=dim_cap, bit_cap=bit_cap))
    return out


def retarget(request: EmbeddingRequest, stage) -> EmbeddingRequest:
    """The same family aimed at a later stage: pad f's matrix with zero
    rows for the fresh coordinates. Old coordinates keep their meaning
    because stage norms extend exactly."""
    space = getattr(stage, "space", stage)
    rows = list(request.family_key()[2])
    if len(rows) > space.dim:
        raise InputError("request targets a larger stage than given")
    if len(rows) == space.dim and request.f.codomain == space:
        return request
    k = len(request.E.basis[0])
    rows += [tuple(rat(0) for _ in range(k)) for _ in range(space.dim - len(rows))]
    f = LinearMap(domain=request.f.domain, codomain=space, matrix=mat(rows))
    return EmbeddingRequest(E=request.E, F=request.F, f=f, n=request.n)
