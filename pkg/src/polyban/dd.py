"""Exact polyhedral enumeration by the double description method.

The core routine enumerates the extreme rays of a pointed cone
{x : a_i . x <= 0}. Everything else is a homogenization of it: vertices of a
unit ball {x : |phi_i(x)| <= 1}, facets of a symmetric hull conv(+-V) (by
polarity these are the same computation), and vertices of a general bounded
polytope {x : a_i . x <= b_i}.

All arithmetic is exact and every choice (initial simplicial subcone,
insertion order, adjacency pairing) is positional in the input order, so the
output is deterministic: same input, same tuple.
"""

from __future__ import annotations

from .caps import check_vertex_count
from .errors import DegeneracyError, InputError
from .linalg import (
    columns,
    dot,
    inverse,
    is_zero_vec,
    mat,
    mat_scale,
    primitive_vector,
    rank,
    vneg,
    vscale,
    vsub,
)
from .rationals import ONE, ZERO


def _mask_rows(mask, processed, rows):
    out = []
    while mask:
        low = mask & -mask
        out.append(rows[processed[low.bit_length() - 1]])
        mask ^= low
    return out


def cone_extreme_rays(rows, *, context="polyhedral enumeration"):
    """Extreme rays of the pointed cone {x : row . x <= 0 for each row}.

    Rays come back as primitive integer vectors. Raises DegeneracyError if
    the cone contains a line (rank of the rows below the dimension), since
    extreme rays are not well defined there.
    """
    rows = mat(rows)
    if not rows or not rows[0]:
        raise InputError("cone enumeration needs at least one constraint row")
    dim = len(rows[0])
    if rank(rows) < dim:
        raise DegeneracyError("cone contains a line; extreme rays are undefined")

    # initial simplicial subcone from the first maximal independent row set
    chosen = []
    chosen_idx = []
    for i, row in enumerate(rows):
        if rank(mat(chosen + [row])) == len(chosen) + 1:
            chosen.append(row)
            chosen_idx.append(i)
            if len(chosen) == dim:
                break
    rays = [primitive_vector(col) for col in columns(mat_scale(-ONE, inverse(mat(chosen))))]
    processed = list(chosen_idx)
    remaining = [i for i in range(len(rows)) if i not in set(chosen_idx)]

    def tight_mask(ray):
        m = 0
        for bit, ri in enumerate(processed):
            if dot(rows[ri], ray) == 0:
                m |= 1 << bit
        return m

    masks = [tight_mask(r) for r in rays]
    need = dim - 2

    for ri in remaining:
        row = rows[ri]
        s = [dot(row, r) for r in rays]
        if any(x > 0 for x in s):
            pos = [i for i, x in enumerate(s) if x > 0]
            neg = [i for i, x in enumerate(s) if x < 0]
            new_rays = []
            for p in pos:
                for q in neg:
                    common = masks[p] & masks[q]
                    if common.bit_count() < need:
                        continue
                    if need > 0 and rank(mat(_mask_rows(common, processed, rows))) != need:
                        continue
                    # positive combination landing exactly on the hyperplane
                    new_rays.append(primitive_vector(
                        vsub(vscale(s[p], rays[q]), vscale(s[q], rays[p]))))
            rays = [r for i, r in enumerate(rays) if s[i] <= 0] + new_rays
        processed.append(ri)
        masks = [tight_mask(r) for r in rays]
        check_vertex_count(len(rays), context)
    check_vertex_count(len(rays), context)
    return tuple(rays)


def _homogenized_vertices(cone_rows, dim, context):
    rays = cone_extreme_rays(cone_rows, context=context)
    verts = []
    for r in rays:
        t = r[-1]
        if t <= 0:
            raise DegeneracyError("unbounded direction; the polytope has no vertex description")
        verts.append(tuple(x / t for x in r[:-1]))
    verts.sort()
    return tuple(verts)


def ball_vertices(functionals):
    """Vertices of the symmetric polytope {x : |phi(x)| <= 1 for each phi}.

    The functionals must all be nonzero and span the space; otherwise the
    body is unbounded and DegeneracyError is raised.
    """
    fs = mat(functionals)
    if not fs or not fs[0]:
        raise InputError("need at least one functional in dimension >= 1")
    dim = len(fs[0])
    for phi in fs:
        if is_zero_vec(phi):
            raise InputError("zero functional defines no constraint")
    if rank(fs) < dim:
        raise DegeneracyError("functionals do not span the dual; unit ball is unbounded")
    cone_rows = []
    for phi in fs:
        cone_rows.append(phi + (-ONE,))
        cone_rows.append(vneg(phi) + (-ONE,))
    return _homogenized_vertices(cone_rows, dim, "unit ball vertex enumeration")


def ball_facets(vertices):
    """Facet functionals of conv(+-v_1, ..., +-v_k), both signs included.

    By polarity this is ball_vertices with the roles swapped: the facets of
    the hull are the vertices of the polar body {y : |v . y| <= 1}. The
    points must span the space, else the hull is degenerate (no interior)
    and DegeneracyError is raised.
    """
    vs = mat(vertices)
    if not vs or not vs[0]:
        raise InputError("need at least one point in dimension >= 1")
    dim = len(vs[0])
    for v in vs:
        if is_zero_vec(v):
            raise InputError("the origin is never a vertex of a symmetric body")
    if rank(vs) < dim:
        raise DegeneracyError("points do not span; hull has empty interior and no facet description")
    cone_rows = []
    for v in vs:
        cone_rows.append(v + (-ONE,))
        cone_rows.append(vneg(v) + (-ONE,))
    return _homogenized_vertices(cone_rows, dim, "facet enumeration")


def general_polytope_vertices(rows, rhs):
    """Vertices of the bounded polytope {x : a_i . x <= b_i}.

    Returns () when the polytope is empty. Raises DegeneracyError when it is
    unbounded (or contains a free line), since vertices then do not carry
    the body.
    """
    rows = mat(rows)
    if not rows or not rows[0]:
        raise InputError("polytope needs at least one constraint row")
    dim = len(rows[0])
    if len(rhs) != len(rows):
        raise InputError("constraint rows and right-hand sides differ in length")
    cone_rows = [row + (-b,) for row, b in zip(rows, mat([rhs])[0])]
    cone_rows.append(tuple([ZERO] * dim + [-ONE]))
    rays = cone_extreme_rays(cone_rows, context="polytope vertex enumeration")
    verts = []
    for r in rays:
        t = r[-1]
        if t == 0:
            raise DegeneracyError("polytope is unbounded; no vertex description")
        verts.append(tuple(x / t for x in r[:-1]))
    verts.sort()
    return tuple(verts)
