"""Dense exact linear algebra on tuples.

Vectors are tuples of rationals, matrices are tuples of row tuples. All
routines are exact; pivot selection is positional (first nonzero), so every
result is deterministic.
"""

from __future__ import annotations

from math import gcd

from .errors import InputError
from .rationals import ONE, ZERO, Rational, rat

Vector = tuple
Matrix = tuple


def vec(values) -> Vector:
    return tuple(rat(v) for v in values)


def mat(rows) -> Matrix:
    converted = tuple(vec(row) for row in rows)
    if converted:
        width = len(converted[0])
        for row in converted:
            if len(row) != width:
                raise InputError("inconsistent matrix row width")
    return converted


def zeros_vec(n) -> Vector:
    return tuple(ZERO for _ in range(n))


def identity(n) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zero_matrix(nrows, ncols) -> Matrix:
    return tuple(zeros_vec(ncols) for _ in range(nrows))


def vadd(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a) -> Vector:
    return tuple(-x for x in a)


def vscale(c, a) -> Vector:
    return tuple(c * x for x in a)


def dot(a, b):
    if len(a) != len(b):
        raise InputError("dot product dimension mismatch")
    total = ZERO
    for x, y in zip(a, b):
        total += x * y
    return total


def matvec(m, v) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a, b) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise InputError("matmul dimension mismatch")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_sub(a, b) -> Matrix:
    return tuple(vsub(ra, rb) for ra, rb in zip(a, b))


def mat_scale(c, a) -> Matrix:
    return tuple(vscale(c, row) for row in a)


def transpose(m) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def columns(m, ncols=None):
    """Columns of m as a list of vectors; ncols disambiguates empty matrices."""
    if m:
        return [tuple(row[j] for row in m) for j in range(len(m[0]))]
    return [() for _ in range(ncols or 0)]


def mat_from_cols(cols, nrows=None) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows or 0))
    n = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(n))


def is_zero_vec(v) -> bool:
    return all(x == 0 for x in v)


def _echelon(rows):
    """Row echelon form (in place on a list of lists). Returns pivot columns."""
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m):
    """Reduced row echelon form and pivot column indices."""
    work = [list(row) for row in m]
    pivots = _echelon(work)
    return tuple(tuple(row) for row in work), pivots


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    _, pivots = rref(m)
    return len(pivots)


def rcef(m):
    """Reduced column echelon form and pivot row indices.

    The RCEF is the canonical basis of a column space: subspaces are equal
    iff their RCEF matrices are identical.
    """
    if not m:
        return m, []
    reduced, pivots = rref(transpose(m))
    nonzero = [row for row in reduced if not is_zero_vec(row)]
    return transpose(tuple(nonzero)), list(pivots)


def solve_square(a, b):
    """Solve a x = b for square invertible a; InputError if singular."""
    n = len(a)
    if n == 0:
        return ()
    work = [list(a[i]) + [b[i]] for i in range(n)]
    pivots = _echelon(work)
    if len(pivots) != n or pivots != list(range(n)):
        raise InputError("matrix is singular")
    return tuple(work[i][n] for i in range(n))


def inverse(a) -> Matrix:
    n = len(a)
    work = [list(a[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    pivots = _echelon(work)
    if len(pivots) != n or pivots != list(range(n)):
        raise InputError("matrix is singular")
    return tuple(tuple(work[i][n:]) for i in range(n))


def primitive_vector(v) -> Vector:
    """Scale a nonzero rational vector by a positive rational so the entries
    become coprime integers. Direction (and leading sign) is preserved."""
    if is_zero_vec(v):
        raise InputError("cannot normalize the zero vector")
    denom_lcm = 1
    for x in v:
        d = int(x.denominator)
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(x.numerator) * (denom_lcm // int(x.denominator)) for x in v]
    g = 0
    for value in ints:
        g = gcd(g, abs(value))
    return tuple(Rational(value // g) for value in ints)


def sign_canonical(v) -> Vector:
    """Of the pair {v, -v}, the one whose first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return v if x > 0 else vneg(v)
    return v


def complete_to_basis(cols, dim):
    """Extend independent columns to a basis of R^dim with standard basis
    vectors, chosen greedily in index order. Returns the full column list."""
    chosen = list(cols)
    for i in range(dim):
        if len(chosen) == dim:
            break
        candidate = tuple(ONE if j == i else ZERO for j in range(dim))
        trial = mat_from_cols(chosen + [candidate], nrows=dim)
        if rank(trial) == len(chosen) + 1:
            chosen.append(candidate)
    if len(chosen) != dim:
        raise InputError("could not complete to a basis; columns not independent")
    return chosen
