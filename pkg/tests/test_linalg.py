import pytest

from polyban.errors import InputError
from polyban.linalg import (
    complete_to_basis,
    columns,
    dot,
    identity,
    inverse,
    mat,
    mat_from_cols,
    matmul,
    matvec,
    primitive_vector,
    rank,
    rcef,
    rref,
    sign_canonical,
    solve_square,
    transpose,
    vec,
)
from polyban.rationals import rat


class TestBasics:
    def test_dot(self):
        assert dot(vec([1, 2]), vec([3, 4])) == rat(11)

    def test_dot_mismatch(self):
        with pytest.raises(InputError):
            dot(vec([1]), vec([1, 2]))

    def test_matvec(self):
        m = mat([[1, 2], [3, 4]])
        assert matvec(m, vec([1, "1/2"])) == vec([2, 5])

    def test_matmul_identity(self):
        m = mat([["1/2", 2], [3, "-4/7"]])
        assert matmul(m, identity(2)) == m
        assert matmul(identity(2), m) == m

    def test_ragged_rejected(self):
        with pytest.raises(InputError):
            mat([[1, 2], [3]])


class TestEchelon:
    def test_rref_simple(self):
        reduced, pivots = rref(mat([[2, 4], [1, 2]]))
        assert reduced == mat([[1, 2], [0, 0]])
        assert pivots == [0]

    def test_rank(self):
        assert rank(mat([[1, 0], [0, 1]])) == 2
        assert rank(mat([[1, 2], [2, 4]])) == 1
        assert rank(mat([[0, 0], [0, 0]])) == 0

    def test_rcef_canonical_for_equal_spans(self):
        # two different bases of the same plane in R^3
        a = mat_from_cols([vec([1, 0, 1]), vec([0, 1, 1])], nrows=3)
        b = mat_from_cols([vec([1, 1, 2]), vec([2, -1, 1])], nrows=3)
        ra, pa = rcef(a)
        rb, pb = rcef(b)
        assert ra == rb
        assert pa == pb == [0, 1]

    def test_rcef_pivot_rows(self):
        # column space spanned by e2 alone: pivot row is 1
        m = mat_from_cols([vec([0, 5, 0])], nrows=3)
        reduced, pivots = rcef(m)
        assert reduced == mat_from_cols([vec([0, 1, 0])], nrows=3)
        assert pivots == [1]


class TestSolve:
    def test_solve_square(self):
        a = mat([[2, 1], [1, 3]])
        x = solve_square(a, vec([5, 10]))
        assert matvec(a, x) == vec([5, 10])
        assert x == vec([1, 3])

    def test_singular_rejected(self):
        with pytest.raises(InputError):
            solve_square(mat([[1, 2], [2, 4]]), vec([1, 1]))

    def test_inverse(self):
        a = mat([[1, 2], [3, "7/2"]])
        assert matmul(a, inverse(a)) == identity(2)
        assert matmul(inverse(a), a) == identity(2)

    def test_inverse_singular(self):
        with pytest.raises(InputError):
            inverse(mat([[1, 1], [1, 1]]))


class TestNormalization:
    def test_primitive_vector(self):
        assert primitive_vector(vec(["1/2", "1/3"])) == vec([3, 2])
        assert primitive_vector(vec([4, 6])) == vec([2, 3])
        assert primitive_vector(vec([0, "-2/5"])) == vec([0, -1])

    def test_primitive_zero_rejected(self):
        with pytest.raises(InputError):
            primitive_vector(vec([0, 0]))

    def test_sign_canonical(self):
        assert sign_canonical(vec([-1, 2])) == vec([1, -2])
        assert sign_canonical(vec([0, -3])) == vec([0, 3])
        assert sign_canonical(vec([2, -5])) == vec([2, -5])

    def test_complete_to_basis(self):
        cols = [vec([1, 1, 0])]
        full = complete_to_basis(cols, 3)
        assert len(full) == 3
        assert rank(mat_from_cols(full, nrows=3)) == 3
        # greedy picks e1 then e2 (e1 independent of (1,1,0), e2 not after e1? it is)
        assert full[1] == vec([1, 0, 0])

    def test_columns_roundtrip(self):
        m = mat([[1, 2, 3], [4, 5, 6]])
        assert mat_from_cols(columns(m), nrows=2) == m
        assert transpose(transpose(m)) == m
