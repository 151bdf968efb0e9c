import random

import pytest

from polyban.errors import PreconditionError
from polyban.extension import extend_norm
from polyban.linalg import identity, mat, matvec, vec
from polyban.maps import LinearMap, is_eps_isometric
from polyban.rationals import rat
from polyban.spaces import (
    Subspace,
    induced,
    make_l1,
    make_linf,
    norm,
    space_from_functionals,
)

from oracles import extended_norm_oracle, grid_points


class TestWorkedExample:
    def setup_method(self):
        self.F = make_linf(2)
        self.E = Subspace(ambient=self.F, basis=mat([[1], [0]]))
        self.new_norm = space_from_functionals(mat([["3/2"]]))

    def test_result_norm(self):
        result = extend_norm(self.E, self.new_norm, 1)
        # the extension is (3/2)|y1| + (1/2)|y2|
        assert result.functionals == mat([["3/2", "1/2"], ["3/2", "-1/2"]])
        assert norm(result, vec([1, 1])) == rat(2)
        assert norm(result, vec([1, 0])) == rat(3, 2)
        assert norm(result, vec([0, 1])) == rat(1, 2)
        assert set(result.vertices) == {
            vec(["2/3", 0]), vec(["-2/3", 0]), vec([0, 2]), vec([0, -2])}

    def test_extension_is_exact_on_e(self):
        result = extend_norm(self.E, self.new_norm, 1)
        for t in [rat(1), rat(-2, 3), rat(5, 7)]:
            assert norm(result, matvec(self.E.basis, (t,))) == rat(3, 2) * abs(t)

    def test_one_equivalent_to_original(self):
        result = extend_norm(self.E, self.new_norm, 1)
        ident = LinearMap(domain=self.F, codomain=result, matrix=identity(2))
        ok, rep = is_eps_isometric(ident, 1)
        assert ok
        assert rep.op_norm == rat(2) and rep.min_gain == rat(1, 2)

    def test_grid_agrees_with_sup_formula_oracle(self):
        result = extend_norm(self.E, self.new_norm, 1)
        for y in grid_points(2, 2):
            assert norm(result, y) == extended_norm_oracle(self.E, self.new_norm, 1, y)


class TestDegenerateBoundary:
    def test_equality_attained_is_rejected(self):
        # |t e1| = 2|t| inside linf(2) with eps = 1 sits exactly on the
        # boundary; the sup formula would degenerate to a seminorm
        F = make_linf(2)
        E = Subspace(ambient=F, basis=mat([[1], [0]]))
        doubled = space_from_functionals(mat([[2]]))
        with pytest.raises(PreconditionError):
            extend_norm(E, doubled, 1)

    def test_wrong_dimension_rejected(self):
        F = make_linf(3)
        E = Subspace(ambient=F, basis=mat([[1], [0], [0]]))
        with pytest.raises(PreconditionError):
            extend_norm(E, make_linf(2), 1)


class TestTrivialCases:
    def test_same_norm_comes_back_equivalent(self):
        F = make_l1(2)
        E = Subspace(ambient=F, basis=mat([[1], [1]]))
        result = extend_norm(E, induced(E), rat(1, 2))
        sub = Subspace(ambient=result, basis=E.basis)
        assert induced(sub) == induced(E)

    def test_full_space_returns_new_norm(self):
        F = make_linf(2)
        E = Subspace(ambient=F, basis=identity(2))
        target = space_from_functionals(mat([["9/8", 0], [0, "9/8"], ["3/4", "3/4"]]))
        ok, _ = is_eps_isometric(
            LinearMap(domain=F, codomain=target, matrix=identity(2)), 1, strict=True)
        assert ok
        result = extend_norm(E, target, 1)
        assert result == target


class TestRandomInstances:
    def test_extension_and_equivalence_hold(self):
        rng = random.Random(41)
        done = 0
        while done < 10:
            dim = rng.choice([2, 3])
            F = make_linf(dim) if rng.random() < 0.5 else make_l1(dim)
            k = rng.randint(1, dim - 1)
            cols = [[rat(rng.choice([-1, 0, 1])) for _ in range(k)] for _ in range(dim)]
            try:
                E = Subspace(ambient=F, basis=mat(cols))
            except Exception:
                continue
            base = induced(E)
            # gently perturbed renorming: scale every functional by 10/9
            new_fs = [vec([rat(10, 9) * x for x in phi]) for phi in base.functionals]
            new_norm = space_from_functionals(mat(new_fs))
            eps = rat(1, 4)
            ok, _ = is_eps_isometric(
                LinearMap(domain=base, codomain=new_norm, matrix=identity(k)), eps, strict=True)
            if not ok:
                continue
            result = extend_norm(E, new_norm, eps)
            sub = Subspace(ambient=result, basis=E.basis)
            assert induced(sub) == new_norm
            for u in new_norm.vertices:
                assert norm(result, matvec(E.basis, u)) == rat(1)
            ok2, _ = is_eps_isometric(
                LinearMap(domain=F, codomain=result, matrix=identity(dim)), eps)
            assert ok2
            done += 1
