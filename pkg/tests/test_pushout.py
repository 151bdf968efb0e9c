import random

import pytest

from polyban.errors import InputError, PreconditionError
from polyban.linalg import identity, mat, matmul, matvec, vec, zeros_vec
from polyban.maps import (
    LinearMap,
    compose,
    distortion,
    identity_map,
    is_eps_isometric,
    operator_norm,
)
from polyban.pushout import (
    PushoutResult,
    extend_projection,
    l1_sum,
    mediate,
    pushout,
    pushout_from_json,
    pushout_to_json,
)
from polyban.rationals import ONE, rat
from polyban.spaces import Subspace, induced, make_l1, make_linf, norm, space_from_functionals

from generators import random_pushout_instance, random_space
from oracles import quotient_norm_lp


def line_in(X, col):
    sub = Subspace(ambient=X, basis=mat([[c] for c in col]))
    Z = induced(sub)
    return Z, LinearMap(domain=Z, codomain=X, matrix=sub.basis)


class TestL1Sum:
    def test_two_lines_make_the_diamond(self):
        p = l1_sum(make_linf(1), make_linf(1))
        assert p.W == make_l1(2)

    def test_sum_norm_is_additive(self):
        p = l1_sum(make_linf(2), make_l1(2))
        x, y = vec([1, "1/2"]), vec(["1/3", "1/3"])
        assert norm(p.W, x + y) == norm(make_linf(2), x) + norm(make_l1(2), y)

    def test_legs_are_isometric_injections(self):
        p = l1_sum(make_l1(2), make_linf(1))
        assert distortion(p.g).eps_star == 0
        assert distortion(p.j).eps_star == 0
        assert p.g.matrix == mat([[1, 0], [0, 1], [0, 0]])


class TestWorkedExample:
    # amalgamate linf(2) and linf(1) over the line spanned by e1
    def setup_method(self):
        X = make_linf(2)
        self.Z, self.i = line_in(X, [1, 0])
        self.f = LinearMap(domain=self.Z, codomain=make_linf(1), matrix=mat([[1]]))
        self.p = pushout(self.i, self.f, 0)

    def test_dimension_and_shape(self):
        assert self.p.W.dim == 2
        assert self.p.W == make_linf(2)
        assert self.p.weight == ONE

    def test_both_legs_exactly_isometric(self):
        assert distortion(self.p.g).eps_star == 0
        assert distortion(self.p.j).eps_star == 0

    def test_square_commutes(self):
        assert matmul(self.p.g.matrix, self.i.matrix) == \
            matmul(self.p.j.matrix, self.f.matrix)

    def test_quotient_norm_matches_lp_oracle(self):
        for x in [vec([1, 0]), vec([0, 1]), vec(["1/2", "-3/4"]), vec([2, 2])]:
            lhs = norm(self.p.W, matvec(self.p.g.matrix, x))
            assert lhs == quotient_norm_lp(self.p, x, zeros_vec(1))

    def test_mixed_class_norm_matches_oracle(self):
        x, y = vec(["2/3", "-1/5"]), vec(["7/4"])
        image = matvec(self.p.quotient, x + y)
        assert norm(self.p.W, image) == quotient_norm_lp(self.p, x, y)


class TestFullOverlap:
    def test_identity_base_gives_copy_of_y(self):
        # Z = X via the identity, f isometric: W is Y in other clothes
        Z = make_l1(2)
        i = identity_map(Z)
        f = LinearMap(domain=Z, codomain=make_linf(2), matrix=mat([[1, 1], [1, -1]]))
        assert distortion(f).eps_star == 0
        p = pushout(i, f, 0)
        assert p.W.dim == 2
        ident = compose(p.j, f)
        assert ident.matrix == p.g.matrix
        assert distortion(p.j).eps_star == 0


class TestWeightedSum:
    def test_expanding_f_keeps_j_isometric(self):
        Z, i = line_in(make_linf(1), [1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([["3/2"]]))
        p = pushout(i, f, "1/2")
        assert p.weight == rat(3, 2)
        assert p.W == make_linf(1)
        assert distortion(p.j).eps_star == 0
        assert p.g.matrix == mat([["3/2"]])
        assert p.checks["g_contractive"] is False
        ok, _ = is_eps_isometric(p.g, rat(1, 2))
        assert ok

    def test_weighted_quotient_norm_matches_oracle(self):
        Z, i = line_in(make_linf(2), [1, 1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([["5/4"]]))
        p = pushout(i, f, "1/2")
        assert p.weight == rat(5, 4)
        for x in [vec([1, 0]), vec(["1/2", "1/3"]), vec([-1, 2])]:
            lhs = norm(p.W, matvec(p.g.matrix, x))
            assert lhs == quotient_norm_lp(p, x, zeros_vec(1))


class TestRelaxedVariant:
    def test_collapsing_f_allowed_with_flag(self):
        Z, i = line_in(make_linf(1), [1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[0]]))
        with pytest.raises(PreconditionError):
            pushout(i, f, 1)
        p = pushout(i, f, 1, relax_min_gain=True)
        assert distortion(p.j).eps_star == 0
        assert p.checks["g_eps_isometric"] is None
        assert p.g.matrix == mat([[0]])

    def test_norm_cap_still_enforced(self):
        Z, i = line_in(make_linf(1), [1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[3]]))
        with pytest.raises(PreconditionError):
            pushout(i, f, 1, relax_min_gain=True)


class TestPreconditions:
    def test_non_isometric_i_rejected(self):
        Z = make_linf(1)
        i = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[2]]))
        f = identity_map(Z)
        with pytest.raises(PreconditionError):
            pushout(i, f, 0)

    def test_understated_eps_rejected(self):
        Z, i = line_in(make_linf(1), [1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([["1/2"]]))
        with pytest.raises(PreconditionError):
            pushout(i, f, "1/4")
        pushout(i, f, 1)

    def test_mismatched_domains_rejected(self):
        Z1, i = line_in(make_linf(1), [1])
        f = identity_map(make_linf(2))
        with pytest.raises(InputError):
            pushout(i, f, 0)


class TestRandomInstances:
    def test_lemma_conclusions_hold_exactly(self):
        rng = random.Random(23)
        for trial in range(24):
            eps = rat([0, "1/4", "1/2", 1][trial % 4])
            i, f = random_pushout_instance(rng, eps)
            p = pushout(i, f, eps)
            assert matmul(p.g.matrix, i.matrix) == matmul(p.j.matrix, f.matrix)
            assert distortion(p.j).eps_star == 0
            gap = distortion(p.g)
            assert gap.op_norm <= ONE
            assert gap.min_gain * (ONE + eps) >= ONE
            if eps == 0:
                assert gap.eps_star == 0

    def test_quotient_norms_match_lp_oracle(self):
        rng = random.Random(29)
        pool = ["-2", "-1", "-1/2", "0", "1/3", "1/2", "1", "2"]
        for trial in range(8):
            eps = rat([0, "1/4", "1/2", 1][trial % 4])
            i, f = random_pushout_instance(rng, eps)
            p = pushout(i, f, eps)
            X = i.codomain
            for _ in range(6):
                x = vec([rat(rng.choice(pool)) for _ in range(X.dim)])
                lhs = norm(p.W, matvec(p.g.matrix, x))
                assert lhs == quotient_norm_lp(p, x, zeros_vec(f.codomain.dim))


class TestMediate:
    def test_block_sum_on_trivial_overlap(self):
        p = l1_sum(make_linf(1), make_linf(1))
        V = make_linf(2)
        T = LinearMap(domain=make_linf(1), codomain=V, matrix=mat([[1], [0]]))
        S = LinearMap(domain=make_linf(1), codomain=V, matrix=mat([["1/2"], ["1/2"]]))
        h = mediate(p, T, S)
        assert matmul(h.matrix, p.g.matrix) == T.matrix
        assert matmul(h.matrix, p.j.matrix) == S.matrix
        assert h.matrix == mat([[1, "1/2"], [0, "1/2"]])

    def test_coordinate_projection_has_norm_one(self):
        # T = 0 makes h the projection of the sum onto its second summand
        Y = make_l1(2)
        p = l1_sum(make_linf(1), Y)
        T = LinearMap(domain=make_linf(1), codomain=Y, matrix=mat([[0], [0]]))
        h = mediate(p, T, identity_map(Y))
        assert matmul(h.matrix, p.j.matrix) == identity(2)
        assert operator_norm(h) == ONE

    def test_legs_mediate_to_identity(self):
        Z, i = line_in(make_linf(2), [1, 0])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[1]]))
        p = pushout(i, f, 0)
        h = mediate(p, p.g, p.j)
        assert h.matrix == identity(p.W.dim)

    def test_incompatible_pair_rejected(self):
        Z, i = line_in(make_linf(2), [1, 0])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[1]]))
        p = pushout(i, f, 0)
        T = identity_map(make_linf(2))
        S = LinearMap(domain=make_linf(1), codomain=make_linf(2), matrix=mat([[0], [0]]))
        with pytest.raises(InputError):
            mediate(p, T, S)

    def test_norm_bound_on_random_compatible_pairs(self):
        rng = random.Random(31)
        done = 0
        while done < 10:
            eps = rat([0, "1/2"][done % 2])
            i, f = random_pushout_instance(rng, eps)
            p = pushout(i, f, eps)
            V = random_space(rng, rng.randint(1, 2))
            # compatible by construction: T and S both factor through W
            M = mat([[rat(rng.randint(-2, 2)) for _ in range(p.W.dim)]
                     for _ in range(V.dim)])
            down = LinearMap(domain=p.W, codomain=V, matrix=M)
            T, S = compose(down, p.g), compose(down, p.j)
            h = mediate(p, T, S)
            assert matmul(h.matrix, p.g.matrix) == T.matrix
            assert matmul(h.matrix, p.j.matrix) == S.matrix
            assert operator_norm(h) <= max(operator_norm(T), operator_norm(S))
            done += 1


class TestExtendProjection:
    def test_worked_example_norm_exactly_one(self):
        X = make_linf(2)
        Z, i = line_in(X, [1, 0])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[1]]))
        p = pushout(i, f, 0)
        P = LinearMap(domain=X, codomain=Z, matrix=mat([[1, 0]]))
        assert operator_norm(P) == ONE
        h = extend_projection(p, P)
        assert matmul(h.matrix, p.j.matrix) == identity(1)
        assert matmul(h.matrix, p.g.matrix) == matmul(f.matrix, P.matrix)
        assert operator_norm(h) == ONE

    def test_full_overlap_gives_the_identification(self):
        Z = make_l1(2)
        i = identity_map(Z)
        f = LinearMap(domain=Z, codomain=make_linf(2), matrix=mat([[1, 1], [1, -1]]))
        p = pushout(i, f, 0)
        h = extend_projection(p, identity_map(Z))
        assert matmul(h.matrix, p.j.matrix) == identity(2)
        assert matmul(p.j.matrix, h.matrix) == identity(p.W.dim)

    def test_non_retraction_rejected(self):
        X = make_linf(2)
        Z, i = line_in(X, [1, 0])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([[1]]))
        p = pushout(i, f, 0)
        bad = LinearMap(domain=X, codomain=Z, matrix=mat([[0, 1]]))
        with pytest.raises(InputError):
            extend_projection(p, bad)

    def test_expanding_f_rejected(self):
        Z, i = line_in(make_linf(1), [1])
        f = LinearMap(domain=Z, codomain=make_linf(1), matrix=mat([["3/2"]]))
        p = pushout(i, f, "1/2")
        P = identity_map(Z)
        with pytest.raises(PreconditionError):
            extend_projection(p, P)


class TestJson:
    def test_roundtrip_rebuilds_equal_amalgam(self):
        Z, i = line_in(make_linf(2), [1, 1])
        f = LinearMap(domain=Z, codomain=make_l1(2), matrix=mat([[1], [0]]))
        assert distortion(f).eps_star == 0
        p = pushout(i, f, "1/4")
        q = pushout_from_json(pushout_to_json(p))
        assert q.W == p.W
        assert q.g.matrix == p.g.matrix
        assert q.j.matrix == p.j.matrix
        assert q.weight == p.weight

    def test_roundtrip_of_trivial_sum(self):
        p = l1_sum(make_linf(1), make_l1(2))
        q = pushout_from_json(pushout_to_json(p))
        assert q.W == p.W and q.quotient == p.quotient
