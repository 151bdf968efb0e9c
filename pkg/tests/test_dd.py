import itertools
import random

import pytest

from polyban.caps import Caps, set_caps
from polyban.dd import ball_facets, ball_vertices, cone_extreme_rays, general_polytope_vertices
from polyban.errors import DegeneracyError, InputError, ResourceCapError
from polyban.linalg import dot, mat, vec
from polyban.rationals import rat

from oracles import brute_force_ball_vertices, brute_force_vertices, hull_contains, norm_by_functionals


class TestCone:
    def test_quadrant(self):
        rays = cone_extreme_rays(mat([[-1, 0], [0, -1]]))
        assert set(rays) == {vec([1, 0]), vec([0, 1])}

    def test_halfline(self):
        # x <= 0 and x + 2y = 0: the ray through (-2, 1)
        rays = cone_extreme_rays(mat([[1, 0], [1, 2], [-1, -2]]))
        assert set(rays) == {vec([-2, 1])}

    def test_forced_origin(self):
        # x <= 0, y <= 0, x + 2y >= 0 meet only at the origin
        rays = cone_extreme_rays(mat([[1, 0], [0, 1], [1, 1], [-1, -2]]))
        assert rays == ()

    def test_point_cone(self):
        rays = cone_extreme_rays(mat([[1, 0], [-1, 0], [0, 1], [0, -1]]))
        assert rays == ()

    def test_line_rejected(self):
        with pytest.raises(DegeneracyError):
            cone_extreme_rays(mat([[1, 0]]))

    def test_rays_are_primitive(self):
        rays = cone_extreme_rays(mat([["-1/2", 0, 0], [0, "-2/3", 0], [0, 0, -5], [1, 1, 1]]))
        for r in rays:
            assert all(x.denominator == 1 for x in r)


class TestBallVertices:
    def test_cube(self):
        verts = ball_vertices(mat([[1, 0], [0, 1]]))
        assert verts == tuple(sorted([vec([-1, -1]), vec([-1, 1]), vec([1, -1]), vec([1, 1])]))

    def test_cross_polytope(self):
        # l1 ball of R^2: functionals x+y, x-y
        verts = ball_vertices(mat([[1, 1], [1, -1]]))
        assert set(verts) == {vec([1, 0]), vec([-1, 0]), vec([0, 1]), vec([0, -1])}

    def test_hexagon(self):
        verts = ball_vertices(mat([[1, 0], [0, 1], [1, 1]]))
        assert len(verts) == 6
        assert verts == brute_force_ball_vertices(mat([[1, 0], [0, 1], [1, 1]]))

    def test_scaled_ball(self):
        # functional 2x pins the segment [-1/2, 1/2]
        assert ball_vertices(mat([[2]])) == (vec(["-1/2"]), vec(["1/2"]))

    def test_nonspanning_rejected(self):
        with pytest.raises(DegeneracyError):
            ball_vertices(mat([[1, 0]]))

    def test_zero_functional_rejected(self):
        with pytest.raises(InputError):
            ball_vertices(mat([[1, 0], [0, 0], [0, 1]]))

    def test_matches_brute_force_3d(self):
        fs = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, -1, 0]])
        assert ball_vertices(fs) == brute_force_ball_vertices(fs)


class TestBallFacets:
    def test_cross_polytope_facets(self):
        facets = ball_facets(mat([[1, 0], [0, 1]]))
        assert set(facets) == {vec([1, 1]), vec([1, -1]), vec([-1, 1]), vec([-1, -1])}

    def test_cube_facets(self):
        facets = ball_facets(mat([[1, 1], [1, -1]]))
        assert set(facets) == {vec([1, 0]), vec([-1, 0]), vec([0, 1]), vec([0, -1])}

    def test_polarity_roundtrip(self):
        fs = mat([[1, 0], [0, 1], [1, 1]])
        verts = ball_vertices(fs)
        facets = ball_facets(verts)
        # facet functionals recover the same body: same vertex set again
        assert ball_vertices(facets) == verts

    def test_nonspanning_rejected(self):
        with pytest.raises(DegeneracyError):
            ball_facets(mat([[1, 0], [-1, 0]]))


class TestGeneralPolytope:
    def test_simplex(self):
        rows = mat([[-1, 0], [0, -1], [1, 1]])
        rhs = vec([0, 0, 1])
        verts = general_polytope_vertices(rows, rhs)
        assert set(verts) == {vec([0, 0]), vec([1, 0]), vec([0, 1])}

    def test_empty(self):
        assert general_polytope_vertices(mat([[1], [-1]]), vec([-1, 0])) == ()

    def test_unbounded_rejected(self):
        with pytest.raises(DegeneracyError):
            general_polytope_vertices(mat([[-1, 0], [0, -1]]), vec([0, 0]))

    def test_matches_brute_force(self):
        rows = mat([[1, 2], [-1, 1], [0, -1], [2, -1], [-3, -1]])
        rhs = vec([4, 2, 1, 6, 3])
        assert general_polytope_vertices(rows, rhs) == brute_force_vertices(rows, rhs)


class TestRandomizedAgainstOracle:
    def test_random_symmetric_balls(self):
        rng = random.Random(7)
        pool = [rat(a, b) for a in range(-3, 4) for b in (1, 2, 3)]
        for trial in range(60):
            dim = rng.choice([1, 2, 3])
            nfun = rng.randint(dim, dim + 3)
            fs = []
            for _ in range(nfun):
                row = vec([rng.choice(pool) for _ in range(dim)])
                if any(x != 0 for x in row):
                    fs.append(row)
            if not fs:
                continue
            fs = mat(fs)
            try:
                verts = ball_vertices(fs)
            except DegeneracyError:
                continue
            assert verts == brute_force_ball_vertices(fs), f"trial {trial}: {fs}"

    def test_vertices_have_norm_one_and_carry_the_ball(self):
        fs = mat([[1, 0, 0], [0, 2, 0], [0, 0, 1], [1, 1, 1]])
        verts = ball_vertices(fs)
        for v in verts:
            assert norm_by_functionals(fs, v) == rat(1)
        # interior grid points of the ball lie in the hull of the vertices
        for x in itertools.product((rat(-1, 2), rat(0), rat(1, 2)), repeat=3):
            if norm_by_functionals(fs, x) <= 1:
                assert hull_contains(verts, vec(x), symmetric=True)


class TestCapEnforcement:
    def test_vertex_cap_trips(self):
        previous = set_caps(Caps(dim_cap=6, vertex_cap=5))
        try:
            with pytest.raises(ResourceCapError) as exc:
                ball_vertices(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
            assert exc.value.payload()["cap"] == "vertices"
        finally:
            set_caps(previous)
