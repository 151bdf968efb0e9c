"""Build a few polyhedral normed spaces and look at their unit balls.

Every number here is an exact rational. Norms are maxima of finitely many
functionals, so unit balls are symmetric polytopes and everything about
them (vertices, facets, duality) can be computed without rounding.
"""

from polyban import (
    dual,
    format_rational,
    make_l1,
    make_linf,
    norm,
    rat,
    space_from_functionals,
)
from polyban.linalg import vec


def show(name, space):
    print(f"{name}: dim {space.dim}")
    print("  functionals:", [[format_rational(x) for x in phi] for phi in space.functionals])
    print("  ball vertices:", [[format_rational(x) for x in v] for v in space.vertices])


def main():
    cube = make_linf(2)
    diamond = make_l1(2)
    show("sup-norm plane", cube)
    show("sum-norm plane", diamond)

    # duality swaps the two: the polar of the square is the diamond
    print("dual of sup-norm == sum-norm:", dual(cube) == diamond)

    hexagon = space_from_functionals([[1, 0], [0, 1], [1, 1]])
    show("hexagonal norm", hexagon)
    x = vec([rat(1, 2), rat(-3, 4)])
    print("norm of (1/2, -3/4) in the hexagon:", format_rational(norm(hexagon, x)))


if __name__ == "__main__":
    main()
