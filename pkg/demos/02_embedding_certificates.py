"""Certify how far a linear map is from being an isometry.

The distortion report gives the exact smallest eps for which the map is
an eps-isometric embedding, together with rational witness vectors where
the norm is stretched or compressed the most.
"""

from polyban import (
    LinearMap,
    distortion,
    format_rational,
    is_eps_isometric,
    linf_embedding,
    make_l1,
    make_linf,
    rat,
    space_from_functionals,
)
from polyban.linalg import mat


def main():
    diamond = make_l1(2)
    square = make_linf(2)

    ident = LinearMap(domain=diamond, codomain=square, matrix=mat([[1, 0], [0, 1]]))
    rep = distortion(ident)
    print("identity from sum-norm to sup-norm:")
    print("  exact smallest eps:", format_rational(rep.eps_star))
    ok, _ = is_eps_isometric(ident, 1)
    print("  1-isometric?", ok)
    ok, _ = is_eps_isometric(ident, rat(1, 2))
    print("  1/2-isometric?", ok)

    # the rotated inclusion t |-> (t, t)/1 is exactly isometric
    rot = LinearMap(domain=make_linf(1), codomain=diamond,
                    matrix=mat([["1/2"], ["1/2"]]))
    print("half-diagonal into the diamond, eps*:",
          format_rational(distortion(rot).eps_star))

    # every polyhedral space embeds isometrically into sup-norm coordinates
    hexagon = space_from_functionals([[1, 0], [0, 1], [1, 1]])
    emb = linf_embedding(hexagon)
    print("hexagon embeds into sup-norm of dim", emb.codomain.dim,
          "with eps* =", format_rational(distortion(emb).eps_star))


if __name__ == "__main__":
    main()
