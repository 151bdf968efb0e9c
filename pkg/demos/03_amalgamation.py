"""Glue two spaces along a common subspace and factor maps through the glue.

Given an isometric inclusion i: Z -> X and an eps-isometric map f: Z -> Y,
the amalgam W receives both X and Y so that the square commutes exactly,
the Y-leg is isometric, and the X-leg distorts by at most eps. Any
compatible pair of maps out of X and Y factors uniquely through W without
norm inflation.
"""

from polyban import (
    LinearMap,
    distortion,
    format_rational,
    make_l1,
    make_linf,
    mediate,
    norm,
    operator_norm,
    pushout,
    rat,
)
from polyban.linalg import mat, matmul


def main():
    # Z = the line, included as the first axis of the sup-norm plane,
    # and flipped into the sum-norm plane
    Z = make_linf(1)
    X = make_linf(2)
    Y = make_l1(2)
    i = LinearMap(domain=Z, codomain=X, matrix=mat([[1], [0]]))
    f = LinearMap(domain=Z, codomain=Y, matrix=mat([[-1], [0]]))
    eps = rat(1, 2)

    p = pushout(i, f, eps)
    print("amalgam dimension:", p.W.dim)
    print("square commutes exactly:",
          matmul(p.g.matrix, p.i.matrix) == matmul(p.j.matrix, p.f.matrix))
    print("Y-leg eps*:", format_rational(distortion(p.j).eps_star))
    print("X-leg eps*:", format_rational(distortion(p.g).eps_star),
          "(allowed up to", format_rational(eps), ")")

    for v in X.vertices:
        val = norm(p.W, [sum(row[k] * v[k] for k in range(len(v))) for row in p.g.matrix])
        print("  |g(corner)| =", format_rational(val))

    # universal property: q o g and q o j glue back to q itself
    V = make_linf(1)
    q = LinearMap(domain=p.W, codomain=V,
                  matrix=mat([[rat(1, 2)] * p.W.dim]))
    T = LinearMap(domain=X, codomain=V, matrix=matmul(q.matrix, p.g.matrix))
    S = LinearMap(domain=Y, codomain=V, matrix=matmul(q.matrix, p.j.matrix))
    h = mediate(p, T, S)
    print("mediating map recovers both legs:",
          matmul(h.matrix, p.g.matrix) == T.matrix
          and matmul(h.matrix, p.j.matrix) == S.matrix)
    print("norm of mediator:", format_rational(operator_norm(h)),
          "<= max of legs:",
          format_rational(max(operator_norm(T), operator_norm(S))))


if __name__ == "__main__":
    main()
