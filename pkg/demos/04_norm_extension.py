"""Extend a renorming of a subspace to the whole space, exactly.

Start from a subspace E of F with a new norm that is strictly
eps-equivalent to the induced one. The extension renorms all of F so that
it restricts to the new norm on E exactly while staying eps-close to the
original norm of F. Operators into sup-norm spaces extend too, with the
operator norm preserved on the nose.
"""

from polyban import (
    LinearMap,
    Subspace,
    extend_into_linf,
    extend_norm,
    format_rational,
    induced,
    is_eps_isometric,
    make_linf,
    operator_norm,
    rat,
    space_from_functionals,
)
from polyban.linalg import identity, mat, matvec


def main():
    F = make_linf(2)
    E = Subspace(ambient=F, basis=mat([[1], [0]]))
    print("induced norm on the first axis:", [
        [format_rational(x) for x in phi] for phi in induced(E).functionals])

    # renorm the axis by 5/4 |t|; strictly inside the eps = 1/2 band
    target = space_from_functionals(mat([["5/4"]]))
    result = extend_norm(E, target, rat(1, 2))
    print("extended norm functionals:", [
        [format_rational(x) for x in phi] for phi in result.functionals])
    print("restriction is exact:",
          induced(Subspace(ambient=result, basis=E.basis)) == target)
    ok, _ = is_eps_isometric(
        LinearMap(domain=F, codomain=result, matrix=identity(2)), rat(1, 2))
    print("whole space moved by at most eps:", ok)

    # norm-preserving operator extension off the subspace
    T = LinearMap(domain=induced(E), codomain=make_linf(1), matrix=mat([["3/4"]]))
    ext = extend_into_linf(T, E)
    print("extended operator matrix:",
          [[format_rational(x) for x in row] for row in ext.matrix])
    print("operator norm preserved:",
          operator_norm(ext) == operator_norm(T))

    x = [rat(1), rat(1)]
    print("extended operator at the corner (1,1):",
          [format_rational(v) for v in matvec(ext.matrix, x)])


if __name__ == "__main__":
    main()
