"""Local monodromy at z = 0: indicial exponents and the characteristic
polynomial of the topological monodromy.

The indicial polynomial is the z^0 part of the operator written in
delta = z d/dz; its roots (the indicial exponents) are rational here, and the
monodromy eigenvalues are e^(2 pi i rho) over the exponents rho.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RootOfUnity, root_of_unity_char_poly
from .qde import QdeProblem


def _indicial_roots(problem: QdeProblem) -> list[Fraction]:
    if problem.family == "projective":
        return [Fraction(0)] * problem.n
    if problem.family == "hypersurface":
        return [Fraction(0)] * problem.dimension
    roots: list[Fraction] = []
    for w in problem.weights:
        roots.extend(Fraction(i, w) for i in range(w))
    return roots


def _indicial_symbol(problem: QdeProblem):
    """The z^0 delta-symbol as a callable, a product of linear factors."""
    roots = _indicial_roots(problem)

    def symbol(delta: Fraction) -> Fraction:
        acc = Fraction(1)
        for r in roots:
            acc *= delta - r
        return acc

    return symbol


def indicial_exponents(problem: QdeProblem) -> list[Fraction]:
    """Sorted multiset of indicial exponents; each is checked to be an
    actual root of the z^0 delta-symbol before being returned."""
    roots = sorted(_indicial_roots(problem))
    symbol = _indicial_symbol(problem)
    for rho in set(roots):
        if symbol(rho) != 0:
            raise ArithmeticError(f"claimed exponent {rho} is not an indicial root")
    return roots


def monodromy_char_poly(problem: QdeProblem) -> list[int]:
    """Coefficients (ascending) of the characteristic polynomial of the
    monodromy at 0, prod (lambda - e^(2 pi i rho)) over the exponents."""
    roots = [RootOfUnity.from_exponent_fraction(rho) for rho in indicial_exponents(problem)]
    return root_of_unity_char_poly(roots)


def monodromy_determinant(problem: QdeProblem) -> int:
    """det(mon_0) = (+-1), read off the constant coefficient: for a monic
    P(lambda) = prod(lambda - r), det = prod r = (-1)^N P(0)."""
    coeffs = monodromy_char_poly(problem)
    n = len(coeffs) - 1
    det = (-1) ** n * coeffs[0]
    if det not in (1, -1):
        raise ArithmeticError(f"monodromy determinant {det} is not a unit")
    return det
