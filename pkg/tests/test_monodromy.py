"""Indicial exponents and the characteristic polynomial of the monodromy at 0."""

from fractions import Fraction

from stokeslab.monodromy import (indicial_exponents, monodromy_char_poly,
                                 monodromy_determinant)
from stokeslab.qde import QdeProblem


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_exponents_projective():
    assert indicial_exponents(QdeProblem.projective(4)) == [0, 0, 0, 0]


def test_exponents_weighted():
    got = indicial_exponents(QdeProblem.weighted((1, 2, 4)))
    assert got == sorted([0, 0, Fraction(1, 2), 0, Fraction(1, 4),
                          Fraction(1, 2), Fraction(3, 4)])


def test_exponents_hypersurface():
    assert indicial_exponents(QdeProblem.hypersurface(2, 3)) == [0, 0, 0, 0]


def test_char_poly_projective_3():
    assert monodromy_char_poly(QdeProblem.projective(3)) == [-1, 3, -3, 1]


def test_char_poly_weighted_is_product_of_cyclic_factors():
    got = monodromy_char_poly(QdeProblem.weighted((1, 2, 4)))
    expected = [1]
    for w in (1, 2, 4):
        factor = [-1] + [0] * (w - 1) + [1]   # lambda^w - 1
        expected = poly_mul(expected, factor)
    assert got == expected == [-1, 1, 1, -1, 1, -1, -1, 1]


def test_char_poly_hypersurface_4_3():
    # (lambda - 1)^6
    assert monodromy_char_poly(QdeProblem.hypersurface(4, 3)) == \
        [1, -6, 15, -20, 15, -6, 1]


def test_determinants():
    assert monodromy_determinant(QdeProblem.projective(3)) == 1
    assert monodromy_determinant(QdeProblem.projective(4)) == 1
    assert monodromy_determinant(QdeProblem.weighted((1, 2, 4))) == 1
    # exponent sum 1/2 makes the determinant -1
    assert monodromy_determinant(QdeProblem.weighted((1, 2))) == -1
    assert monodromy_determinant(QdeProblem.hypersurface(2, 3)) == 1
