"""End-to-end solver runs against frozen values, and the identity-side
computations showing why a few published table entries cannot be matched.

Every number asserted here was produced by the solver and then re-checked by
hand against the characteristic-polynomial equations, so these tests protect
the whole pipeline: supports, formal monodromy, char poly, elimination,
conjugation extension.
"""

from fractions import Fraction

import pytest

from stokeslab.exact import Cyclotomic
from stokeslab.qde import QdeProblem, formal_monodromy, stokes_support
from stokeslab.solver import (InconsistentSystem, StokesData, StuckSystem,
                              build_system, extend_all, solve, verify)
from stokeslab.symbolic import (DimensionLimitError, SymExpr, X, Y, Z,
                                char_poly)


def rat(v):
    return Cyclotomic.rational(v)


def solved(problem):
    system = build_system(problem)
    return system, solve(system)


# Window tables for the projective family, copied from solver output and
# checked once against the coefficient equations by hand. Keys are (l, k).
PROJECTIVE_WINDOWS = {
    2: {(0, 1): 2},
    3: {(0, 1): 3, (2, 1): -3},
    4: {(0, 1): 4, (0, 2): -6, (3, 2): -4},
    5: {(0, 1): 5, (0, 2): -10, (4, 2): 10, (4, 3): -5},
    6: {(0, 2): -15, (0, 3): 20, (1, 2): 6, (5, 3): 15, (5, 4): -6},
    7: {(0, 2): -21, (0, 3): 35, (1, 2): 7,
        (5, 4): -7, (6, 3): -35, (6, 4): 21},
    8: {(0, 3): 56, (0, 4): -70, (1, 2): 8, (1, 3): -28,
        (6, 5): -8, (7, 4): -56, (7, 5): 28},
    9: {(0, 3): 84, (0, 4): -126, (1, 2): 9, (1, 3): -36,
        (7, 5): 36, (7, 6): -9, (8, 4): 126, (8, 5): -84},
}


@pytest.mark.parametrize("n", sorted(PROJECTIVE_WINDOWS))
def test_projective_window_tables(n):
    _, data = solved(QdeProblem.projective(n))
    assert data.window == {p: rat(v) for p, v in PROJECTIVE_WINDOWS[n].items()}


@pytest.mark.parametrize("n", range(2, 10))
def test_projective_full_table(n):
    # after conjugation the table covers every ordered pair, and the first
    # row carries the signed binomial coefficients
    _, data = solved(QdeProblem.projective(n))
    assert len(data.x) == n * (n - 1)
    for k in range(1, n):
        assert data.x[(0, k)] == rat((-1) ** (k + 1) * _comb(n, k))


def _comb(n, k):
    from math import comb
    return comb(n, k)


@pytest.mark.parametrize("n", (4, 7))
def test_projective_table_is_sign_uniform(n):
    # both triangles follow one sign rule, with no large-difference flip:
    #   l < k: -(-1)^(k-l) C(n, k-l),   l > k: (-1)^(l-k) C(n, l-k)
    _, data = solved(QdeProblem.projective(n))
    for (l, k), v in data.x.items():
        if l < k:
            assert v == rat(-((-1) ** (k - l)) * _comb(n, k - l)), (l, k)
        else:
            assert v == rat((-1) ** (l - k) * _comb(n, l - k)), (l, k)


def test_projective_4_shifted_window_forces_the_unflipped_sign():
    """The only contested projective pair at n = 4 is (0, 3).

    The window [3, 4) puts x[0,3] into the product directly, next to the two
    undisputed values x[1,2] = 4 and x[1,3] = -6. The characteristic
    polynomial of gamma * St_{7/2} * St_3 must equal (lambda - 1)^4; that
    pins x[0,3] = +4, while -4 breaks the lambda^1 coefficient.
    """
    p = QdeProblem.projective(4)
    gamma = formal_monodromy(p).matrix
    M = gamma * stokes_support(p, Fraction(7, 2)) * stokes_support(p, Fraction(3))
    poly = char_poly(M)
    unknowns = sorted({u for i in range(5) for u in poly.coeff(i).unknowns()})
    assert unknowns == [X(0, 3), X(1, 2), X(1, 3)]

    uniform = {X(1, 2): rat(4), X(1, 3): rat(-6), X(0, 3): rat(4)}
    coeffs = [poly.coeff(i).substitute(uniform).constant_value() for i in range(5)]
    assert coeffs == [rat(1), rat(-4), rat(6), rat(-4), rat(1)]

    flipped = dict(uniform)
    flipped[X(0, 3)] = rat(-4)
    coeffs = [poly.coeff(i).substitute(flipped).constant_value() for i in range(5)]
    assert coeffs == [rat(1), rat(4), rat(6), rat(-4), rat(1)]


def test_verify_reports_the_flip_pairs():
    system, data = solved(QdeProblem.projective(4))
    report = verify(system, data)
    assert report["resubstitution"] is True
    assert report["closed_form"]["checked"] == 12
    assert [m["pair"] for m in report["closed_form"]["mismatches"]] == [(0, 3)]
    assert report["ok"] is False

    system, data = solved(QdeProblem.projective(6))
    report = verify(system, data)
    pairs = [m["pair"] for m in report["closed_form"]["mismatches"]]
    assert pairs == [(0, 4), (0, 5), (1, 5)]

    system, data = solved(QdeProblem.projective(3))
    assert verify(system, data)["ok"] is True


def test_weighted_124():
    system, data = solved(QdeProblem.weighted((1, 2, 4)))
    assert data.window == {
        (0, 2): rat(1), (0, 3): rat(-1), (1, 2): rat(1),
        (5, 4): rat(-1), (6, 3): rat(1), (6, 4): rat(-1),
    }
    assert len(data.x) == 42
    assert [data.x[(0, k)] for k in range(1, 7)] == [
        rat(1), rat(1), rat(-1), rat(1), rat(-1), rat(-1)]
    # (lambda - 1)(lambda^2 - 1)(lambda^4 - 1), ascending
    assert system.target == [-1, 1, 1, -1, 1, -1, -1, 1]
    report = verify(system, data)
    assert report["integrality"] is True and report["ok"] is True


def test_weighted_12():
    system, data = solved(QdeProblem.weighted((1, 2)))
    assert system.target == [1, -1, -1, 1]
    assert system.sigma == -1
    assert data.x == {(0, 1): rat(1), (0, 2): rat(1), (1, 0): rat(-1),
                      (1, 2): rat(1), (2, 0): rat(-1), (2, 1): rat(-1)}
    assert verify(system, data)["ok"] is True


CUBIC_CASES = {
    # n: (x table on ordered pairs, yz as coefficient pairs (a + b*zeta_3))
    1: ({}, {1: (0, -3), 2: (3, 3)}),
    2: ({(0, 1): 5, (1, 0): -5}, {1: (3, 6), 2: (-3, -6)}),
    3: ({(0, 1): 6, (0, 2): -6, (1, 0): -6, (1, 2): 6, (2, 0): 6, (2, 1): -6},
        {1: (0, 9), 2: (-9, -9)}),
    4: ({(0, 1): 7, (0, 2): -21, (0, 3): 7, (1, 0): -7, (1, 2): 7,
         (1, 3): -21, (2, 0): 21, (2, 1): -7, (2, 3): 7, (3, 0): -7,
         (3, 1): 21, (3, 2): -7},
        {1: (-9, -18), 2: (9, 18)}),
}


@pytest.mark.parametrize("n", sorted(CUBIC_CASES))
def test_cubic_hypersurfaces(n):
    zeta = Cyclotomic.zeta(3)
    x_expected, yz_expected = CUBIC_CASES[n]
    system, data = solved(QdeProblem.hypersurface(n, 3))
    assert data.x == {p: rat(v) for p, v in x_expected.items()}
    assert data.yz == {j: a + b * zeta for j, (a, b) in yz_expected.items()}
    assert verify(system, data)["resubstitution"] is True


def test_quadric_hypersurfaces():
    expected = {
        # n: (first row of x, the single yz value)
        2: ([4], 8),
        3: ([5, 5], 16),
        4: ([6, -16, -6], -32),
        5: ([7, -22, -22, 7], -64),
    }
    for n, (row, yz) in expected.items():
        _, data = solved(QdeProblem.hypersurface(n, 2))
        assert [data.x[(0, k)] for k in range(1, n)] == [rat(v) for v in row]
        assert data.yz == {1: rat(yz)}


def test_cubic_yz_products_are_powers_of_three():
    for n in range(1, 5):
        _, data = solved(QdeProblem.hypersurface(n, 3))
        prod = rat(1)
        for j in sorted(data.yz):
            prod = prod * data.yz[j]
        assert prod == rat(3 ** (n + 1)), n


def test_wrap_sign_in_the_extended_table():
    # conjugating past the last eigenvalue crosses the cyclic wrap of the
    # formal monodromy and flips the sign: at (n, m) = (4, 3) the pair (0, 1)
    # carries 7, its wrapped image (3, 0) carries -7, while the unwrapped
    # image (0, 3) keeps +7
    _, data = solved(QdeProblem.hypersurface(4, 3))
    assert data.x[(0, 1)] == rat(7)
    assert data.x[(3, 0)] == rat(-7)
    assert data.x[(0, 3)] == rat(7)


def test_published_cubic_surface_offdiagonal_fails_the_identity():
    """The pair of off-diagonal values 18 - 9z, 27 + 9z sums to 45; the
    lambda^1 coefficient equation forces the sum u + v to cancel, so no
    choice with u + v = 45 can satisfy it. The two lower-degree equations do
    hold, which is why the mistake is easy to miss."""
    system = build_system(QdeProblem.hypersurface(2, 3))
    z = Cyclotomic.zeta(3)
    published = {X(0, 1): rat(5), Y(1): rat(1), Y(2): rat(1),
                 Z(1): 18 - 9 * z, Z(2): 27 + 9 * z}
    residues = {power: (lhs.substitute(published).constant_value(), target)
                for power, lhs, target in system.equations}
    assert residues[3][0] == residues[3][1]
    assert residues[2][0] == residues[2][1]
    got, want = residues[1]
    assert got == rat(41) and want == rat(-4)


def test_swapped_offdiagonal_assignment_fails_the_identity():
    # at (n, m) = (1, 3) swapping the two yz values violates the lambda^2
    # equation; the solver's own assignment satisfies every equation
    system = build_system(QdeProblem.hypersurface(1, 3))
    z = Cyclotomic.zeta(3)
    ones = {Y(1): rat(1), Y(2): rat(1)}

    swapped = {**ones, Z(1): 3 + 3 * z, Z(2): -3 * z}
    bad = [(power, lhs.substitute(swapped).constant_value(), target)
           for power, lhs, target in system.equations
           if lhs.substitute(swapped).constant_value() != target]
    assert [(p, str(g), str(w)) for p, g, w in bad] == [(2, "-6", "3")]

    correct = {**ones, Z(1): -3 * z, Z(2): 3 + 3 * z}
    assert all(lhs.substitute(correct).constant_value() == target
               for _, lhs, target in system.equations)


def test_quadric_fourfold_equation_forces_minus_16():
    # the lambda^3 coefficient at (n, m) = (4, 2) is linear in x[0,1] and
    # x[0,2] alone; with the undisputed x[0,1] = 6 it reads 6 + x = -10
    system = build_system(QdeProblem.hypersurface(4, 2))
    eqs = {power: (lhs, target) for power, lhs, target in system.equations}
    lhs, target = eqs[3]
    assert sorted(lhs.unknowns()) == [X(0, 1), X(0, 2)]
    assert target == rat(-10)
    reduced = lhs.substitute({X(0, 1): rat(6)})
    assert reduced.substitute({X(0, 2): rat(-16)}).constant_value() == target
    assert reduced.substitute({X(0, 2): rat(-15)}).constant_value() != target


def test_gauge_choice_leaves_x_and_yz_fixed():
    system = build_system(QdeProblem.hypersurface(3, 3))
    plain = solve(system)
    gauge = {1: rat(2), 2: rat(Fraction(1, 3))}
    gauged = solve(system, gauge=gauge)
    assert gauged.x == plain.x
    assert gauged.yz == plain.yz
    assert gauged.gauge == gauge
    assert verify(system, gauged)["resubstitution"] is True


def test_zero_gauge_rejected():
    system = build_system(QdeProblem.hypersurface(2, 3))
    with pytest.raises(ValueError):
        solve(system, gauge={1: rat(0), 2: rat(1)})


def test_stuck_system_reports_the_blocking_equations():
    system = build_system(QdeProblem.projective(3))
    system.equations.append(
        (0, SymExpr.unknown(Y(1)) * SymExpr.unknown(Y(2)), rat(6)))
    with pytest.raises(StuckSystem) as info:
        solve(system)
    assert "nonlinear" in str(info.value)
    assert [power for power, _, _ in info.value.equations] == [0]


def test_inconsistent_system():
    system = build_system(QdeProblem.projective(3))
    system.equations.append((0, SymExpr.constant(1), rat(2)))
    with pytest.raises(InconsistentSystem):
        solve(system)


def test_dimension_cap():
    with pytest.raises(DimensionLimitError):
        build_system(QdeProblem.projective(17))


def test_extend_all_matches_solver_table():
    problem = QdeProblem.projective(5)
    system = build_system(problem)
    data = solve(system)
    assert extend_all(problem, data.window) == data.x
