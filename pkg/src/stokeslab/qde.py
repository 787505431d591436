"""Quantum differential operators for projective spaces, weighted projective
spaces and Fano hypersurfaces: eigenvalue data at infinity, singular
directions, formal monodromy and symbolic Stokes-matrix supports.

Conventions (fixed throughout the package):
- delta = z d/dz, operators are
    projective n:        delta^n - z
    weighted (w_0..w_r): prod_j delta(delta - 1/w_j)...(delta - (w_j-1)/w_j) - z
    hypersurface (n,m):  delta^(n+m-1) - m^m z (delta + (m-1)/m)...(delta + 1/m)
- The nonzero eigenvalues at z=infinity are q_j = c * zeta_R^j * z^(1/R),
  j = 0..R-1, with R the ramification; the hypersurface operator also has the
  eigenvalue 0 with multiplicity m-1 (basis vectors f_1..f_(m-1) sitting at
  matrix indices R..R+m-2).
- A difference q_k - q_l singular at direction d contributes the entry
  x_{l,k} E_{l,k} (the map V_{q_k} -> V_{q_l}) to the Stokes matrix at d, where
  E_{a,b} e_b = e_a. The maps into and out of the zero block contribute
  Y(j) E_{R-1+j, k} and Z(j) E_{k, R-1+j}.
- Directions of a pair, exact and mod R:
    k > l:    d = R/4 - (k+l)/2
    l > k:    d = 3R/4 - (k+l)/2
    q_k -> 0: d = R/2 - k
    0 -> q_k: d = -k
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import Cyclotomic
from .symbolic import SymExpr, SymMatrix, X, Y, Z

# sentinel for the unramified (eigenvalue zero) block in direction pairs
ZERO = None


@dataclass(frozen=True)
class QdeProblem:
    family: str
    n: int = 0
    m: int = 1
    weights: tuple[int, ...] = ()

    @staticmethod
    def projective(n: int) -> "QdeProblem":
        if n < 2:
            raise ValueError("projective space needs n >= 2")
        return QdeProblem("projective", n=n)

    @staticmethod
    def weighted(weights) -> "QdeProblem":
        ws = tuple(int(w) for w in weights)
        if not ws or any(w < 1 for w in ws):
            raise ValueError("weights must be positive integers")
        g = 0
        for w in ws:
            g = gcd(g, w)
        if g != 1:
            raise ValueError("weights must have gcd 1")
        return QdeProblem("weighted", weights=ws)

    @staticmethod
    def hypersurface(n: int, m: int) -> "QdeProblem":
        if n < 1:
            raise ValueError("hypersurface needs n >= 1")
        if m < 2:
            raise ValueError("hypersurface needs degree m >= 2")
        return QdeProblem("hypersurface", n=n, m=m)

    @property
    def ramification(self) -> int:
        if self.family == "weighted":
            return sum(self.weights)
        return self.n

    @property
    def dimension(self) -> int:
        if self.family == "hypersurface":
            return self.n + self.m - 1
        return self.ramification

    @property
    def field_order(self) -> int:
        """Order of the cyclotomic field the Stokes data lives in."""
        return self.m if self.family == "hypersurface" else 1

    @property
    def zero_multiplicity(self) -> int:
        return self.m - 1 if self.family == "hypersurface" else 0

    def describe(self) -> str:
        if self.family == "projective":
            return f"projective n={self.n}"
        if self.family == "weighted":
            return f"weighted ({','.join(str(w) for w in self.weights)})"
        return f"hypersurface n={self.n} m={self.m}"


@dataclass(frozen=True)
class EigenvalueSet:
    """q_j = scale_base^(1/scale_root) * zeta_ram^j * z^(1/ram), plus a zero block."""
    ram: int
    zero_multiplicity: int
    scale_base: int
    scale_root: int


def eigenvalues(problem: QdeProblem) -> EigenvalueSet:
    if problem.family == "hypersurface":
        return EigenvalueSet(problem.ramification, problem.m - 1,
                             problem.m ** problem.m, problem.n)
    return EigenvalueSet(problem.ramification, 0, 1, 1)


@dataclass(frozen=True)
class Direction:
    value: Fraction
    pairs: tuple  # of (source, target), entries are ramified indices or ZERO


def _pair_direction(problem: QdeProblem, src, dst) -> Fraction:
    """Canonical singular direction of the pair, reduced mod R into [0, R)."""
    R = problem.ramification
    if src is ZERO:
        d = Fraction(-dst)
    elif dst is ZERO:
        d = Fraction(R, 2) - src
    elif src > dst:
        d = Fraction(R, 4) - Fraction(src + dst, 2)
    else:
        d = Fraction(3 * R, 4) - Fraction(src + dst, 2)
    return d % R


def _all_pairs(problem: QdeProblem):
    R = problem.ramification
    for k in range(R):
        for l in range(R):
            if k != l:
                yield (k, l)
    if problem.zero_multiplicity:
        for k in range(R):
            yield (k, ZERO)
            yield (ZERO, k)


def _pair_sort_key(pair):
    src, dst = pair
    return (-1 if src is ZERO else src, -1 if dst is ZERO else dst)


def singular_directions(problem: QdeProblem) -> list[Direction]:
    """Directions in [0, 1) carrying at least one singular pair, ascending."""
    buckets: dict[Fraction, list] = {}
    for src, dst in _all_pairs(problem):
        d = _pair_direction(problem, src, dst)
        if 0 <= d < 1:
            buckets.setdefault(d, []).append((src, dst))
    out = []
    for d in sorted(buckets):
        out.append(Direction(d, tuple(sorted(buckets[d], key=_pair_sort_key))))
    return out


@dataclass(frozen=True)
class FormalMonodromy:
    wrap: int
    matrix: SymMatrix = field(compare=False)


def formal_monodromy(problem: QdeProblem) -> FormalMonodromy:
    """gamma: e_j -> e_{j+1} cyclically with a wrap sign on e_{R-1} -> e_0,
    and gamma f_j = zeta_m^j f_j on the zero block.

    The wrap sign is fixed by det(gamma) = det(monodromy at 0)
    = e^(2 pi i sum(indicial exponents)), which gives
    wrap = det(mon_0) * (-1)^(R-1) * (-1)^(m-1).
    """
    R = problem.ramification
    m = problem.m if problem.family == "hypersurface" else 1
    if problem.family == "weighted":
        exponent_sum_doubled = sum(w - 1 for w in problem.weights)
    else:
        exponent_sum_doubled = 0
    det_mon0 = -1 if exponent_sum_doubled % 2 else 1
    wrap = det_mon0 * (-1) ** (R - 1) * (-1) ** (m - 1)

    N = problem.dimension
    entries: dict[tuple[int, int], SymExpr] = {}
    for j in range(R - 1):
        entries[(j + 1, j)] = SymExpr.constant(1)
    entries[(0, R - 1)] = SymExpr.constant(wrap)
    for j in range(1, m):
        entries[(R - 1 + j, R - 1 + j)] = SymExpr.constant(Cyclotomic.zeta(m, j))
    return FormalMonodromy(wrap, SymMatrix(N, entries))


def formal_monodromy_inverse(problem: QdeProblem) -> SymMatrix:
    """gamma^(-1), built directly: the reverse cycle with the same wrap sign
    (wrap is +-1) and zeta_m^(-j) on the zero block."""
    fm = formal_monodromy(problem)
    R = problem.ramification
    m = problem.m if problem.family == "hypersurface" else 1
    N = problem.dimension
    entries: dict[tuple[int, int], SymExpr] = {}
    for j in range(R - 1):
        entries[(j, j + 1)] = SymExpr.constant(1)
    entries[(R - 1, 0)] = SymExpr.constant(fm.wrap)
    for j in range(1, m):
        entries[(R - 1 + j, R - 1 + j)] = SymExpr.constant(Cyclotomic.zeta(m, -j))
    return SymMatrix(N, entries)


def stokes_support(problem: QdeProblem, direction: Fraction) -> SymMatrix:
    """Identity plus one unknown per pair singular at the given direction.

    The direction is compared mod R, so shifted windows give structurally
    correct supports too (the unknown at a position always belongs to the
    unique pair singular there).
    """
    R = problem.ramification
    d = Fraction(direction) % R
    N = problem.dimension
    mat = SymMatrix.identity(N)
    for src, dst in _all_pairs(problem):
        if _pair_direction(problem, src, dst) != d:
            continue
        if src is ZERO:
            for j in range(1, problem.m):
                mat.entries[(dst, R - 1 + j)] = SymExpr.unknown(Z(j))
        elif dst is ZERO:
            for j in range(1, problem.m):
                mat.entries[(R - 1 + j, src)] = SymExpr.unknown(Y(j))
        else:
            mat.entries[(dst, src)] = SymExpr.unknown(X(dst, src))
    return mat
