"""Sparse multivariate polynomials over cyclotomic fields, matrices of them,
and exact characteristic polynomials.

Unknowns are the Stokes entries: X(l, k) for a ramified pair, Y(j) and Z(j)
for the maps into and out of the unramified block. A SymExpr maps monomials
(sorted tuples of unknowns) to Cyclotomic coefficients; a SymMatrix stores
nonzero entries only. char_poly expands det(-lambda*I + A) by Laplace
expansion memoized over column subsets, which is division-free and fast on
the sparse matrices that arise here.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Cyclotomic

MAX_CHAR_POLY_DIM = 16


class Unknown:
    """A named Stokes entry. kind is 'X', 'Y' or 'Z'."""

    __slots__ = ("kind", "a", "b")

    def __init__(self, kind: str, a: int, b: int = -1) -> None:
        self.kind = kind
        self.a = a
        self.b = b

    def key(self) -> tuple:
        return (self.kind, self.a, self.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, Unknown) and self.key() == other.key()

    def __lt__(self, other: "Unknown") -> bool:
        return self.key() < other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        if self.kind == "X":
            return f"x[{self.a},{self.b}]"
        return f"{self.kind.lower()}[{self.a}]"


def X(l: int, k: int) -> Unknown:
    return Unknown("X", l, k)


def Y(j: int) -> Unknown:
    return Unknown("Y", j)


def Z(j: int) -> Unknown:
    return Unknown("Z", j)


def _coerce_coeff(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.rational(value)
    raise TypeError(f"cannot use {value!r} as a coefficient")


class SymExpr:
    """Sparse polynomial: dict from monomial (sorted Unknown tuple) to coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None) -> None:
        self.terms: dict[tuple[Unknown, ...], Cyclotomic] = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_coeff(c)
                if not c.is_zero():
                    self.terms[mono] = c

    @staticmethod
    def constant(value) -> "SymExpr":
        return SymExpr({(): _coerce_coeff(value)})

    @staticmethod
    def unknown(u: Unknown) -> "SymExpr":
        return SymExpr({(u,): Cyclotomic.rational(1)})

    @staticmethod
    def _coerce(value) -> "SymExpr":
        if isinstance(value, SymExpr):
            return value
        if isinstance(value, Unknown):
            return SymExpr.unknown(value)
        return SymExpr.constant(value)

    def __add__(self, other) -> "SymExpr":
        other = SymExpr._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            cur = out.get(mono)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        res = SymExpr()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "SymExpr":
        res = SymExpr()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "SymExpr":
        return self + (-SymExpr._coerce(other))

    def __rsub__(self, other) -> "SymExpr":
        return SymExpr._coerce(other) + (-self)

    def __mul__(self, other) -> "SymExpr":
        other = SymExpr._coerce(other)
        out: dict[tuple[Unknown, ...], Cyclotomic] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                c = c1 * c2
                cur = out.get(mono)
                s = c if cur is None else cur + c
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        res = SymExpr()
        res.terms = out
        return res

    __rmul__ = __mul__

    def substitute(self, bindings: dict[Unknown, Cyclotomic]) -> "SymExpr":
        """Replace bound unknowns by their values; partial binding is fine."""
        out = SymExpr()
        for mono, c in self.terms.items():
            acc = c
            rest: list[Unknown] = []
            for u in mono:
                v = bindings.get(u)
                if v is None:
                    rest.append(u)
                else:
                    acc = acc * v
            out = out + SymExpr({tuple(rest): acc})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Cyclotomic:
        if not self.terms:
            return Cyclotomic.rational(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[()]

    def unknowns(self) -> list[Unknown]:
        seen = set()
        for mono in self.terms:
            seen.update(mono)
        return sorted(seen)

    def __eq__(self, other) -> bool:
        other = SymExpr._coerce(other)
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), tuple(u.key() for u in m))):
            c = self.terms[mono]
            cs = str(c)
            if mono == ():
                parts.append(cs)
                continue
            names = "*".join(repr(u) for u in mono)
            if cs == "1":
                parts.append(names)
            elif cs == "-1":
                parts.append(f"-{names}")
            elif any(ch in cs for ch in "+-") and not cs.lstrip("-").isdigit():
                parts.append(f"({cs})*{names}")
            else:
                parts.append(f"{cs}*{names}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


class SymMatrix:
    """Square matrix with SymExpr entries, zeros omitted."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict | None = None) -> None:
        self.dim = dim
        self.entries: dict[tuple[int, int], SymExpr] = {}
        if entries:
            for (r, c), e in entries.items():
                e = SymExpr._coerce(e)
                if not e.is_zero():
                    self.entries[(r, c)] = e

    @staticmethod
    def identity(dim: int) -> "SymMatrix":
        return SymMatrix(dim, {(i, i): SymExpr.constant(1) for i in range(dim)})

    def get(self, r: int, c: int) -> SymExpr:
        return self.entries.get((r, c), SymExpr())

    def __mul__(self, other: "SymMatrix") -> "SymMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        by_row: dict[int, list[tuple[int, SymExpr]]] = {}
        for (r, c), e in other.entries.items():
            by_row.setdefault(r, []).append((c, e))
        out: dict[tuple[int, int], SymExpr] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, []):
                cur = out.get((r, c))
                p = a * b
                out[(r, c)] = p if cur is None else cur + p
        res = SymMatrix(self.dim)
        res.entries = {rc: e for rc, e in out.items() if not e.is_zero()}
        return res

    def substitute(self, bindings: dict[Unknown, Cyclotomic]) -> "SymMatrix":
        res = SymMatrix(self.dim)
        for rc, e in self.entries.items():
            s = e.substitute(bindings)
            if not s.is_zero():
                res.entries[rc] = s
        return res

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymMatrix) or self.dim != other.dim:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.get(r, c) == other.get(r, c) for r, c in keys)

    def __repr__(self) -> str:
        rows = []
        for r in range(self.dim):
            rows.append("[" + ", ".join(repr(self.get(r, c)) for c in range(self.dim)) + "]")
        return "\n".join(rows)


class LambdaPoly:
    """Polynomial in lambda with SymExpr coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list[SymExpr]) -> None:
        self.coeffs = list(coeffs)

    def coeff(self, i: int) -> SymExpr:
        return self.coeffs[i] if i < len(self.coeffs) else SymExpr()

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(i) == other.coeff(i) for i in range(n))

    def __repr__(self) -> str:
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = repr(c)
            if i == 0:
                parts.append(f"({cs})")
            elif i == 1:
                parts.append(f"({cs})*λ")
            else:
                parts.append(f"({cs})*λ^{i}")
        return " + ".join(parts) if parts else "0"


def matrix_mul(a: SymMatrix, b: SymMatrix) -> SymMatrix:
    return a * b


class DimensionLimitError(ValueError):
    """Raised when a matrix is bigger than the characteristic-polynomial cap."""


def char_poly(matrix: SymMatrix, max_dim: int = MAX_CHAR_POLY_DIM) -> LambdaPoly:
    """det(-lambda*I + A), exact, as a LambdaPoly of degree dim.

    Laplace expansion over rows, memoized on the set of used columns:
    f(S) for |S| = r collects the signed partial products of rows 0..r-1
    into columns S. Placing column c at row r adds one inversion for every
    already-used column greater than c, hence the parity factor. Entries are
    themselves degree <= 1 polynomials in lambda, so the state values are
    lambda-polynomials; everything stays sparse because only nonzero f(S)
    propagate.
    """
    n = matrix.dim
    if n > max_dim:
        raise DimensionLimitError(
            f"dimension {n} exceeds the characteristic polynomial limit {max_dim}")
    one = SymExpr.constant(1)
    minus_one = SymExpr.constant(-1)

    # B[r][c] as lambda-polynomials: list of (c, [coeff0, coeff1]) per row
    rows: list[list[tuple[int, list[SymExpr]]]] = [[] for _ in range(n)]
    for r in range(n):
        cols: dict[int, list[SymExpr]] = {}
        e = matrix.entries.get((r, r))
        cols[r] = [e if e is not None else SymExpr(), minus_one]
        for (rr, c), e in matrix.entries.items():
            if rr == r and c != r:
                cols[c] = [e]
        rows[r] = sorted(cols.items())

    def lp_mul(a: list[SymExpr], b: list[SymExpr]) -> list[SymExpr]:
        out = [SymExpr() for _ in range(len(a) + len(b) - 1)]
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return out

    frontier: dict[int, list[SymExpr]] = {0: [one]}
    for r in range(n):
        nxt: dict[int, list[SymExpr]] = {}
        for mask in sorted(frontier):
            val = frontier[mask]
            for c, entry in rows[r]:
                if mask & (1 << c):
                    continue
                inversions = (mask >> (c + 1)).bit_count()
                term = lp_mul(val, entry)
                if inversions & 1:
                    term = [(-t) for t in term]
                key = mask | (1 << c)
                cur = nxt.get(key)
                if cur is None:
                    nxt[key] = term
                else:
                    merged = [SymExpr() for _ in range(max(len(cur), len(term)))]
                    for i in range(len(merged)):
                        a = cur[i] if i < len(cur) else SymExpr()
                        b = term[i] if i < len(term) else SymExpr()
                        merged[i] = a + b
                    nxt[key] = merged
        frontier = nxt
    full = (1 << n) - 1
    result = frontier.get(full, [SymExpr()])
    coeffs = [result[i] if i < len(result) else SymExpr() for i in range(n + 1)]
    return LambdaPoly(coeffs)
