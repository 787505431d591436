"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) of
Q[x] / Phi_m(x), with Fraction coefficients. phi(1) = phi(2) = 1, so orders
1 and 2 are plain rationals (zeta_2 reduces to -1).

Everything here is exact; floats never appear.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of dense polynomials over Q, b != 0."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv_lead
        d = len(r) - len(b)
        if c:
            q[d] = c
            for i, bi in enumerate(b):
                r[d + i] -= c * bi
        r.pop()
    return _poly_trim(q), _poly_trim(r)


_cyclotomic_poly_cache: dict[int, list[int]] = {}


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficients of Phi_m, ascending degree.

    Phi_1 = x - 1; for m > 1, Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d,
    the division being exact over Z.
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    cached = _cyclotomic_poly_cache.get(m)
    if cached is not None:
        return list(cached)
    if m == 1:
        result = [-1, 1]
    else:
        num: list[Fraction] = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
        den: list[Fraction] = [Fraction(1)]
        for d in range(1, m):
            if m % d == 0:
                den = _poly_mul(den, [Fraction(c) for c in cyclotomic_polynomial(d)])
        q, r = _poly_divmod(num, den)
        if r:
            raise ArithmeticError(f"Phi_{m} division left a remainder")
        result = []
        for c in q:
            if c.denominator != 1:
                raise ArithmeticError(f"Phi_{m} has a non-integer coefficient {c}")
            result.append(c.numerator)
    _cyclotomic_poly_cache[m] = result
    return list(result)


def _phi_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce_mod_phi(p: list[Fraction], m: int) -> list[Fraction]:
    """Reduce p(x) modulo Phi_m, returning a dense vector of length phi(m)."""
    phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
    _, r = _poly_divmod(list(p), phi)
    deg = len(phi) - 1
    r = r + [Fraction(0)] * (deg - len(r))
    return r


_zeta_power_cache: dict[tuple[int, int], tuple[Fraction, ...]] = {}


def _zeta_power(m: int, k: int) -> tuple[Fraction, ...]:
    """x^k mod Phi_m as a coefficient vector of length phi(m)."""
    k %= m
    key = (m, k)
    cached = _zeta_power_cache.get(key)
    if cached is None:
        vec = [Fraction(0)] * k + [Fraction(1)]
        cached = tuple(_reduce_mod_phi(vec, m))
        _zeta_power_cache[key] = cached
    return cached


class Cyclotomic:
    """An element of Q(zeta_m) in the power basis of Q[x]/Phi_m."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        deg = _phi_degree(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod_phi(cs, order)
        else:
            cs = cs + [Fraction(0)] * (deg - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @staticmethod
    def rational(q) -> "Cyclotomic":
        return Cyclotomic(1, [Fraction(q)])

    @staticmethod
    def zeta(m: int, power: int = 1) -> "Cyclotomic":
        """zeta_m^power as an element of Q(zeta_m)."""
        return Cyclotomic(m, list(_zeta_power(m, power)))

    def to_order(self, target: int) -> "Cyclotomic":
        """Embed into Q(zeta_target) via zeta_m -> zeta_target^(target/m)."""
        if target == self.order:
            return self
        if target % self.order != 0:
            raise ValueError(f"cannot embed order {self.order} into order {target}")
        step = target // self.order
        acc = [Fraction(0)] * _phi_degree(target)
        for i, c in enumerate(self.coeffs):
            if c:
                pw = _zeta_power(target, step * i)
                for j, pj in enumerate(pw):
                    acc[j] += c * pj
        return Cyclotomic(target, acc)

    def _unify(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.to_order(m), other.to_order(m)

    @staticmethod
    def _coerce(value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.rational(value)
        return NotImplemented

    def __add__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._unify(other)
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._unify(other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return Cyclotomic(a.order, _reduce_mod_phi(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.order
        phi = [Fraction(c) for c in cyclotomic_polynomial(m)]
        # r0, r1 with Bezout coefficients s0, s1 against Phi_m.
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 = gcd = nonzero constant (Phi_m is irreducible over Q)
        if len(r0) != 1:
            raise ArithmeticError("gcd with the cyclotomic polynomial is not constant")
        c = r0[0]
        return Cyclotomic(m, [x / c for x in s0])

    def __truediv__(self, other) -> "Cyclotomic":
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def canonical(self) -> "Cyclotomic":
        """Collapse to order 1 when the value is rational (phi(2)=1 included)."""
        if self.order != 1 and self.is_rational():
            return Cyclotomic(1, [self.coeffs[0]])
        return self

    def __eq__(self, other) -> bool:
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    # no __hash__: equal values can live at different orders, so elements are
    # compared, never used as dict keys
    __hash__ = None

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return pretty_cyclotomic(self)


def pretty_cyclotomic(v: Cyclotomic) -> str:
    """Human-readable form like '-9ζ+18', descending powers of zeta."""
    v = v.canonical()
    if v.is_rational():
        return str(v.coeffs[0])
    sym = "ζ"
    parts: list[str] = []
    for i in range(len(v.coeffs) - 1, -1, -1):
        c = v.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            power = sym if i == 1 else f"{sym}^{i}"
            term = mag + power
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("-" if c < 0 else "+") + term)
    return "".join(parts)


class RootOfUnity:
    """e^(2*pi*i*exponent/order) in lowest terms; supports exact products."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int) -> None:
        if order < 1:
            raise ValueError("order must be >= 1")
        exponent %= order
        g = gcd(exponent, order) if exponent else order
        self.order = order // g
        self.exponent = exponent // g

    @staticmethod
    def from_exponent_fraction(rho: Fraction) -> "RootOfUnity":
        """e^(2*pi*i*rho)."""
        rho = Fraction(rho)
        return RootOfUnity(rho.denominator, rho.numerator % rho.denominator)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and (self.order, self.exponent) == (other.order, other.exponent)

    def __hash__(self) -> int:
        return hash((self.order, self.exponent))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.order}, {self.exponent})"

    def as_cyclotomic(self) -> Cyclotomic:
        return Cyclotomic.zeta(self.order, self.exponent)


def root_of_unity_char_poly(roots: list[RootOfUnity]) -> list[int]:
    """Coefficients (ascending) of prod (lambda - r) over the given roots.

    The product of the (lambda - zeta^e) factors is computed exactly in the
    smallest common cyclotomic field; the result must have integer
    coefficients (the multiset of roots is assumed Galois-stable), and that
    is asserted rather than trusted.
    """
    order = 1
    for r in roots:
        order = lcm(order, r.order)
    # poly over Q(zeta_order), ascending in lambda
    poly: list[Cyclotomic] = [Cyclotomic.rational(1)]
    for r in roots:
        root = r.as_cyclotomic().to_order(order)
        nxt = [Cyclotomic(order, [0])] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - root * c
        poly = nxt
    out: list[int] = []
    for c in poly:
        if not c.is_rational():
            raise ArithmeticError(f"non-rational coefficient {c!r} in a root-of-unity char poly")
        q = c.rational_value()
        if q.denominator != 1:
            raise ArithmeticError(f"non-integer coefficient {q} in a root-of-unity char poly")
        out.append(q.numerator)
    return out
