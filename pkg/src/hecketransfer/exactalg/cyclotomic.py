"""Cyclotomic polynomials and exact arithmetic in cyclotomic fields.

Elements of Q(zeta_n) are stored as coefficient tuples in the power basis
1, x, ..., x^(phi(n)-1) of Q[x]/Phi_n(x).  Values of different orders are
combined by embedding both into Q(zeta_lcm).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "CycRational",
    "cyclotomic_poly",
    "divisors",
    "euler_phi",
    "zeta_order",
    "set_zeta_order",
]

_ZETA_ORDER = 24


def zeta_order() -> int:
    """Return the session-wide order N of the distinguished root of unity."""
    return _ZETA_ORDER


def set_zeta_order(n: int) -> None:
    """Fix the session order N.  Must be even so that -1 is a power of zeta."""
    global _ZETA_ORDER
    if n <= 0 or n % 2:
        raise ValueError(f"zeta order must be a positive even integer, got {n}")
    _ZETA_ORDER = n


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divide_exact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic (leading coefficient 1); coefficients low to high
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n(x), lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly = _divide_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced representation of x^k mod Phi_n for 0 <= k < n."""
    phi = euler_phi(n)
    cyc = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


def _reduce(coeffs: Sequence, n: int) -> tuple:
    """Reduce an arbitrary-length polynomial modulo Phi_n."""
    phi = euler_phi(n)
    if len(coeffs) <= phi:
        return tuple(coeffs) + (0,) * (phi - len(coeffs))
    table = _power_table(n)
    out = list(coeffs[:phi])
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k % n]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class CycRational:
    """An exact element of the cyclotomic field Q(zeta_order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable = (0,), order: int | None = None):
        n = zeta_order() if order is None else order
        vals = [Fraction(c) for c in coeffs]
        self.order = n
        self.coeffs = tuple(Fraction(c) for c in _reduce(vals, n)) if vals else (Fraction(0),) * euler_phi(n)

    @classmethod
    def _raw(cls, coeffs: tuple, order: int) -> "CycRational":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    # -- constructors ----------------------------------------------------
    @classmethod
    def rational(cls, value, order: int | None = None) -> "CycRational":
        n = zeta_order() if order is None else order
        return cls._raw((Fraction(value),) + (Fraction(0),) * (euler_phi(n) - 1), n)

    @classmethod
    def root(cls, a: int, order: int | None = None) -> "CycRational":
        """zeta_order ** a."""
        n = zeta_order() if order is None else order
        row = _power_table(n)[a % n]
        return cls._raw(tuple(Fraction(c) for c in row), n)

    @classmethod
    def root_of_unity(cls, turns: Fraction) -> "CycRational":
        """exp(2 pi i * turns) in the smallest field containing it (at least the session field)."""
        turns = Fraction(turns) % 1
        n = lcm(turns.denominator, zeta_order())
        return cls.root(turns.numerator * (n // turns.denominator), n)

    # -- structure -------------------------------------------------------
    def embed(self, order: int) -> "CycRational":
        """Image in Q(zeta_order) for a multiple of the current order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into {order}")
        step = order // self.order
        poly = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * step] = c
        return CycRational._raw(tuple(Fraction(c) for c in _reduce(poly, order)), order)

    def _common(self, other) -> tuple["CycRational", "CycRational"]:
        if not isinstance(other, CycRational):
            other = CycRational.rational(other, self.order)
        if other.order == self.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> "CycRational":
        a, b = self._common(other)
        return CycRational._raw(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.order)

    __radd__ = __add__

    def __neg__(self) -> "CycRational":
        return CycRational._raw(tuple(-x for x in self.coeffs), self.order)

    def __sub__(self, other) -> "CycRational":
        a, b = self._common(other)
        return CycRational._raw(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.order)

    def __rsub__(self, other) -> "CycRational":
        return (-self) + other

    def __mul__(self, other) -> "CycRational":
        if not isinstance(other, CycRational):
            f = Fraction(other)
            return CycRational._raw(tuple(x * f for x in self.coeffs), self.order)
        a, b = self._common(other)
        if b.is_rational():
            f = b.coeffs[0]
            return CycRational._raw(tuple(x * f for x in a.coeffs), a.order)
        if a.is_rational():
            f = a.coeffs[0]
            return CycRational._raw(tuple(x * f for x in b.coeffs), a.order)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycRational._raw(tuple(_reduce(prod, a.order)), a.order)

    __rmul__ = __mul__

    def inverse(self) -> "CycRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycRational.rational(1 / self.coeffs[0], self.order)
        # solve M x = e_0 where M is multiplication by self in the power basis
        n, phi = self.order, len(self.coeffs)
        basis = [CycRational.root(k, n) for k in range(phi)]
        cols = [(self * b).coeffs for b in basis]
        rows = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [x / piv for x in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return CycRational._raw(tuple(rows[i][phi] for i in range(phi)), n)

    def __truediv__(self, other) -> "CycRational":
        if not isinstance(other, CycRational):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycRational":
        return self.inverse() * other

    def __pow__(self, k: int) -> "CycRational":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycRational.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycRational, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyc", self.embed(lcm(self.order, zeta_order())).coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CycRational({self.coeffs[0]})"
        terms = [f"{c}*z{self.order}^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "CycRational(" + " + ".join(terms) + ")"
