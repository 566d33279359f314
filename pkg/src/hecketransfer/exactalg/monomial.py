"""Monomials zeta^a v^e s^f and the linear bricks (1 - w) built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Union

from .cyclotomic import CycRational, zeta_order

__all__ = [
    "Canonical",
    "Constant",
    "Factor",
    "Monomial",
    "Zero",
    "canonicalize_factor",
    "split_brick",
]


@dataclass(frozen=True)
class Monomial:
    """zeta_N^zeta * v^vexp * prod s_i^sexps[i]."""

    zeta: int = 0
    vexp: int = 0
    sexps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "zeta", self.zeta % zeta_order())
        object.__setattr__(self, "sexps", tuple(int(x) for x in self.sexps))

    @classmethod
    def identity(cls, nvars: int = 0) -> "Monomial":
        return cls(0, 0, (0,) * nvars)

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "Monomial":
        exps = [0] * nvars
        exps[i] = power
        return cls(0, 0, tuple(exps))

    @classmethod
    def q(cls, power: Union[int, Fraction] = 1, nvars: int = 0, zeta: int = 0) -> "Monomial":
        """zeta^a q^power; power may be a half-integer (q = v^2)."""
        e = Fraction(power) * 2
        if e.denominator != 1:
            raise ValueError(f"q^{power} is not an integral power of v")
        return cls(zeta, int(e), (0,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.sexps)

    @property
    def exps(self) -> tuple[int, ...]:
        return (self.vexp,) + self.sexps

    def is_identity(self) -> bool:
        return self.zeta == 0 and self.vexp == 0 and not any(self.sexps)

    def is_numeric(self) -> bool:
        return not any(self.sexps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            self.zeta + other.zeta,
            self.vexp + other.vexp,
            tuple(a + b for a, b in zip(self.sexps, other.sexps)),
        )

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.zeta * k, self.vexp * k, tuple(a * k for a in self.sexps))

    def inverse(self) -> "Monomial":
        return self ** -1

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __str__(self) -> str:
        parts = []
        if self.zeta:
            parts.append(f"z^{self.zeta}")
        if self.vexp:
            parts.append(f"v^{self.vexp}")
        parts += [f"s{i + 1}^{e}" for i, e in enumerate(self.sexps) if e]
        return "*".join(parts) or "1"


@dataclass(frozen=True, order=True)
class Factor:
    """The brick 1 - exp(2 pi i phase) * v^exps[0] * prod s_i^exps[i].

    exps is primitive (gcd 1) and lexicographically positive, phase lies in
    [0, 1).  Distinct bricks are pairwise non-associate irreducibles of the
    Laurent ring, so factor maps built from them are unique.
    """

    exps: tuple[int, ...]
    phase: Fraction = field(default=Fraction(0))

    @property
    def vexp(self) -> int:
        return self.exps[0]

    @property
    def sexps(self) -> tuple[int, ...]:
        return self.exps[1:]

    @property
    def w(self) -> Monomial:
        n = zeta_order()
        a = self.phase * n
        if a.denominator != 1:
            raise ValueError(f"phase {self.phase} is not a power of zeta_{n}")
        return Monomial(int(a), self.exps[0], self.exps[1:])

    def is_numeric(self) -> bool:
        return not any(self.exps[1:])

    def __str__(self) -> str:
        mono = str(Monomial(0, self.exps[0], self.exps[1:]))
        if self.phase == 0:
            return f"(1 - {mono})"
        if self.phase == Fraction(1, 2):
            return f"(1 + {mono})"
        return f"(1 - e({self.phase})*{mono})"


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Constant:
    value: CycRational


@dataclass(frozen=True)
class Canonical:
    """(1 - w) = coeff_adjust * lead_adjust * prod(factors)."""

    factors: tuple[Factor, ...]
    coeff_adjust: CycRational
    lead_adjust: Monomial


def _lex_negative(exps: tuple[int, ...]) -> bool:
    for e in exps:
        if e:
            return e < 0
    return False


@lru_cache(maxsize=1 << 16)
def split_brick(phase: Fraction, exps: tuple[int, ...]):
    """Canonical form of 1 - exp(2 pi i phase) * X^exps.

    Returns None when the factor is identically zero, ("const", turns) for a
    nonzero constant 1 - exp(2 pi i turns), and otherwise
    ("bricks", factors, unit_turns, lead_exps) meaning
    exp(2 pi i unit_turns) * X^lead_exps * prod(factors); unit_turns is None
    when no reorientation happened.
    """
    phase = Fraction(phase) % 1
    g = reduce(gcd, exps, 0)
    if g == 0:
        return None if phase == 0 else ("const", phase)
    unit = None
    lead = None
    if _lex_negative(exps):
        # 1 - w = (-w)(1 - w^-1)
        unit = (phase + Fraction(1, 2)) % 1
        lead = exps
        phase = (-phase) % 1
        exps = tuple(-e for e in exps)
    prim = tuple(e // g for e in exps)
    bricks = tuple(sorted(Factor(prim, ((phase + j) / g) % 1) for j in range(g)))
    return ("bricks", bricks, unit, lead)


def canonicalize_factor(w: Monomial) -> Union[Zero, Constant, Canonical]:
    phase = Fraction(w.zeta, zeta_order())
    res = split_brick(phase, w.exps)
    if res is None:
        return Zero()
    if res[0] == "const":
        return Constant(CycRational.rational(1) - CycRational.root(w.zeta))
    _, bricks, unit, lead = res
    if unit is None:
        return Canonical(bricks, CycRational.rational(1), Monomial.identity(w.nvars))
    return Canonical(bricks, CycRational.root_of_unity(unit), Monomial(0, lead[0], lead[1:]))
