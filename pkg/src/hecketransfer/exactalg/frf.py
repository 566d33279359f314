"""Factored rational functions and their numeric presentations."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .cyclotomic import CycRational, cyclotomic_poly, lcm, zeta_order
from .monomial import Factor, Monomial, split_brick

__all__ = [
    "FactoredRatFn",
    "IrrationalCoefficients",
    "LaurentPoly",
    "NonCyclotomicRemainder",
    "SignedCycloProduct",
    "SubstitutionResult",
    "compare_up_to_unit",
    "cyclo_present",
    "expand",
    "substitute",
]


class IrrationalCoefficients(ValueError):
    """Raised when a numeric function does not have rational coefficients."""


class NonCyclotomicRemainder(ValueError):
    """Raised when trial division by Phi_n(q) leaves a non-monomial."""


class _Builder:
    """Accumulates a product before freezing it into a FactoredRatFn."""

    __slots__ = ("nvars", "rat", "turns", "consts", "other", "lead", "factors")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rat = Fraction(1)
        self.turns = Fraction(0)
        self.consts: dict[Fraction, int] = defaultdict(int)
        self.other = CycRational.rational(1)
        self.lead = [0] * (nvars + 1)
        self.factors: dict[Factor, int] = defaultdict(int)

    def absorb(self, f: "FactoredRatFn", k: int = 1) -> None:
        self.other = self.other * (f.coeff if k == 1 else f.coeff**k)
        for i, e in enumerate(f.lead.exps):
            self.lead[i] += k * e
        for fac, e in f.factors.items():
            self.factors[fac] += k * e

    def unit(self, turns: Fraction, k: int = 1) -> None:
        self.turns += k * turns

    def monomial(self, exps: Sequence[int], k: int = 1) -> None:
        for i, e in enumerate(exps):
            self.lead[i] += k * e

    def constant(self, turns: Fraction, k: int) -> None:
        """Multiply by (1 - exp(2 pi i turns))^k, turns not integral."""
        turns %= 1
        if turns == Fraction(1, 2):
            self.rat *= Fraction(2) ** k
        else:
            self.consts[turns] += k

    def brick(self, phase: Fraction, exps: tuple[int, ...], k: int) -> bool:
        """Multiply by (1 - e(phase) X^exps)^k; return False if it vanishes."""
        res = split_brick(phase, exps)
        if res is None:
            return False
        if res[0] == "const":
            self.constant(res[1], k)
            return True
        _, bricks, unit, lead = res
        if unit is not None:
            self.turns += k * unit
            self.monomial(lead, k)
        for b in bricks:
            self.factors[b] += k
        return True

    def freeze(self) -> "FactoredRatFn":
        coeff = self.other * self.rat
        turns = self.turns % 1
        if turns:
            coeff = coeff * CycRational.root_of_unity(turns)
        one = CycRational.rational(1)
        for t, k in self.consts.items():
            if k:
                coeff = coeff * (one - CycRational.root_of_unity(t)) ** k
        facs = {f: e for f, e in self.factors.items() if e}
        lead = Monomial(0, self.lead[0], tuple(self.lead[1:]))
        return FactoredRatFn._make(self.nvars, coeff, lead, facs)


class FactoredRatFn:
    """coeff * lead * prod (brick)^exponent, with canonical bricks."""

    __slots__ = ("nvars", "coeff", "lead", "factors")

    def __init__(self, nvars: int, coeff=1, lead: Optional[Monomial] = None,
                 factors: Optional[Mapping[Factor, int]] = None):
        b = _Builder(nvars)
        c = coeff if isinstance(coeff, CycRational) else CycRational.rational(coeff)
        if c.is_zero():
            raise ValueError("the zero function is not representable")
        b.other = c
        if lead is not None:
            b.unit(Fraction(lead.zeta, zeta_order()))
            b.monomial(lead.exps)
        for fac, e in (factors or {}).items():
            b.brick(fac.phase, fac.exps, e)
        frozen = b.freeze()
        self.nvars, self.coeff, self.lead, self.factors = (
            frozen.nvars, frozen.coeff, frozen.lead, frozen.factors)

    @classmethod
    def _make(cls, nvars, coeff, lead, factors) -> "FactoredRatFn":
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.coeff = coeff
        obj.lead = lead
        obj.factors = factors
        return obj

    # -- constructors ----------------------------------------------------
    @classmethod
    def one(cls, nvars: int = 0) -> "FactoredRatFn":
        return cls._make(nvars, CycRational.rational(1), Monomial.identity(nvars), {})

    @classmethod
    def constant(cls, c, nvars: int = 0) -> "FactoredRatFn":
        c = c if isinstance(c, CycRational) else CycRational.rational(c)
        if c.is_zero():
            raise ValueError("the zero function is not representable")
        return cls._make(nvars, c, Monomial.identity(nvars), {})

    @classmethod
    def monomial(cls, m: Monomial) -> "FactoredRatFn":
        return cls(m.nvars, 1, m)

    @classmethod
    def from_factors(cls, nvars: int, items: Iterable[tuple[Monomial, int]], coeff=1,
                     lead: Optional[Monomial] = None) -> "FactoredRatFn":
        """Product coeff * lead * prod (1 - w)^e over the given (w, e) pairs."""
        b = _Builder(nvars)
        c = coeff if isinstance(coeff, CycRational) else CycRational.rational(coeff)
        if c.is_zero():
            raise ValueError("the zero function is not representable")
        b.other = c
        if lead is not None:
            b.unit(Fraction(lead.zeta, zeta_order()))
            b.monomial(lead.exps)
        n = zeta_order()
        for w, e in items:
            if len(w.sexps) != nvars:
                raise ValueError("monomial has the wrong number of variables")
            if e and not b.brick(Fraction(w.zeta, n), w.exps, e):
                raise ValueError(f"factor (1 - {w}) is identically zero")
        return b.freeze()

    # -- queries ---------------------------------------------------------
    def is_numeric(self) -> bool:
        return not any(self.lead.sexps) and all(f.is_numeric() for f in self.factors)

    def degree_bound(self) -> int:
        """Total degree of the factor multiset, used for Schwartz-Zippel bounds."""
        return sum(abs(e) * sum(abs(x) for x in f.exps) for f, e in self.factors.items())

    def numerator_factors(self) -> dict[Factor, int]:
        return {f: e for f, e in self.factors.items() if e > 0}

    def denominator_factors(self) -> dict[Factor, int]:
        return {f: -e for f, e in self.factors.items() if e < 0}

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "FactoredRatFn") -> None:
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")

    def __mul__(self, other) -> "FactoredRatFn":
        if not isinstance(other, FactoredRatFn):
            return self.scale(other)
        self._check(other)
        b = _Builder(self.nvars)
        b.absorb(self)
        b.absorb(other)
        return b.freeze()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FactoredRatFn":
        if not isinstance(other, FactoredRatFn):
            return self.scale(1 / Fraction(other) if not isinstance(other, CycRational) else other.inverse())
        self._check(other)
        b = _Builder(self.nvars)
        b.absorb(self)
        b.absorb(other, -1)
        return b.freeze()

    def __pow__(self, k: int) -> "FactoredRatFn":
        b = _Builder(self.nvars)
        b.absorb(self, k)
        return b.freeze()

    def inverse(self) -> "FactoredRatFn":
        return self**-1

    def scale(self, c=1, vexp: int = 0) -> "FactoredRatFn":
        """Multiply by the unit c * v^vexp."""
        c = c if isinstance(c, CycRational) else CycRational.rational(c)
        if c.is_zero():
            raise ValueError("cannot scale by zero")
        lead = Monomial(0, self.lead.vexp + vexp, self.lead.sexps)
        return FactoredRatFn._make(self.nvars, self.coeff * c, lead, self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRatFn):
            return NotImplemented
        return (self.nvars == other.nvars and self.lead == other.lead
                and self.factors == other.factors and self.coeff == other.coeff)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FactoredRatFn({self})"

    def __str__(self) -> str:
        num = [f"{f}" + (f"^{e}" if e != 1 else "") for f, e in sorted(self.factors.items()) if e > 0]
        den = [f"{f}" + (f"^{-e}" if e != -1 else "") for f, e in sorted(self.factors.items()) if e < 0]
        head = f"{self.coeff.coeffs[0] if self.coeff.is_rational() else self.coeff}"
        mono = str(self.lead)
        text = " * ".join([head] + ([mono] if mono != "1" else []) + num)
        return text + (" / (" + " * ".join(den) + ")" if den else "")


@dataclass
class SubstitutionResult:
    value: FactoredRatFn
    dropped_numerator: int
    dropped_denominator: int
    dropped: dict[Factor, int] = field(default_factory=dict)


def _pullback(exps: tuple[int, ...], images: Sequence[Monomial], nvars: int):
    """Pull X^exps back along t_j -> images[j]; return (zeta, exps)."""
    zeta = 0
    out = [exps[0]] + [0] * nvars
    for k, m in zip(exps[1:], images):
        if k:
            zeta += k * m.zeta
            out[0] += k * m.vexp
            for i, s in enumerate(m.sexps):
                out[i + 1] += k * s
    return zeta, tuple(out)


def substitute(f: FactoredRatFn, images: Sequence[Monomial]) -> SubstitutionResult:
    """Pull f back along t_j -> images[j], dropping bricks that vanish identically."""
    if len(images) != f.nvars:
        raise ValueError(f"expected {f.nvars} images, got {len(images)}")
    nvars = images[0].nvars if images else 0
    if any(m.nvars != nvars for m in images):
        raise ValueError("images must share one variable count")
    n = zeta_order()
    b = _Builder(nvars)
    b.other = f.coeff
    zeta, lead = _pullback(f.lead.exps, images, nvars)
    b.unit(Fraction(zeta, n))
    b.monomial(lead)
    drop_num = drop_den = 0
    dropped: dict[Factor, int] = {}
    for fac, e in f.factors.items():
        zeta, exps = _pullback(fac.exps, images, nvars)
        if not b.brick(fac.phase + Fraction(zeta, n), exps, e):
            dropped[fac] = e
            if e > 0:
                drop_num += e
            else:
                drop_den -= e
    return SubstitutionResult(b.freeze(), drop_num, drop_den, dropped)


def compare_up_to_unit(a: FactoredRatFn, b: FactoredRatFn) -> Optional[tuple[Fraction, int]]:
    """Return (c, k) with a = c v^k b and c rational, or None."""
    if a.nvars != b.nvars:
        raise ValueError("variable counts differ")
    quot = a / b
    if quot.factors or any(quot.lead.sexps) or not quot.coeff.is_rational():
        return None
    return quot.coeff.to_fraction(), quot.lead.vexp


# -- numeric presentations ----------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """sum coeffs[i] v^(offset + i)."""

    offset: int
    coeffs: tuple

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.offset + other.offset, tuple(_polymul(self.coeffs, other.coeffs)))

    def trimmed(self) -> "LaurentPoly":
        c = list(self.coeffs)
        off = self.offset
        while c and c[-1] == 0:
            c.pop()
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        return LaurentPoly(off + i, tuple(c[i:]))


def _polymul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _polypow(a: Sequence, k: int) -> list:
    out: list = [1]
    base = list(a)
    while k:
        if k & 1:
            out = _polymul(out, base)
        k >>= 1
        if k:
            base = _polymul(base, base)
    return out


def _orbit_poly(d: int) -> tuple[int, ...]:
    """prod over primitive d-th roots w of (1 - w v)."""
    return (1, -1) if d == 1 else cyclotomic_poly(d)


def _split_orbits(bricks: Mapping[Factor, int]):
    """Group numeric bricks into full Galois orbits over Q plus leftovers."""
    by_den: dict[int, dict[Fraction, int]] = defaultdict(dict)
    for fac, e in bricks.items():
        by_den[fac.phase.denominator][fac.phase] = e
    full: dict[int, int] = {}
    rest: dict[Fraction, int] = {}
    for d, phases in by_den.items():
        prim = [Fraction(j, d) for j in range(d) if gcd(j, d) == 1]
        m = min(phases.get(p, 0) for p in prim)
        if m:
            full[d] = m
        for p in prim:
            left = phases.get(p, 0) - m
            if left:
                rest[p] = left
    return full, rest


def _product_poly(bricks: Mapping[Factor, int], exact: bool) -> list:
    full, rest = _split_orbits(bricks)
    if exact and rest:
        raise IrrationalCoefficients("factor multiset is not closed under Galois conjugation")
    poly: list = [1]
    for d in sorted(full):
        poly = _polymul(poly, _polypow(_orbit_poly(d), full[d]))
    if rest:
        order = zeta_order()
        for p in rest:
            order = lcm(order, p.denominator)
        one = CycRational.rational(1, order)
        poly = [one * c for c in poly]
        for p in sorted(rest):
            root = CycRational.root_of_unity(p).embed(order)
            poly = _polymul(poly, _polypow([one, -root], rest[p]))
    return poly


def _require_numeric(f: FactoredRatFn) -> None:
    if not f.is_numeric():
        raise ValueError("function depends on torus variables; substitute a point first")


def expand(f: FactoredRatFn) -> tuple[LaurentPoly, LaurentPoly]:
    """Dense numerator and denominator in v, coefficients in a cyclotomic field."""
    _require_numeric(f)
    num = _product_poly(f.numerator_factors(), exact=False)
    den = _product_poly(f.denominator_factors(), exact=False)

    def wrap(poly, scale):
        return tuple(scale * (c if isinstance(c, CycRational) else CycRational.rational(c)) for c in poly)

    return (LaurentPoly(f.lead.vexp, wrap(num, f.coeff)),
            LaurentPoly(0, wrap(den, CycRational.rational(1))))


@dataclass(frozen=True)
class SignedCycloProduct:
    """c * v^vexp * prod Phi_n(q)^exps[n] with q = v^2."""

    c: Fraction
    vexp: int
    exps: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, c, vexp: int, exps: Mapping[int, int]) -> "SignedCycloProduct":
        return cls(Fraction(c), vexp, tuple(sorted((n, e) for n, e in exps.items() if e)))

    @classmethod
    def parse(cls, text: str) -> "SignedCycloProduct":
        """Inverse of str(): "Phi5 Phi9 / (Phi2^2 Phi3)"; the unit part is not encoded."""
        text = text.strip()
        num, _, den = text.partition("/")
        exps: dict[int, int] = defaultdict(int)
        for part, sign in ((num, 1), (den.strip().strip("()"), -1)):
            for tok in part.split():
                if tok == "1":
                    continue
                m = re.fullmatch(r"Phi(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"bad cyclotomic token {tok!r}")
                exps[int(m.group(1))] += sign * int(m.group(2) or 1)
        return cls.make(1, 0, exps)

    @property
    def exps_map(self) -> dict[int, int]:
        return dict(self.exps)

    def equal_up_to_unit(self, other: "SignedCycloProduct") -> bool:
        return self.exps == other.exps

    def __mul__(self, other: "SignedCycloProduct") -> "SignedCycloProduct":
        e = defaultdict(int, self.exps)
        for n, k in other.exps:
            e[n] += k
        return SignedCycloProduct.make(self.c * other.c, self.vexp + other.vexp, e)

    def __truediv__(self, other: "SignedCycloProduct") -> "SignedCycloProduct":
        return self * other.inverse()

    def inverse(self) -> "SignedCycloProduct":
        return SignedCycloProduct.make(1 / self.c, -self.vexp, {n: -k for n, k in self.exps})

    def total_degree(self) -> int:
        from .cyclotomic import euler_phi
        return sum(k * euler_phi(n) for n, k in self.exps)

    def to_frf(self) -> FactoredRatFn:
        """Rebuild the value as a numeric factored function."""
        b = _Builder(0)
        b.rat = self.c
        b.monomial((self.vexp,))
        for n, k in self.exps:
            # Phi_n(v^2) = prod of Phi_d(v) over d in {2n} or {n, 2n}
            for d in ((2 * n,) if n % 2 == 0 else (n, 2 * n)):
                for j in range(d):
                    if gcd(j, d) == 1:
                        b.factors[Factor((1,), Fraction(j, d))] += k
            if n == 1:
                b.rat *= Fraction(-1) ** k  # (1 - v)(1 + v) = -(q - 1)
        return b.freeze()

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        num = [f"Phi{n}" + (f"^{k}" if k != 1 else "") for n, k in self.exps if k > 0]
        den = [f"Phi{n}" + (f"^{-k}" if k != -1 else "") for n, k in self.exps if k < 0]
        text = " ".join(num) or "1"
        return text + (" / (" + " ".join(den) + ")" if den else "")


def _phi_q(n: int) -> list[int]:
    out = [0] * (2 * (len(cyclotomic_poly(n)) - 1) + 1)
    for i, c in enumerate(cyclotomic_poly(n)):
        out[2 * i] = c
    return out


def _divmod_monic(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [], num
    quot = [0] * (len(num) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dd]
        if c:
            quot[k] = c
            for i, d in enumerate(den):
                if d:
                    num[k + i] -= c * d
    return quot, num[:dd]


def _strip(poly: list) -> tuple[int, list]:
    """Remove zero coefficients at both ends; return (shift, poly)."""
    while poly and poly[-1] == 0:
        poly.pop()
    i = 0
    while i < len(poly) and poly[i] == 0:
        i += 1
    return i, poly[i:]


def _trial_divide(poly: list, bound: int) -> tuple[dict[int, int], Fraction, int]:
    shift, poly = _strip(list(poly))
    exps: dict[int, int] = {}
    for n in range(1, bound + 1):
        div = _phi_q(n)
        while len(poly) >= len(div):
            quot, rem = _divmod_monic(poly, div)
            if any(rem):
                break
            exps[n] = exps.get(n, 0) + 1
            s, poly = _strip(quot)
            shift += s
    if len(poly) != 1:
        raise NonCyclotomicRemainder(
            f"degree-{len(poly) - 1} remainder after trial division up to Phi_{bound}")
    return exps, Fraction(poly[0]), shift


def cyclo_present(f: FactoredRatFn, bound: int = 64) -> SignedCycloProduct:
    """Present a numeric function as c * v^k * prod Phi_n(q)^e_n."""
    _require_numeric(f)
    if not f.coeff.is_rational():
        raise IrrationalCoefficients(f"coefficient {f.coeff} is not rational")
    num = _product_poly(f.numerator_factors(), exact=True)
    den = _product_poly(f.denominator_factors(), exact=True)
    e_num, c_num, k_num = _trial_divide(num, bound)
    e_den, c_den, k_den = _trial_divide(den, bound)
    exps = defaultdict(int, e_num)
    for n, k in e_den.items():
        exps[n] -= k
    c = f.coeff.to_fraction() * c_num / c_den
    return SignedCycloProduct.make(c, f.lead.vexp + k_num - k_den, exps)
