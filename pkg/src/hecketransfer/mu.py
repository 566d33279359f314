"""Normalized mu-functions as factored rational functions.

A HeckeSpec carries a root system, the parameters (m_plus, m_minus) per root
class, the base exponent b (the algebra has parameter q^b, i.e. every
parameter brick uses V = v^b) and the normalization factor d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Mapping, Optional

from .exactalg import FactoredRatFn, Monomial, zeta_order
from .roots import Root, RootSystemSpec, positive_roots

__all__ = [
    "ClassicalParams",
    "HeckeSpec",
    "ISO_GROUP",
    "build_mu",
    "classical_spec",
    "classify_params",
    "d_classical",
    "d_exceptional",
    "d_target",
    "exceptional_spec",
    "iso_apply",
    "mu_classical",
    "mu_general",
]


def _half() -> int:
    return zeta_order() // 2


@dataclass(frozen=True)
class HeckeSpec:
    roots: RootSystemSpec
    params: Mapping[str, tuple[Fraction, Fraction]]  # class -> (m_plus, m_minus)
    base: int = 1
    d: Optional[FactoredRatFn] = None
    label: str = ""

    def __post_init__(self):
        for cls, (mp, mm) in self.params.items():
            if mm and cls not in ("single",):
                raise ValueError(f"m_minus must vanish on the {cls} class")

    @property
    def rank(self) -> int:
        return self.roots.rank

    def normalization(self) -> FactoredRatFn:
        return self.d if self.d is not None else FactoredRatFn.one(self.rank)


def _root_mono(root: Root, power: int, vexp: int, zeta: int = 0) -> Monomial:
    return Monomial(zeta, vexp, tuple(power * e for e in root.exps))


def _twice(x: Fraction, base: int) -> int:
    val = 2 * base * Fraction(x)
    if val.denominator != 1:
        raise ValueError(f"parameter {x} with base {base} is not an integral power of v")
    return int(val)


def mu_general(spec: HeckeSpec) -> FactoredRatFn:
    """d * prod over all roots of 1/c(alpha): the c-factor form.

    Per positive root this contributes
    (1 - a^-2)(1 - a^2) / [(1 - V^-2m+ a^-1)(1 + V^-2m- a^-1)(1 - V^-2m+ a)(1 + V^-2m- a)].
    The global power of v in front is omitted.
    """
    n = spec.rank
    half = _half()
    items = []
    for root in positive_roots(spec.roots):
        mp, mm = spec.params[root.cls]
        ep, em = _twice(mp, spec.base), _twice(mm, spec.base)
        items.append((_root_mono(root, -2, 0), 1))
        items.append((_root_mono(root, 2, 0), 1))
        for sign in (-1, 1):
            items.append((_root_mono(root, sign, -ep), -1))
            items.append((_root_mono(root, sign, -em, half), -1))
    return spec.normalization() * FactoredRatFn.from_factors(n, items)


def mu_classical_from_spec(spec: HeckeSpec) -> FactoredRatFn:
    """The rewritten form: per positive root
    (1 - a^2)^2 / [(1 + V^2m- a)(1 + V^-2m- a)(1 - V^2m+ a)(1 - V^-2m+ a)].
    """
    n = spec.rank
    half = _half()
    items = []
    for root in positive_roots(spec.roots):
        mp, mm = spec.params[root.cls]
        ep, em = _twice(mp, spec.base), _twice(mm, spec.base)
        items.append((_root_mono(root, 2, 0), 2))
        for e in (em, -em):
            items.append((_root_mono(root, 1, e, half), -1))
        for e in (ep, -ep):
            items.append((_root_mono(root, 1, e), -1))
    return spec.normalization() * FactoredRatFn.from_factors(n, items)


def build_mu(spec: HeckeSpec) -> FactoredRatFn:
    if spec.roots.family in ("G2", "F4"):
        return mu_general(spec)
    return mu_classical_from_spec(spec)


# -- classical parameters --------------------------------------------------

@dataclass(frozen=True)
class ClassicalParams:
    mminus: Fraction
    mplus: Fraction
    cls: str
    bfrak: int
    kappa: tuple[Optional[int], Optional[int]] = (None, None)  # (minus, plus)
    eps: tuple[Optional[int], Optional[int]] = (None, None)
    delta: tuple[Optional[int], Optional[int]] = (None, None)

    @property
    def kappa_minus(self):
        return self.kappa[0]

    @property
    def kappa_plus(self):
        return self.kappa[1]

    @property
    def eps_minus(self):
        return self.eps[0]

    @property
    def eps_plus(self):
        return self.eps[1]

    @property
    def delta_minus(self):
        return self.delta[0]

    @property
    def delta_plus(self):
        return self.delta[1]

    @property
    def extra_special(self) -> bool:
        return self.cls in ("V", "VI")


def kappa_eps(m: Fraction) -> tuple[int, int, int]:
    """(kappa, eps, delta) with |m| = kappa + (2 eps - 1)/4."""
    a = abs(Fraction(m))
    for eps in (0, 1):
        k = a - Fraction(2 * eps - 1, 4)
        if k.denominator == 1 and k >= 0:
            return int(k), eps, int(k) % 2
    raise ValueError(f"{m} is not of the form Z +- 1/4")


def classify_params(mminus, mplus) -> ClassicalParams:
    mm, mp = Fraction(mminus), Fraction(mplus)
    if (4 * mm).denominator != 1 or (4 * mp).denominator != 1:
        raise ValueError(f"parameters ({mm}, {mp}) are not in Z/4")
    bfrak = 1 if (mp + mm).denominator == 1 and (mp - mm).denominator == 1 else 2
    if (2 * mm).denominator == 1 and (2 * mp).denominator == 1:
        if (mm - mp).denominator != 1:
            cls = "I"
        elif mm.denominator == 2:
            cls = "II"
        else:
            cls = "III" if (mm - mp) % 2 else "IV"
        return ClassicalParams(mm, mp, cls, bfrak)
    if (2 * mm).denominator == 1 or (2 * mp).denominator == 1:
        raise ValueError(f"parameters ({mm}, {mp}) mix Z/2 with Z +- 1/4")
    km, em, dm = kappa_eps(mm)
    kp, ep, dp = kappa_eps(mp)
    cls = "V" if dm != dp else "VI"
    return ClassicalParams(mm, mp, cls, bfrak, (km, kp), (em, ep), (dm, dp))


ISO_GROUP = ("", "eta", "eta+", "eta eta+", "eta+ eta", "eta eta+ eta", "eta+ eta eta+",
             "eta eta+ eta eta+")


def iso_apply(params: ClassicalParams, g: str) -> ClassicalParams:
    """Apply a word in eta (swap m_-, m_+) and eta+ (negate m_+), rightmost first."""
    mm, mp = params.mminus, params.mplus
    for letter in reversed(g.split()):
        if letter == "eta":
            mm, mp = mp, mm
        elif letter == "eta+":
            mp = -mp
        else:
            raise ValueError(f"unknown generator {letter!r}")
    return classify_params(mm, mp)


def _one_minus_v(vexp: int, power: int, nvars: int, zeta: int = 0):
    return (Monomial(zeta, vexp, (0,) * nvars), power)


def d_zero(mminus, mplus, bfrak: int, nvars: int = 0) -> FactoredRatFn:
    """prod_i (1 + Q^(|m- - m+| - i))^-i * prod_j (1 + Q^(|m- + m+| - j))^-j with Q = q^b.

    The v-power numerators of each factor are omitted.
    """
    half = _half()
    items = []
    for x in (abs(Fraction(mminus) - Fraction(mplus)), abs(Fraction(mminus) + Fraction(mplus))):
        for i in range(1, floor(x) + 1):
            items.append(_one_minus_v(_twice(x - i, bfrak), -i, nvars, half))
    return FactoredRatFn.from_factors(nvars, items)


def d_classical(params: ClassicalParams, r: int, nvars: Optional[int] = None) -> FactoredRatFn:
    """(V - V^-1)^-r * d0 with V = v^b for the source algebra of the given parameters."""
    b = params.bfrak
    nv = r if nvars is None else nvars
    rank_part = FactoredRatFn.from_factors(nv, [_one_minus_v(2 * b, -r, nv)]) if r else FactoredRatFn.one(nv)
    return rank_part * d_zero(params.mminus, params.mplus, b, nv)


def d_target(delta_minus: int, delta_plus: int, l: int, nvars: Optional[int] = None) -> FactoredRatFn:
    """(v - v^-1)^-l (v + v^-1)^(-delta_- delta_+), up to a power of v."""
    nv = l if nvars is None else nvars
    items = [_one_minus_v(2, -l, nv)]
    if delta_minus * delta_plus:
        items.append(_one_minus_v(2, -1, nv, _half()))
    return FactoredRatFn.from_factors(nv, [it for it in items if it[1]])


def d_exceptional(family: str) -> FactoredRatFn:
    """Normalization of the Iwahori-Hecke algebras G2(3,1) and F4(2,1), up to a power of v."""
    if family == "G2":
        items = [_one_minus_v(2, -1, 2), _one_minus_v(6, -1, 2)]
        return FactoredRatFn.from_factors(2, items)
    if family == "F4":
        items = [_one_minus_v(2, -2, 4), _one_minus_v(4, -2, 4)]
        return FactoredRatFn.from_factors(4, items)
    raise ValueError(f"no tabulated normalization for {family}")


def exceptional_spec(family: str, long_param: int, short_param: int,
                     d: Optional[FactoredRatFn] = None) -> HeckeSpec:
    roots = RootSystemSpec(family, 2 if family == "G2" else 4)
    if d is None and (family, long_param, short_param) in (("G2", 3, 1), ("F4", 2, 1)):
        d = d_exceptional(family)
    params = {"long": (Fraction(long_param), Fraction(0)), "short": (Fraction(short_param), Fraction(0))}
    return HeckeSpec(roots, params, 1, d, f"{family}({long_param},{short_param})")


def classical_spec(rank: int, mminus, mplus, base: int = 1,
                   d: Optional[FactoredRatFn] = None, label: str = "") -> HeckeSpec:
    """Type B_rank with pair parameter base and single parameters base*(m+, m-)."""
    mm, mp = Fraction(mminus), Fraction(mplus)
    params = {"pair": (Fraction(1), Fraction(0)), "single": (mp, mm)}
    return HeckeSpec(RootSystemSpec("B", rank), params, base, d,
                     label or f"B{rank}({mm},{mp})[q^{base}]")


def mu_classical(params: ClassicalParams, r: int, role: str = "source",
                 with_d: bool = True) -> FactoredRatFn:
    """Rewritten type-B mu of rank r.

    role "source": parameters (m-, m+) with base q^b and normalization d^r.
    role "target": parameters (delta-, delta+) with base q and d^r_{delta-,delta+}.
    """
    if role == "source":
        d = d_classical(params, r) if with_d else None
        spec = classical_spec(r, params.mminus, params.mplus, params.bfrak, d)
    elif role == "target":
        dm, dp = params.delta
        if dm is None:
            raise ValueError("target role needs extra-special parameters")
        d = d_target(dm, dp, r) if with_d else None
        spec = classical_spec(r, dm, dp, 1, d)
    else:
        raise ValueError(f"unknown role {role!r}")
    return mu_classical_from_spec(spec)
