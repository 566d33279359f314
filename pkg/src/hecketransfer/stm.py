"""The three torus morphisms phi, psi, xi between classical Hecke algebras and
the exact check that they pull the target mu back onto the source mu."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import floor
from typing import Optional, Sequence

from .exactalg import (Factor, FactoredRatFn, Monomial, SignedCycloProduct, compare_up_to_unit,
                       cyclo_present, random_compare, substitute, zeta_order)
from .mu import (HeckeSpec, build_mu, classical_spec, classify_params, d_classical, d_target,
                 d_zero, kappa_eps)
from .residual import one_plus_q_power

__all__ = [
    "InductionConstants",
    "Morphism",
    "T3Report",
    "induction_constants",
    "induction_closed_form",
    "phi",
    "psi",
    "r_e",
    "sigma_e",
    "target_rank_closed_form",
    "target_rank_floor",
    "verify_T3",
    "weyl_stm",
    "xi",
    "xi_ab",
]


@dataclass(frozen=True)
class Morphism:
    source_rank: int
    target_rank: int
    coord_map: tuple[Monomial, ...]
    source: HeckeSpec
    target: HeckeSpec
    family: str

    def __post_init__(self):
        if len(self.coord_map) != self.target_rank:
            raise ValueError("coordinate list length differs from the target rank")
        if any(m.nvars != self.source_rank for m in self.coord_map):
            raise ValueError("coordinates must be monomials in the source variables")

    @property
    def tail(self) -> tuple[Monomial, ...]:
        """The constant coordinates (no source variables)."""
        return tuple(m for m in self.coord_map if m.is_numeric())

    def is_finite(self) -> bool:
        """The s-exponent matrix has full column rank n."""
        rows = [list(map(Fraction, m.sexps)) for m in self.coord_map if not m.is_numeric()]
        return _rank(rows, self.source_rank) == self.source_rank

    def with_tail(self, tail: Sequence[Monomial]) -> "Morphism":
        """Same morphism with the constant coordinates replaced in order."""
        it = iter(tail)
        coords = tuple(next(it) if m.is_numeric() else m for m in self.coord_map)
        return Morphism(self.source_rank, self.target_rank, coords, self.source, self.target, self.family)


def _rank(rows: list[list[Fraction]], ncols: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass
class T3Report:
    ok: bool
    c: Optional[Fraction]
    vexp: Optional[int]
    codim_check: bool
    dropped_num: int
    dropped_den: int
    random_agrees: bool
    diagnostics: dict[Factor, int] = field(default_factory=dict)
    pulled_back: Optional[FactoredRatFn] = None
    source_mu: Optional[FactoredRatFn] = None

    def diagnostics_str(self) -> dict[str, int]:
        return {f"(1-{fac.w})": e for fac, e in self.diagnostics.items()}


# -- point strings -----------------------------------------------------------

def _q(power, nvars: int = 0, negate: bool = False) -> Monomial:
    return Monomial.q(power, nvars, zeta_order() // 2 if negate else 0)


def _check_quarter(m) -> Fraction:
    m = Fraction(m)
    if (4 * m).denominator != 1 or (2 * m).denominator == 1:
        raise ValueError(f"{m} is not in Z +- 1/4")
    return m


def sigma_e(m, nvars: int = 0) -> tuple[Monomial, ...]:
    """(q^delta, q^(delta + 1), ..., q^(2m - 3/2)) for m in Z +- 1/4, m > 1."""
    m = _check_quarter(m)
    if m <= 1:
        raise ValueError("sigma_e needs m > 1")
    _, _, delta = kappa_eps(m)
    top = 2 * m - Fraction(3, 2)
    return tuple(_q(k, nvars) for k in range(delta, int(top) + 1))


def r_e(m, nvars: int = 0) -> tuple[Monomial, ...]:
    """Recursive string: empty for m in {1/4, 3/4}, else sigma_e(m) followed by r_e(m - 1)."""
    m = _check_quarter(m)
    if m <= 0:
        raise ValueError("r_e needs m > 0")
    out: list[Monomial] = []
    while m > 1:
        out += sigma_e(m, nvars)
        m -= 1
    return tuple(out)


def _floor_l(m) -> int:
    kappa, eps, _ = kappa_eps(Fraction(m))
    return floor(kappa * (kappa + eps - Fraction(1, 2)))


def target_rank_floor(n: int, mminus, mplus) -> int:
    """2n + floor(l-) + floor(l+) with l = kappa (kappa + eps - 1/2)."""
    return 2 * n + _floor_l(mminus) + _floor_l(mplus)


def xi_ab(mminus, mplus) -> tuple[int, int]:
    """Integers (a, b) for the case-split rank formula.

    With t = 2m - 1/2 for each parameter: a = (t+ + t-)/2 and b = floor((t+ - t-)/4)
    when t+ - t- is even, else a = (t+ - t- - 1)/2 and b = floor((t+ + t- + 1)/4).
    The parameters are ordered so that t+ >= t-.
    """
    tm, tp = (int(2 * _check_quarter(x) - Fraction(1, 2)) for x in (mminus, mplus))
    tm, tp = min(tm, tp), max(tm, tp)
    if (tp - tm) % 2 == 0:
        return (tp + tm) // 2, (tp - tm) // 4
    return (tp - tm - 1) // 2, (tp + tm + 1) // 4


def target_rank_closed_form(n: int, mminus, mplus) -> int:
    """2n + a(a+1)/2 + 2b(b+1) in case V, 2n + a(a+1)/2 + 2b^2 - delta+ in case VI."""
    params = classify_params(mminus, mplus)
    if not params.extra_special:
        raise ValueError("rank formula applies to the extra-special cases only")
    a, b = xi_ab(mminus, mplus)
    tri = a * (a + 1) // 2
    if params.cls == "V":
        return 2 * n + tri + 2 * b * (b + 1)
    return 2 * n + tri + 2 * b * b - params.delta_plus


# -- constructors ----------------------------------------------------------------

def _identity_coords(n: int) -> list[Monomial]:
    return [Monomial.var(i, n) for i in range(n)]


def phi(n: int, mminus, mplus) -> Morphism:
    """(s_1, ..., s_n, v, v^3, ..., v^(2 m+ - 2)): source (m-, m+), target (m-, m+ - 1)."""
    mm, mp = Fraction(mminus), Fraction(mplus)
    if mm.denominator != 2 or mp.denominator != 2 or mp <= Fraction(1, 2):
        raise ValueError("phi needs m+- in Z + 1/2 and m+ > 1/2")
    src = classify_params(mm, mp)
    tgt = classify_params(mm, mp - 1)
    b = src.bfrak
    tail = [Monomial(0, b * (2 * i - 1), (0,) * n) for i in range(1, int(mp - Fraction(1, 2)) + 1)]
    coords = tuple(_identity_coords(n) + tail)
    l = len(coords)
    source = classical_spec(n, mm, mp, b, d_classical(src, n), f"phi source B{n}({mm},{mp})")
    target = classical_spec(l, mm, mp - 1, b, d_classical(tgt, l), f"phi target B{l}({mm},{mp - 1})")
    return Morphism(n, l, coords, source, target, "phi")


def psi(n: int, mminus, mplus) -> Morphism:
    """(s_1, ..., s_n, 1, q, q, ..., q^(m+ - 2), q^(m+ - 2), q^(m+ - 1)): target (m-, m+ - 2)."""
    mm, mp = Fraction(mminus), Fraction(mplus)
    if mp.denominator != 1 or mp <= 0 or mm.denominator != 1:
        raise ValueError("psi needs m+ in Z>0 and integral m-")
    src = classify_params(mm, mp)
    tgt = classify_params(mm, mp - 2)
    b = src.bfrak
    k = int(mp)
    tail = []
    if k > 1:
        tail = [Monomial(0, 0, (0,) * n)]
        for j in range(1, k - 1):
            tail += [_q(b * j, n), _q(b * j, n)]
        tail.append(_q(b * (k - 1), n))
    coords = tuple(_identity_coords(n) + tail)
    l = len(coords)
    source = classical_spec(n, mm, mp, b, d_classical(src, n), f"psi source B{n}({mm},{mp})")
    target = classical_spec(l, mm, mp - 2, b, d_classical(tgt, l), f"psi target B{l}({mm},{mp - 2})")
    return Morphism(n, l, coords, source, target, "psi")


def xi(n: int, mminus, mplus, source_d: Optional[FactoredRatFn] = None) -> Morphism:
    """(-r_e(m-), v^-1 s_1, v s_1, ..., v^-1 s_n, v s_n, r_e(m+)); source base q^2, target base q."""
    mm, mp = _check_quarter(mminus), _check_quarter(mplus)
    if mm <= 0 or mp <= 0:
        raise ValueError("xi needs m+- > 0")
    src = classify_params(mm, mp)
    neg = [Monomial(zeta_order() // 2, m.vexp, m.sexps) for m in r_e(mm, n)]
    mid = []
    for i in range(n):
        s = Monomial.var(i, n)
        mid += [Monomial(0, -1, s.sexps), Monomial(0, 1, s.sexps)]
    coords = tuple(neg + mid + list(r_e(mp, n)))
    l = len(coords)
    dm, dp = src.delta
    d = d_classical(src, n) if source_d is None else source_d
    source = classical_spec(n, mm, mp, src.bfrak, d, f"xi source B{n}({mm},{mp})[q^2]")
    target = classical_spec(l, dm, dp, 1, d_target(dm, dp, l), f"xi target B{l}({dm},{dp})")
    return Morphism(n, l, coords, source, target, "xi")


def weyl_stm(spec: HeckeSpec, perm: Sequence[int], signs: Optional[Sequence[int]] = None) -> Morphism:
    """s_i -> s_perm(i)^(+-1) as a rank-preserving self-morphism of a type-B algebra."""
    if spec.roots.family != "B":
        raise ValueError("weyl_stm needs a type-B algebra")
    n = spec.rank
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of range(rank)")
    signs = [1] * n if signs is None else list(signs)
    coords = tuple(Monomial.var(p, n, sg) for p, sg in zip(perm, signs))
    return Morphism(n, n, coords, spec, spec, "weyl")


# -- verification --------------------------------------------------------------

def _random_unit_search(a: FactoredRatFn, b: FactoredRatFn, seed: int, trials: int):
    """Randomized route: is a / (b v^k) constant for some k in the degree window?"""
    window = a.degree_bound() + b.degree_bound() + 2
    for k in range(-window, window + 1):
        rc = random_compare(a, b.scale(1, k), trials, seed)
        if rc.equal:
            return rc.ratio, k
    return None


def verify_T3(m: Morphism, seed: int = 0, trials: int = 12) -> T3Report:
    """Pull back the regularized target mu and compare with the source mu up to c v^k."""
    target_mu = build_mu(m.target)
    sub = substitute(target_mu, m.coord_map)
    codim_ok = sub.dropped_denominator - sub.dropped_numerator == m.target_rank - m.source_rank
    source_mu = build_mu(m.source)
    exact = compare_up_to_unit(sub.value, source_mu)
    if exact is not None:
        c, k = exact
        rc = random_compare(sub.value, source_mu.scale(c, k), trials, seed)
        random_ok = rc.equal and rc.ratio == 1
        diag: dict[Factor, int] = {}
    else:
        random_ok = _random_unit_search(sub.value, source_mu, seed, trials) is None
        c = k = None
        diag = dict((sub.value / source_mu).factors)
    return T3Report(exact is not None and codim_ok and random_ok, c, k, codim_ok,
                    sub.dropped_numerator, sub.dropped_denominator, random_ok, diag,
                    sub.value, source_mu)


# -- induction constants -------------------------------------------------------

@dataclass
class InductionConstants:
    C: SignedCycloProduct
    A: SignedCycloProduct
    closed_form: SignedCycloProduct

    @property
    def equal(self) -> bool:
        return self.C.equal_up_to_unit(self.A) and self.A.equal_up_to_unit(self.closed_form)


def _rank0_residue(mminus, mplus) -> SignedCycloProduct:
    """Residue of the target mu without d at the rank-0 xi image point."""
    m = xi(0, mminus, mplus)
    sub = substitute(build_mu(replace(m.target, d=None)), m.coord_map)
    if sub.dropped_denominator - sub.dropped_numerator != m.target_rank:
        raise ArithmeticError("rank-0 image point is not residual")
    return cyclo_present(sub.value)


def _a_ratio(fixed, moving) -> SignedCycloProduct:
    """d^{l0'} d0(moving) / (d^{l0} d0(moving - 1)) for the parameter being lowered."""
    hi = classify_params(fixed, moving)
    lo = classify_params(fixed, moving - 1)
    l0 = _floor_l(fixed) + _floor_l(moving)
    l0p = _floor_l(fixed) + _floor_l(moving - 1)
    num = d_target(lo.delta[0], lo.delta[1], l0p, 0) * d_zero(fixed, moving, 2)
    den = d_target(hi.delta[0], hi.delta[1], l0, 0) * d_zero(fixed, moving - 1, 2)
    return cyclo_present(num / den)


def induction_closed_form(mminus, mplus) -> SignedCycloProduct:
    """(1 - q)^(A+ + 1 - delta+) (1 + q)^(delta- (-1)^(1 - delta+))
    / [(1 + q) ... (1 + q^(A+ - A- - 1)) (1 + q^(A+ - A- + 1)) (1 + q^(A+ - A- + 3)) ... (1 + q^(A+ + A- + 1))]
    with A = 2m - 3/2."""
    p = classify_params(mminus, mplus)
    dm, dp = p.delta
    ap = int(2 * Fraction(mplus) - Fraction(3, 2))
    am = int(2 * Fraction(mminus) - Fraction(3, 2))
    exps: dict[int, int] = {1: ap + 1 - dp}
    for n, e in one_plus_q_power(1).items():
        exps[n] = exps.get(n, 0) + dm * (-1) ** (1 - dp)
    for k in list(range(1, ap - am)) + list(range(ap - am + 1, ap + am + 2, 2)):
        for n, e in one_plus_q_power(k).items():
            exps[n] = exps.get(n, 0) - e
    return SignedCycloProduct.make(1, 0, exps)


def induction_constants(mminus, mplus, lower: str = "plus") -> InductionConstants:
    """C from residues at the two rank-0 image points, A from the normalization ratio.

    lower="plus" compares (m-, m+) with (m-, m+ - 1); lower="minus" compares with (m- - 1, m+).
    """
    mm, mp = _check_quarter(mminus), _check_quarter(mplus)
    if lower == "plus":
        if not (mp >= mm > 0 and mp > 1):
            raise ValueError("need m+ >= m- > 0 and m+ > 1")
        C = _rank0_residue(mm, mp) / _rank0_residue(mm, mp - 1)
        A = _a_ratio(mm, mp)
        closed = induction_closed_form(mm, mp)
    elif lower == "minus":
        if not (mm > mp > 0 and mm > 1):
            raise ValueError("need m- > m+ > 0 and m- > 1")
        C = _rank0_residue(mm, mp) / _rank0_residue(mm - 1, mp)
        A = _a_ratio(mp, mm)
        closed = induction_closed_form(mp, mm)
    else:
        raise ValueError(f"lower must be 'plus' or 'minus', not {lower!r}")
    return InductionConstants(C, A, closed)
