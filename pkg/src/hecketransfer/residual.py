"""Residual points, residues as cyclotomic products, and residual-point search."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import kernels
from .exactalg import (FactoredRatFn, IrrationalCoefficients, Monomial, NonCyclotomicRemainder,
                       SignedCycloProduct, cyclo_present, divisors, substitute, zeta_order)
from .mu import HeckeSpec, build_mu, classical_spec
from .roots import positive_roots, weyl_orbit

__all__ = [
    "EnumerationResult",
    "OrbitReport",
    "ResidueReport",
    "SearchConfig",
    "TorusPoint",
    "enumerate_residual_points",
    "galois_conjugates",
    "grid_residual_points",
    "one_plus_q_power",
    "parse_coordinate",
    "parse_point",
    "phi_base_point",
    "psi_base_point",
    "residue_at",
    "residue_closed_form_phi",
    "residue_closed_form_psi",
]


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[Monomial, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if any(not c.is_numeric() for c in coords):
            raise ValueError("torus point coordinates must not involve variables")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: Monomial) -> "TorusPoint":
        return cls(tuple(coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(_render_coord(c) for c in self.coords) + ")"


def _render_coord(m: Monomial) -> str:
    """Inverse of parse_coordinate, e.g. '-q^-3', 'e(1/3)*q^{7/2}'."""
    n = zeta_order()
    sign = ""
    parts = []
    if 2 * m.zeta == n:
        sign = "-"
    elif m.zeta:
        g = gcd(m.zeta, n)
        parts.append(f"e({m.zeta // g}/{n // g})")
    if m.vexp:
        p = Fraction(m.vexp, 2)
        parts.append("q" if p == 1 else f"q^{p}" if p.denominator == 1 else f"q^{{{p}}}")
    return sign + ("*".join(parts) or "1")


@dataclass
class ResidueReport:
    point: TorusPoint
    is_residual: bool
    dropped_num: int
    dropped_den: int
    residue: Optional[SignedCycloProduct] = None
    value: Optional[FactoredRatFn] = None
    note: str = ""

    @property
    def net(self) -> int:
        return self.dropped_den - self.dropped_num


def residue_at(spec: HeckeSpec, point, bound: int = 64, mu: Optional[FactoredRatFn] = None) -> ResidueReport:
    """Regularized value of mu at a point, with the residual-point test."""
    if not isinstance(point, TorusPoint):
        point = TorusPoint(tuple(point))
    if point.rank != spec.rank:
        raise ValueError(f"point has rank {point.rank}, algebra has rank {spec.rank}")
    mu = build_mu(spec) if mu is None else mu
    sub = substitute(mu, point.coords)
    report = ResidueReport(point, sub.dropped_denominator - sub.dropped_numerator == spec.rank,
                           sub.dropped_numerator, sub.dropped_denominator, value=sub.value)
    if report.is_residual:
        report.residue = cyclo_present(sub.value, bound)
    return report


# -- closed forms ----------------------------------------------------------

def one_plus_q_power(k: int) -> dict[int, int]:
    """Phi-exponents of q^|k| + 1 (for k = 0 this is the constant 2, returned as {})."""
    k = abs(k)
    if k == 0:
        return {}
    return {d: 1 for d in divisors(2 * k) if k % d}


def _accumulate(target: dict[int, int], part: dict[int, int], power: int) -> None:
    for n, e in part.items():
        target[n] = target.get(n, 0) + power * e


def residue_closed_form_phi(mminus, mplus) -> SignedCycloProduct:
    """(q - 1)^(m+ - 1/2) / prod_{k = m- - m+ + 1}^{m- + m+ - 1} (q^k + 1)."""
    mm, mp = Fraction(mminus), Fraction(mplus)
    if mm.denominator != 2 or mp.denominator != 2 or mp <= Fraction(1, 2):
        raise ValueError("need m+- in Z + 1/2 and m+ > 1/2")
    exps: dict[int, int] = {1: int(mp - Fraction(1, 2))}
    c = Fraction(1)
    for k in range(int(mm - mp + 1), int(mm + mp - 1) + 1):
        if k == 0:
            c /= 2
        _accumulate(exps, one_plus_q_power(k), -1)
    return SignedCycloProduct.make(c, 0, exps)


def residue_closed_form_psi(mminus, mplus) -> SignedCycloProduct:
    """(q - 1)^(2(m+ - 1)) / [prod_{k = m- - m+ + 2}^{m- + m+ - 2} (q^k + 1)^2
    * (q^(m+ - m- - 1) + 1)(q^(m+ + m- - 1) + 1)]."""
    mm, mp = Fraction(mminus), Fraction(mplus)
    if mm.denominator != 1 or mp.denominator != 1 or mp <= 0:
        raise ValueError("need integral m- and a positive integral m+")
    mm, mp = int(mm), int(mp)
    exps: dict[int, int] = {1: 2 * (mp - 1)}
    c = Fraction(1)
    for k in range(mm - mp + 2, mm + mp - 2 + 1):
        if k == 0:
            c /= 4
        _accumulate(exps, one_plus_q_power(k), -2)
    for k in (mp - mm - 1, mp + mm - 1):
        if k == 0:
            c /= 2
        _accumulate(exps, one_plus_q_power(k), -1)
    return SignedCycloProduct.make(c, 0, exps)


def phi_base_point(mplus) -> TorusPoint:
    """t_i = v^(2i - 1) for i = 1 .. m+ - 1/2."""
    k = int(Fraction(mplus) - Fraction(1, 2))
    return TorusPoint(tuple(Monomial(0, 2 * i - 1, ()) for i in range(1, k + 1)))


def psi_base_point(mplus) -> TorusPoint:
    """t_i = v^(2 floor(i/2)) for i = 1 .. 2(m+ - 1)."""
    k = 2 * (int(mplus) - 1)
    return TorusPoint(tuple(Monomial(0, 2 * (i // 2), ()) for i in range(1, k + 1)))


def phi_base_residue(mminus, mplus) -> ResidueReport:
    """Residue of the d = 1 mu with parameters (m-, m+ - 1) at the phi base point."""
    point = phi_base_point(mplus)
    spec = classical_spec(point.rank, mminus, Fraction(mplus) - 1)
    return residue_at(spec, point)


def psi_base_residue(mminus, mplus) -> ResidueReport:
    """Residue of the d = 1 mu with parameters (m-, m+ - 2) at the psi base point."""
    point = psi_base_point(mplus)
    spec = classical_spec(point.rank, mminus, Fraction(mplus) - 2)
    return residue_at(spec, point)


# -- enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    exp_bound: Optional[int] = None  # bound on |v-exponent| per coordinate
    zeta_values: Optional[tuple[int, ...]] = None  # allowed zeta exponents (default all)
    merge_galois: bool = True
    cyclo_bound: int = 64

    def bound_for(self, spec: HeckeSpec) -> int:
        if self.exp_bound is not None:
            return self.exp_bound
        top = max(abs(2 * spec.base * mp) for mp, _ in spec.params.values()) if spec.params else 1
        return int(top) * max(spec.rank, 1) + 2


@dataclass
class OrbitReport:
    representative: TorusPoint
    orbit_size: int
    report: Optional[ResidueReport]
    galois_class: int = 0
    members_found: int = 1


@dataclass
class EnumerationResult:
    spec_label: str
    orbits: list[OrbitReport]
    galois_classes: int
    exp_bound: int
    candidates: int
    residual_points: int
    skipped_fractional: int = 0
    skipped_outside_zeta: int = 0
    disclaimer: str = field(default="")

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


def _root_data(spec: HeckeSpec):
    roots = positive_roots(spec.roots)
    ep = []
    em = []
    for r in roots:
        mp, mm = spec.params[r.cls]
        ep.append(int(2 * spec.base * mp))
        em.append(int(2 * spec.base * mm))
    return roots, ep, em


def _det_adj(mat: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Determinant and adjugate via fraction-free Gaussian elimination on [A | I]."""
    n = len(mat)
    rows = [[Fraction(x) for x in mat[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return 0, []
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        rows[c] = [x / piv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    d = int(det)
    adj = [[int(rows[i][n + j] * d) for j in range(n)] for i in range(n)]
    return d, adj


def _torsion(adj: list[list[int]], det: int) -> list[tuple[int, ...]]:
    """The group A^-1 Z^n / Z^n as integer vectors mod |det| (numerators over det)."""
    n = len(adj)
    mod = abs(det)
    gens = [tuple(adj[i][j] % mod for i in range(n)) for j in range(n)]
    group = {tuple([0] * n)}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                s = tuple((a + b) % mod for a, b in zip(g, h))
                if s not in group:
                    group.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(group)


def _equation_options(ep: int, em: int) -> list[tuple[int, int]]:
    """(sign, v-exponent) pairs for the pole conditions of one root; sign 1 means -1."""
    opts = []
    if ep:
        opts += [(0, ep), (0, -ep)]
    if em:
        opts += [(1, em), (1, -em)]
    return opts


def _solver_candidates(spec: HeckeSpec, bound: int, zeta_ok: set[int]):
    n = spec.rank
    N = zeta_order()
    roots, ep, em = _root_data(spec)
    cands: set[tuple[int, ...]] = set()
    frac_skips = zeta_skips = 0
    if n == 0:
        return {()}, 0, 0
    for subset in itertools.combinations(range(len(roots)), n):
        mat = [list(roots[i].exps) for i in subset]
        det, adj = _det_adj(mat)
        if det == 0:
            continue
        tors = _torsion(adj, det)
        mod = abs(det)
        sgn = 1 if det > 0 else -1
        for choice in itertools.product(*[_equation_options(ep[i], em[i]) for i in subset]):
            signs = [c[0] for c in choice]
            vex = [c[1] for c in choice]
            # x = adj * vex / det
            xs = []
            ok = True
            for i in range(n):
                num = sum(adj[i][j] * vex[j] for j in range(n))
                if num % det:
                    ok = False
                    break
                xs.append(num // det)
            if not ok:
                frac_skips += 1
                continue
            if any(abs(x) > bound for x in xs):
                continue
            # unit turns: (adj * signs / 2 + g) / det, as multiples of 1/(2 |det|)
            base = [sgn * sum(adj[i][j] * signs[j] for j in range(n)) for i in range(n)]
            for g in tors:
                zs = []
                for i in range(n):
                    num = (base[i] + 2 * g[i]) * N
                    den = 2 * mod
                    if num % den:
                        ok = False
                        break
                    zs.append((num // den) % N)
                if not ok:
                    zeta_skips += 1
                    ok = True
                    continue
                if any(z not in zeta_ok for z in zs):
                    zeta_skips += 1
                    continue
                cands.add(tuple(x for pair in zip(zs, xs) for x in pair))
    return cands, frac_skips, zeta_skips


def _net_counts(spec: HeckeSpec, points: Sequence[tuple[int, ...]]) -> list[int]:
    roots, ep, em = _root_data(spec)
    if not points:
        return []
    n = spec.rank
    zetas = [[p[2 * i] for i in range(n)] for p in points]
    vexps = [[p[2 * i + 1] for i in range(n)] for p in points]
    return kernels.net_counts(zetas, vexps, [r.exps for r in roots], ep, em, zeta_order())


def _to_point(flat: tuple[int, ...]) -> tuple[Monomial, ...]:
    return tuple(Monomial(flat[2 * i], flat[2 * i + 1], ()) for i in range(len(flat) // 2))


def _to_flat(point: Sequence[Monomial]) -> tuple[int, ...]:
    return tuple(x for m in point for x in (m.zeta, m.vexp))


def _orbit(spec: HeckeSpec, point: tuple[Monomial, ...]) -> list[tuple[Monomial, ...]]:
    return weyl_orbit(spec.roots, point)


def _galois(flat: tuple[int, ...], u: int) -> tuple[int, ...]:
    N = zeta_order()
    return tuple((x * u) % N if i % 2 == 0 else x for i, x in enumerate(flat))


def _sort_key(flat: tuple[int, ...]):
    # prefer small |v-exponent|, then positive exponents, then trivial units
    return tuple((abs(x), -x) if i % 2 else (x, 0) for i, x in enumerate(flat))


def _group_orbits(spec: HeckeSpec, residual: Iterable[tuple[int, ...]], merge_galois: bool):
    owner: dict[tuple[int, ...], int] = {}
    orbits: list[list[tuple[int, ...]]] = []
    found_count: list[int] = []
    for flat in sorted(residual, key=_sort_key):
        if flat in owner:
            found_count[owner[flat]] += 1
            continue
        members = [_to_flat(p) for p in _orbit(spec, _to_point(flat))]
        idx = len(orbits)
        for m in members:
            owner[m] = idx
        orbits.append(members)
        found_count.append(1)
    parent = list(range(len(orbits)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if merge_galois:
        N = zeta_order()
        units = [u for u in range(1, N) if gcd(u, N) == 1]
        for idx, members in enumerate(orbits):
            for u in units:
                other = owner.get(_galois(members[0], u))
                if other is not None:
                    a, b = find(idx), find(other)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    return orbits, found_count, [find(i) for i in range(len(orbits))]


def enumerate_residual_points(spec: HeckeSpec, search: Optional[SearchConfig] = None) -> EnumerationResult:
    """Residual points up to Weyl orbit (and Galois conjugation of units).

    Candidates solve rank-many independent pole equations exactly; every
    candidate is then tested with the full pole/zero count.  Completeness is
    relative to the v-exponent bound and the allowed roots of unity.
    """
    search = search or SearchConfig()
    if spec.rank > 4:
        raise ValueError("enumeration is limited to rank <= 4")
    N = zeta_order()
    bound = search.bound_for(spec)
    zeta_ok = set(search.zeta_values) if search.zeta_values is not None else set(range(N))
    cands, frac_skips, zeta_skips = _solver_candidates(spec, bound, zeta_ok)
    cands_list = sorted(cands)
    nets = _net_counts(spec, cands_list)
    residual = [c for c, k in zip(cands_list, nets) if k == spec.rank]
    orbits, found, classes = _group_orbits(spec, residual, search.merge_galois)
    mu = build_mu(spec)
    reports = []
    class_ids: dict[int, int] = {}
    seen_class: set[int] = set()
    for idx, members in enumerate(orbits):
        cls = classes[idx]
        if search.merge_galois and cls in seen_class:
            continue
        seen_class.add(cls)
        class_ids.setdefault(cls, len(class_ids))
        rep = min(members, key=_sort_key)
        point = TorusPoint(_to_point(rep))
        try:
            rep_report = residue_at(spec, point, search.cyclo_bound, mu=mu)
        except (IrrationalCoefficients, NonCyclotomicRemainder) as exc:
            sub = substitute(mu, point.coords)
            rep_report = ResidueReport(point, True, sub.dropped_numerator, sub.dropped_denominator,
                                       value=sub.value, note=str(exc))
        reports.append(OrbitReport(point, len(members), rep_report, class_ids[cls], found[idx]))
    disclaimer = (f"complete only for coordinates zeta_{N}^a v^e with |e| <= {bound}; "
                  "points outside the bound are not searched")
    return EnumerationResult(spec.label, reports, len(class_ids), bound, len(cands_list), len(residual),
                             frac_skips, zeta_skips, disclaimer)


def grid_residual_points(spec: HeckeSpec, exp_bound: Optional[int] = None,
                         zeta_values: Optional[Sequence[int]] = None, use_python: bool = False):
    """Exhaustive scan of the coordinate grid; returns residual points as flat tuples."""
    N = zeta_order()
    bound = SearchConfig(exp_bound).bound_for(spec)
    zv = list(zeta_values) if zeta_values is not None else list(range(N))
    roots, ep, em = _root_data(spec)
    impl = kernels.python_kernels if use_python else kernels
    return impl.grid_scan(spec.rank, zv, bound, [r.exps for r in roots], ep, em, N)


# -- point strings -----------------------------------------------------------

_UNIT_TOKENS = {"i": 4, "t3": 3}


def _unit_exponent(turns: Fraction) -> int:
    n = zeta_order()
    a = turns * n
    if a.denominator != 1:
        raise ValueError(f"root of unity of order {turns.denominator} needs a zeta order divisible by it "
                         f"(current {n})")
    return int(a) % n


def _parse_q_power(tok: str) -> int:
    """'q', 'q^2', 'q^-4', 'q^{7/2}', 'q^(7/2)', 'v^3' as a v-exponent."""
    base, _, power = tok.partition("^")
    p = Fraction(power.strip("{}()")) if power else Fraction(1)
    if base == "v":
        if p.denominator != 1:
            raise ValueError(f"fractional power of v in {tok!r}")
        return int(p)
    if base != "q":
        raise ValueError(f"unknown symbol {tok!r}")
    if (2 * p).denominator != 1:
        raise ValueError(f"q^{p} is not an integral power of v")
    return int(2 * p)


def parse_coordinate(text: str) -> Monomial:
    """One coordinate: [-] factors joined by '*'; factors are 1, i, t3, z^a, e(p/q), q^p, v^k."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty coordinate")
    turns = Fraction(0)
    vexp = 0
    if text.startswith("-"):
        turns += Fraction(1, 2)
        text = text[1:]
    for tok in text.split("*"):
        if tok == "1":
            continue
        if tok in _UNIT_TOKENS:
            turns += Fraction(1, _UNIT_TOKENS[tok])
        elif re.fullmatch(r"z\^-?\d+", tok):
            turns += Fraction(int(tok[2:]), zeta_order())
        elif re.fullmatch(r"e\(-?\d+/\d+\)", tok):
            turns += Fraction(tok[2:-1])
        elif re.fullmatch(r"[qv](\^(-?\d+(/\d+)?|\{-?\d+(/\d+)?\}|\(-?\d+(/\d+)?\)))?", tok):
            vexp += _parse_q_power(tok)
        else:
            raise ValueError(f"cannot parse coordinate factor {tok!r}")
    return Monomial(_unit_exponent(turns % 1), vexp, ())


def parse_point(text: str) -> TorusPoint:
    """'(q^2, t3*q^-4, q, q)' -> TorusPoint."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("a point is written as a parenthesized, comma-separated list")
    body = text[1:-1].strip()
    if not body:
        return TorusPoint(())
    return TorusPoint(tuple(parse_coordinate(c) for c in body.split(",")))


def galois_conjugates(point: TorusPoint) -> list[TorusPoint]:
    """Images of the point under zeta -> zeta^u for units u mod N (identity first)."""
    n = zeta_order()
    out = []
    for u in range(1, n):
        if gcd(u, n) == 1:
            img = TorusPoint(tuple(Monomial(c.zeta * u, c.vexp, ()) for c in point.coords))
            if img not in out:
                out.append(img)
    return out
