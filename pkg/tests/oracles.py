"""Independent sympy oracle: dense symbolic evaluation of mu-products and residues.

Nothing here imports the package; root systems are rebuilt by reflection closure
from Cartan matrices and every function is expanded as an ordinary sympy expression.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

v = sp.symbols("v", positive=True)
q = sp.symbols("q", positive=True)

# Cartan matrices with entry [i][j] = <alpha_i, alpha_j^vee>; node order matches the
# package's coordinate convention (G2: long, short; F4: long, long, short, short).
CARTAN = {
    "G2": ((2, -3), (-1, 2)),
    "F4": ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
}
LONG_NODES = {"G2": {0}, "F4": {0, 1}}


def positive_roots_closure(family: str) -> list[tuple[tuple[int, ...], str]]:
    """Positive roots as simple-root coefficient vectors, with long/short labels."""
    cartan = CARTAN[family]
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    label = {s: ("long" if i in LONG_NODES[family] else "short") for i, s in enumerate(simple)}
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for j in range(n):
                # <r, alpha_j^vee> = sum_i r_i <alpha_i, alpha_j^vee>
                pair = sum(r[i] * cartan[i][j] for i in range(n))
                img = tuple(r[k] - (pair if k == j else 0) for k in range(n))
                if all(x >= 0 for x in img) and any(img) and img not in seen:
                    seen.add(img)
                    label[img] = label[r]
                    nxt.append(img)
        frontier = nxt
    return sorted(((r, label[r]) for r in seen), key=lambda t: (sum(t[0]), t[0]))


def unit(turns) -> sp.Expr:
    return sp.exp(2 * sp.pi * sp.I * sp.Rational(turns))


def coord(turns, qpow) -> sp.Expr:
    """exp(2 pi i turns) * q^qpow as an expression in v."""
    return sp.nsimplify(unit(turns)) * v ** sp.Integer(int(2 * Fraction(qpow)))


def _root_value(exps, point):
    val = sp.Integer(1)
    for k, c in zip(exps, point):
        val *= c ** k
    return sp.expand(val)


def _is_zero(expr) -> bool:
    return sp.simplify(sp.expand(expr)) == 0


def regularized(bricks, point):
    """bricks: list of (callable alpha -> expr, root exps, exponent).

    Returns (net pole order, regularized value)."""
    order = 0
    val = sp.Integer(1)
    for fn, exps, e in bricks:
        f = sp.expand(fn(_root_value(exps, point)))
        if _is_zero(f):
            order -= e
        else:
            val *= f ** e
    return order, val


def exceptional_bricks(family: str, params: dict[str, int]):
    out = []
    for exps, cls in positive_roots_closure(family):
        m = params[cls]
        out += [
            (lambda a: 1 - a ** -2, exps, 1),
            (lambda a: 1 - a ** 2, exps, 1),
            (lambda a, m=m: 1 - v ** (-2 * m) / a, exps, -1),
            (lambda a, m=m: 1 - v ** (-2 * m) * a, exps, -1),
            (lambda a: 1 + 1 / a, exps, -1),
            (lambda a: 1 + a, exps, -1),
        ]
    return out


def exceptional_d(family: str) -> sp.Expr:
    if family == "G2":
        return q ** 2 / ((q - 1) * (q ** 3 - 1))
    return q ** -3 / ((q - 1) ** 2 * (q ** 2 - 1) ** 2)


def type_b_bricks(rank: int, mminus, mplus, base: int = 1):
    """Rewritten type-B form with pair parameter q^base and single parameters q^(base m+-)."""
    Q = v ** (2 * base)
    ep = Q ** sp.Rational(Fraction(mplus))
    em = Q ** sp.Rational(Fraction(mminus))
    out = []
    for i in range(rank):
        e = tuple(int(k == i) for k in range(rank))
        out += [
            (lambda a: 1 - a ** 2, e, 2),
            (lambda a: 1 + em * a, e, -1),
            (lambda a: 1 + a / em, e, -1),
            (lambda a: 1 - ep * a, e, -1),
            (lambda a: 1 - a / ep, e, -1),
        ]
    for i, j in itertools.combinations(range(rank), 2):
        for sj in (-1, 1):
            e = tuple(1 if k == i else (sj if k == j else 0) for k in range(rank))
            out += [
                (lambda a: 1 - a ** 2, e, 2),
                (lambda a: 1 + a, e, -2),
                (lambda a: 1 - Q * a, e, -1),
                (lambda a: 1 - a / Q, e, -1),
            ]
    return out


def cyclotomic_exponents(expr: sp.Expr, bound: int = 64):
    """Write a rational function of v that is a function of q = v^2 as c v^k prod Phi_n(q)^e."""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    out: dict[int, int] = {}
    polys = []
    for part, sign in ((num, 1), (den, -1)):
        p = sp.Poly(sp.expand(part), v)
        # strip monomial content, then read as a polynomial in q
        low = min(m[0] for m in p.monoms())
        p = sp.Poly(sp.expand(part / v ** low), v)
        if any(m[0] % 2 for m in p.monoms()):
            raise ValueError("odd powers of v remain")
        pq = sp.Poly(sp.expand(p.as_expr().subs(v, sp.sqrt(q))), q)
        for n in range(1, bound + 1):
            phi = sp.Poly(sp.cyclotomic_poly(n, q), q)
            while True:
                quo, rem = sp.div(pq, phi)
                if not rem.is_zero:
                    break
                pq = quo
                out[n] = out.get(n, 0) + sign
        polys.append(pq)
    for pq in polys:
        if pq.degree() > 0 and len(pq.terms()) > 1:
            raise ValueError(f"non-cyclotomic remainder {pq}")
    return {n: e for n, e in sorted(out.items()) if e}


def exceptional_residue(family: str, params: dict[str, int], point, rank: int):
    order, val = regularized(exceptional_bricks(family, params), point)
    val = val * exceptional_d(family).subs(q, v ** 2)
    if order != rank:
        return order, None
    return order, cyclotomic_exponents(val)


def type_b_residue(rank, mminus, mplus, point, base: int = 1):
    order, val = regularized(type_b_bricks(rank, mminus, mplus, base), point)
    if order != rank:
        return order, None
    return order, cyclotomic_exponents(val)


def closed_form_phi(mminus, mplus) -> dict[int, int]:
    mm, mp = Fraction(mminus), Fraction(mplus)
    expr = (q - 1) ** int(mp - Fraction(1, 2))
    for k in range(int(mm - mp + 1), int(mm + mp - 1) + 1):
        expr /= q ** abs(k) + 1
    return cyclotomic_exponents(expr.subs(q, v ** 2))


def closed_form_psi(mminus, mplus) -> dict[int, int]:
    mm, mp = int(mminus), int(mplus)
    expr = (q - 1) ** (2 * (mp - 1))
    for k in range(mm - mp + 2, mm + mp - 1):
        expr /= (q ** abs(k) + 1) ** 2
    expr /= (q ** abs(mp - mm - 1) + 1) * (q ** abs(mp + mm - 1) + 1)
    return cyclotomic_exponents(expr.subs(q, v ** 2))
