"""Randomized equality testing by exact evaluation in a prime field.

Values are computed in F_p with p = 1 mod L, where L covers every root of
unity that occurs; the chosen element of order L stands in for exp(2 pi i / L).
This is an exact image of the cyclotomic field, so a ratio that differs
between trials proves the two functions are not proportional.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import isprime

from .cyclotomic import CycRational, lcm, zeta_order
from .frf import FactoredRatFn

__all__ = ["RandomCompare", "random_compare", "random_equal"]

_PRIME_BITS = 61
_SAMPLE_BITS = 20
_MAX_RESAMPLE = 64


def _field_order(*fs: FactoredRatFn) -> int:
    order = zeta_order()
    for f in fs:
        order = lcm(order, f.coeff.order)
        for fac in f.factors:
            order = lcm(order, fac.phase.denominator)
    return order


def _prime(order: int, rng: random.Random) -> int:
    k = rng.randrange(1 << (_PRIME_BITS - 1), 1 << _PRIME_BITS) // order
    while True:
        p = k * order + 1
        if isprime(p):
            return p
        k += 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _element_of_order(order: int, p: int, rng: random.Random) -> int:
    primes = _prime_factors(order)
    while True:
        g = pow(rng.randrange(2, p - 1), (p - 1) // order, p)
        if all(pow(g, order // r, p) != 1 for r in primes):
            return g


class _Evaluator:
    def __init__(self, order: int, p: int, root: int):
        self.order, self.p, self.root = order, p, root

    def frac(self, x: Fraction) -> int:
        return x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p

    def turns(self, t: Fraction) -> int:
        return pow(self.root, int(t * self.order) % self.order, self.p)

    def cyc(self, c: CycRational) -> int:
        z = pow(self.root, self.order // c.order, self.p)
        acc, zk = 0, 1
        for x in c.coeffs:
            if x:
                acc += self.frac(x) * zk
            zk = zk * z % self.p
        return acc % self.p

    def monomial(self, exps, point) -> int:
        acc = 1
        for e, x in zip(exps, point):
            if e:
                acc = acc * pow(x, e, self.p) % self.p
        return acc

    def value(self, f: FactoredRatFn, point) -> Optional[int]:
        p = self.p
        num = self.cyc(f.coeff) * self.monomial(f.lead.exps, point) % p
        den = 1
        for fac, e in f.factors.items():
            b = (1 - self.turns(fac.phase) * self.monomial(fac.exps, point)) % p
            if b == 0:
                return None
            if e > 0:
                num = num * pow(b, e, p) % p
            else:
                den = den * pow(b, -e, p) % p
        if num == 0:
            return None
        return num * pow(den, -1, p) % p


def _rational_reconstruct(a: int, p: int) -> Optional[Fraction]:
    """Smallest n/d = a mod p with |n|, d below sqrt(p/2)."""
    bound = int((p // 2) ** 0.5)
    r0, r1, s0, s1 = p, a % p, 0, 1
    while r1 > bound:
        quo = r0 // r1
        r0, r1 = r1, r0 - quo * r1
        s0, s1 = s1, s0 - quo * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


@dataclass(frozen=True)
class RandomCompare:
    equal: bool
    trials: int
    prime: int
    ratio_mod_p: Optional[int]
    ratio: Optional[Fraction]


def _random_rational(rng: random.Random, greater_than_one: bool = False) -> Fraction:
    top = 1 << _SAMPLE_BITS
    if greater_than_one:
        d = rng.randrange(1, top)
        return Fraction(d + rng.randrange(1, top), d)
    x = Fraction(rng.randrange(1, top), rng.randrange(1, top))
    return -x if rng.random() < 0.5 else x


def random_compare(a: FactoredRatFn, b: FactoredRatFn, trials: int = 20,
                   seed: int = 0) -> RandomCompare:
    """Test a / b for constancy at random rational specializations."""
    if a.nvars != b.nvars:
        raise ValueError("variable counts differ")
    rng = random.Random(seed)
    order = _field_order(a, b)
    p = _prime(order, rng)
    ev = _Evaluator(order, p, _element_of_order(order, p, rng))
    ratio = None
    for _ in range(trials):
        for _attempt in range(_MAX_RESAMPLE):
            point = [ev.frac(_random_rational(rng, True))]
            point += [ev.frac(_random_rational(rng)) for _ in range(a.nvars)]
            va, vb = ev.value(a, point), ev.value(b, point)
            if va is not None and vb is not None:
                break
        else:
            raise ArithmeticError("could not find a specialization avoiding all factors")
        r = va * pow(vb, -1, p) % p
        if ratio is None:
            ratio = r
        elif r != ratio:
            return RandomCompare(False, trials, p, None, None)
    return RandomCompare(True, trials, p, ratio, _rational_reconstruct(ratio, p))


def random_equal(a: FactoredRatFn, b: FactoredRatFn, trials: int = 20, seed: int = 0) -> bool:
    """True when a = c * b for one constant c at every sampled point."""
    return random_compare(a, b, trials, seed).equal
