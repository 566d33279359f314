"""Positive roots with class labels and Weyl-group actions on torus points.

Classical families use torus coordinates t_1..t_l; the exceptional families
use the values of the simple roots as coordinates, so a root's exponent vector
is its expansion in simple roots.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .exactalg import Monomial

__all__ = [
    "Root",
    "RootSystemSpec",
    "cartan_matrix",
    "positive_roots",
    "simple_reflection",
    "weyl_images",
    "weyl_orbit",
]

_EXCEPTIONAL_RANK = {"G2": 2, "F4": 4}


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "B", "D", "G2", "F4"):
            raise ValueError(f"unknown root system family {self.family!r}")
        want = _EXCEPTIONAL_RANK.get(self.family)
        if want is not None and self.rank != want:
            raise ValueError(f"{self.family} has rank {want}, not {self.rank}")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def basis(self) -> str:
        return "simple-root-values" if self.family in _EXCEPTIONAL_RANK else "torus-coordinates"

    @property
    def simple_labels(self) -> tuple[str, ...]:
        """Class of each coordinate for the exceptional families."""
        return {"G2": ("long", "short"), "F4": ("long", "long", "short", "short")}.get(self.family, ())

    @property
    def name(self) -> str:
        return self.family if self.family in _EXCEPTIONAL_RANK else f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    exps: tuple[int, ...]
    cls: str

    def monomial(self, point: Sequence[Monomial]) -> Monomial:
        """Value of the root at a point given by coordinate monomials."""
        out = Monomial.identity(point[0].nvars if point else 0)
        for e, c in zip(self.exps, point):
            if e:
                out = out * c**e
        return out


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _exceptional_vectors(family: str):
    """All roots and an ordered simple system (long first) as rational vectors."""
    h = Fraction(1, 2)
    if family == "G2":
        # inside the plane x1 + x2 + x3 = 0
        roots = []
        for i, j in itertools.permutations(range(3), 2):
            v = [0, 0, 0]
            v[i], v[j] = 1, -1
            roots.append(tuple(Fraction(x) for x in v))
        for i in range(3):
            for sign in (1, -1):
                v = [-sign] * 3
                v[i] = 2 * sign
                roots.append(tuple(Fraction(x) for x in v))
        simple = [(Fraction(-2), Fraction(1), Fraction(1)), (Fraction(1), Fraction(-1), Fraction(0))]
        return roots, simple
    roots = []
    for i, j in itertools.combinations(range(4), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * 4
            v[i], v[j] = Fraction(si), Fraction(sj)
            roots.append(tuple(v))
    for i in range(4):
        for s in (1, -1):
            v = [Fraction(0)] * 4
            v[i] = Fraction(s)
            roots.append(tuple(v))
    for signs in itertools.product((h, -h), repeat=4):
        roots.append(tuple(signs))
    z = Fraction(0)
    simple = [(z, Fraction(1), Fraction(-1), z), (z, z, Fraction(1), Fraction(-1)),
              (z, z, z, Fraction(1)), (h, -h, -h, -h)]
    return roots, simple


def _solve(gram: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    rows = [list(gram[i]) + [rhs[i]] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [x / piv for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def _exceptional_data(family: str):
    roots, simple = _exceptional_vectors(family)
    gram = [[_dot(a, b) for b in simple] for a in simple]
    long_len = max(_dot(r, r) for r in roots)
    out = []
    for r in roots:
        coeffs = _solve(gram, [_dot(a, r) for a in simple])
        if all(c.denominator == 1 for c in coeffs) and all(c >= 0 for c in coeffs):
            cls = "long" if _dot(r, r) == long_len else "short"
            out.append(Root(tuple(int(c) for c in coeffs), cls))
    out.sort(key=lambda r: (sum(r.exps), r.exps))
    cartan = tuple(tuple(int(2 * _dot(a, b) / _dot(b, b)) for b in simple) for a in simple)
    return tuple(out), cartan


def positive_roots(spec: RootSystemSpec) -> list[Root]:
    """Positive roots of the family, each labelled with its class."""
    n = spec.rank
    if spec.family in _EXCEPTIONAL_RANK:
        return list(_exceptional_data(spec.family)[0])
    out = []
    if spec.family == "B":
        for i in range(n):
            out.append(Root(tuple(int(k == i) for k in range(n)), "single"))
    for i, j in itertools.combinations(range(n), 2):
        minus = [0] * n
        minus[i], minus[j] = 1, -1
        out.append(Root(tuple(minus), "pair"))
        if spec.family != "A":
            plus = [0] * n
            plus[i], plus[j] = 1, 1
            out.append(Root(tuple(plus), "pair"))
    return out


def cartan_matrix(spec: RootSystemSpec) -> tuple[tuple[int, ...], ...]:
    """Entries <alpha_i, alpha_j^vee> for the simple roots of an exceptional family."""
    if spec.family not in _EXCEPTIONAL_RANK:
        raise ValueError("Cartan matrices are only tabulated for G2 and F4")
    return _exceptional_data(spec.family)[1]


def simple_reflection(spec: RootSystemSpec, j: int, point: Sequence[Monomial]) -> tuple[Monomial, ...]:
    """Action of s_j on simple-root-value coordinates: c_i -> c_i * c_j^(-<a_i, a_j^vee>)."""
    cartan = cartan_matrix(spec)
    cj = point[j]
    return tuple(c * cj ** (-cartan[i][j]) if cartan[i][j] else c for i, c in enumerate(point))


def weyl_orbit(spec: RootSystemSpec, point: Sequence[Monomial]) -> list[tuple[Monomial, ...]]:
    """The full Weyl orbit of a point (breadth-first over simple reflections)."""
    start = tuple(point)
    if spec.family in _EXCEPTIONAL_RANK:
        seen = {start}
        queue = deque([start])
        order = [start]
        while queue:
            cur = queue.popleft()
            for j in range(spec.rank):
                nxt = simple_reflection(spec, j, cur)
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
        return order
    return list(dict.fromkeys(weyl_images(start, spec.family)))


def weyl_images(point: Sequence[Monomial], family: str = "B", sample: Optional[int] = None,
                seed: int = 0) -> Iterator[tuple[Monomial, ...]]:
    """Signed permutations of the coordinates (t_i -> t_sigma(i)^(+-1)).

    With sample set, yields that many random images instead of the full orbit.
    """
    if family not in ("B", "D"):
        raise ValueError("signed permutations apply to type B coordinates")
    n = len(point)
    if sample is not None:
        rng = random.Random(seed)
        for _ in range(sample):
            perm = rng.sample(range(n), n)
            yield tuple(point[p] if rng.random() < 0.5 else point[p].inverse() for p in perm)
        return
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            if family == "D" and signs.count(-1) % 2:
                continue
            yield tuple(point[p] if s == 1 else point[p].inverse() for p, s in zip(perm, signs))
