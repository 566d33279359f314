"""Pure-Python pole/zero counting kernels (fallback for the compiled module).

A point is given by per-coordinate (zeta exponent mod N, v exponent).  A root
with exponent vector k takes the value zeta^(k.a) v^(k.e).  Per positive root
with parameters (ep, em) = (2 b m_plus, 2 b m_minus), measured in powers of v:

  zeros: value 1 counts 2; value -1 counts 2
  poles: value v^(+-ep) counts 1 each; value -v^(+-em) counts 1 each

The net count is poles minus zeros; a point is residual when it equals the rank.
"""

from __future__ import annotations

import itertools

IMPLEMENTATION = "python"


def _root_net(z: int, e: int, ep: int, em: int, half: int) -> int:
    net = 0
    if z == 0:
        if e == 0:
            net -= 2
        if e == ep:
            net += 1
        if e == -ep:
            net += 1
    elif z == half:
        if e == 0:
            net -= 2
        if e == em:
            net += 1
        if e == -em:
            net += 1
    return net


def net_counts(zetas, vexps, roots, ep, em, order: int) -> list[int]:
    """Net pole count for each point.

    zetas, vexps: P x n integer arrays; roots: R x n; ep, em: length R.
    """
    half = order // 2
    roots = [list(map(int, r)) for r in roots]
    ep = list(map(int, ep))
    em = list(map(int, em))
    out = []
    for za, ve in zip(zetas, vexps):
        za = list(map(int, za))
        ve = list(map(int, ve))
        net = 0
        for k, p, m in zip(roots, ep, em):
            z = 0
            e = 0
            for ki, ai, ei in zip(k, za, ve):
                if ki:
                    z += ki * ai
                    e += ki * ei
            net += _root_net(z % order, e, p, m, half)
        out.append(net)
    return out


def grid_scan(rank: int, zeta_values, vexp_bound: int, roots, ep, em, order: int) -> list[tuple]:
    """All points with coordinates zeta^a v^e (a in zeta_values, |e| <= bound) whose net count is rank.

    Returns tuples (a_1, e_1, ..., a_n, e_n).
    """
    half = order // 2
    roots = [list(map(int, r)) for r in roots]
    ep = list(map(int, ep))
    em = list(map(int, em))
    coords = [(int(a), e) for a in zeta_values for e in range(-vexp_bound, vexp_bound + 1)]
    found = []
    for point in itertools.product(coords, repeat=rank):
        net = 0
        for k, p, m in zip(roots, ep, em):
            z = 0
            e = 0
            for ki, (ai, ei) in zip(k, point):
                if ki:
                    z += ki * ai
                    e += ki * ei
            net += _root_net(z % order, e, p, m, half)
        if net == rank:
            found.append(tuple(x for c in point for x in c))
    return found
