"""Compare the compiled and pure-Python counting kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from hecketransfer import kernels
from hecketransfer.exactalg import zeta_order
from hecketransfer.mu import exceptional_spec
from hecketransfer.residual import _root_data
from hecketransfer.roots import positive_roots


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=20000, help="random F4 points for net_counts")
    ap.add_argument("--bound", type=int, default=6, help="G2 grid v-exponent bound")
    args = ap.parse_args()

    py = kernels.python_kernels
    print(f"selected implementation: {kernels.IMPLEMENTATION}")
    N = zeta_order()

    g2 = exceptional_spec("G2", 3, 1)
    roots, ep, em = _root_data(g2)
    rexps = [r.exps for r in roots]
    zv = list(range(N))
    t_c, out_c = _best(lambda: kernels.grid_scan(2, zv, args.bound, rexps, ep, em, N), args.repeat)
    t_p, out_p = _best(lambda: py.grid_scan(2, zv, args.bound, rexps, ep, em, N), args.repeat)
    assert sorted(out_c) == sorted(out_p), "grid_scan implementations disagree"
    npts = (len(zv) * (2 * args.bound + 1)) ** 2
    print(f"grid_scan G2 ({npts} points): compiled {t_c * 1e3:.1f} ms, python {t_p * 1e3:.1f} ms, "
          f"speedup {t_p / t_c:.1f}x, residual {len(out_c)}")

    f4 = exceptional_spec("F4", 2, 1)
    roots, ep, em = _root_data(f4)
    rexps = [r.exps for r in positive_roots(f4.roots)]
    rng = random.Random(0)
    zetas = [[rng.randrange(N) for _ in range(4)] for _ in range(args.points)]
    vexps = [[rng.randint(-18, 18) for _ in range(4)] for _ in range(args.points)]
    t_c, out_c = _best(lambda: kernels.net_counts(zetas, vexps, rexps, ep, em, N), args.repeat)
    t_p, out_p = _best(lambda: py.net_counts(zetas, vexps, rexps, ep, em, N), args.repeat)
    assert list(out_c) == list(out_p), "net_counts implementations disagree"
    print(f"net_counts F4 ({args.points} points): compiled {t_c * 1e3:.1f} ms, python {t_p * 1e3:.1f} ms, "
          f"speedup {t_p / t_c:.1f}x")


if __name__ == "__main__":
    main()
