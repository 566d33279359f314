import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecketransfer import kernels
from hecketransfer.mu import classical_spec, exceptional_spec
from hecketransfer.residual import _root_data
from hecketransfer.roots import positive_roots

N = 24
compiled = pytest.mark.skipif(kernels.IMPLEMENTATION != "cython", reason="compiled kernels not built")


def root_data(spec):
    roots, ep, em = _root_data(spec)
    return [r.exps for r in roots], list(ep), list(em)


SPECS = {
    "G2": exceptional_spec("G2", 3, 1),
    "F4": exceptional_spec("F4", 2, 1),
    "B3": classical_spec(3, 1, 2),
}


def test_compiled_kernels_selected():
    assert kernels.IMPLEMENTATION in ("cython", "python")
    assert kernels.python_kernels.IMPLEMENTATION == "python"


def test_pure_python_override():
    env = dict(os.environ, HECKETRANSFER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from hecketransfer import kernels; print(kernels.IMPLEMENTATION)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_net_count_examples():
    py = kernels.python_kernels
    # single root with ep = 2: v^2 is a pole, 1 is a double zero, -1 is a double zero
    assert py.net_counts([[0], [0], [12], [0]], [[2], [0], [0], [-2]], [[1]], [2], [0], N) == [1, -2, -2 + 2, 1]
    assert py.net_counts([[12]], [[1]], [[1]], [2], [1], N) == [1]


@compiled
@given(st.sampled_from(sorted(SPECS)), st.data())
@settings(max_examples=60, deadline=None)
def test_net_counts_implementations_agree(name, data):
    spec = SPECS[name]
    roots, ep, em = root_data(spec)
    n = spec.rank
    pts = data.draw(st.lists(st.tuples(st.lists(st.integers(0, N - 1), min_size=n, max_size=n),
                                       st.lists(st.integers(-12, 12), min_size=n, max_size=n)),
                             min_size=1, max_size=40))
    zetas = [p[0] for p in pts]
    vexps = [p[1] for p in pts]
    want = kernels.python_kernels.net_counts(zetas, vexps, roots, ep, em, N)
    assert list(kernels.net_counts(zetas, vexps, roots, ep, em, N)) == want


@compiled
@pytest.mark.parametrize("name,bound", [("G2", 5), ("B3", 5)])
def test_grid_scan_implementations_agree(name, bound):
    spec = SPECS[name]
    roots, ep, em = root_data(spec)
    zv = [0, 12] if spec.rank > 2 else list(range(N))
    a = kernels.grid_scan(spec.rank, zv, bound, roots, ep, em, N)
    b = kernels.python_kernels.grid_scan(spec.rank, zv, bound, roots, ep, em, N)
    assert sorted(map(tuple, a)) == sorted(b)
    assert b


def test_grid_scan_hits_have_rank_net_count():
    spec = SPECS["G2"]
    roots, ep, em = root_data(spec)
    py = kernels.python_kernels
    hits = py.grid_scan(2, list(range(N)), 4, roots, ep, em, N)
    zetas = [[h[0], h[2]] for h in hits]
    vexps = [[h[1], h[3]] for h in hits]
    assert set(py.net_counts(zetas, vexps, roots, ep, em, N)) == {2}


def test_root_data_covers_all_positive_roots():
    for spec in SPECS.values():
        roots, ep, em = root_data(spec)
        assert len(roots) == len(ep) == len(em) == len(positive_roots(spec.roots))
