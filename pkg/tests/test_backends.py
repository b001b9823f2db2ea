"""Compiled kernel vs pure-Python twin."""

import subprocess
import sys

import numpy as np
import pytest

import scldpc as s
from scldpc import _core
from scldpc.pde import Graph
from scldpc.subspace import get_tables, initial_message


def _run_once(kernel, base, m, eps, iters):
    g = Graph(base.entries)
    tb = get_tables(m)
    chan = initial_message(m, eps).probs
    channel = np.tile(chan, (g.n_cols, 1))
    p_V = np.tile(chan, (g.n_edges, 1))
    p_C = np.zeros((g.n_edges, m + 1))
    p_C[:, m] = 1.0
    app0 = np.zeros(g.n_cols)
    targets = np.arange(g.n_cols, dtype=np.int32)
    status, n = kernel.run_window(
        m, tb.C, tb.V, g.edge_b, g.edge_col, g.row_ptr, g.row_entry,
        g.col_ptr, g.col_entry, np.zeros(0, dtype=np.int32),
        np.zeros((0, m + 1)), channel, p_V, p_C, targets,
        1e-6, iters, 1e-12, app0)
    return status, n, p_V, p_C, app0


def test_compiled_backend_available():
    # the build step should have produced the extension here
    assert _core.COMPILED


@pytest.mark.parametrize("name,eps,m", [
    ("B(3,6,2)", 0.40, 2),
    ("C1(3,6,3,2,L=8)", 0.45, 3),
    ("C2(3,6,2,L=8)", 0.48, 2),
])
def test_backends_agree(name, eps, m):
    base = s.parse_ensemble(name).base_matrix()
    fast = _core.get_backend("compiled")
    slow = _core.get_backend("python")
    sa, na, pva, pca, appa = _run_once(fast, base, m, eps, 300)
    sb, nb, pvb, pcb, appb = _run_once(slow, base, m, eps, 300)
    assert sa == sb
    assert na == nb
    assert np.allclose(pva, pvb, atol=1e-10)
    assert np.allclose(pca, pcb, atol=1e-10)
    assert np.allclose(appa, appb, atol=1e-10)


def test_get_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _core.get_backend("gpu")


def test_benchmark_module_runs():
    out = subprocess.run(
        [sys.executable, "-m", "scldpc.benchmark",
         "--ensemble", "C1(3,6,2,2,L=10)", "--epsilon", "0.35", "--repeat", "1"],
        capture_output=True, text=True, timeout=300)
    assert out.returncode == 0, out.stderr
    assert "speedup" in out.stdout.lower()
