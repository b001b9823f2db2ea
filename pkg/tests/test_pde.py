"""Flooding density evolution: binary oracle, anchors, invariances."""

import numpy as np
import pytest

import scldpc as s
from scldpc.pde import FsdRunner, Graph, PdeConfig, run_fsd
from scldpc.subspace import initial_message

from binary_oracle import binary_de_threshold


def test_block_36_binary_matches_oracle_and_literature():
    spec = s.parse_ensemble("B(3,6,1)")
    got = s.fsd_threshold(spec, tol=1e-7).epsilon
    want = binary_de_threshold(spec.base_matrix().entries)
    assert got == pytest.approx(want, abs=1e-6)
    assert got == pytest.approx(0.4294, abs=1e-3)


def test_coupled_binary_matches_oracle():
    spec = s.parse_ensemble("C1(3,6,1,2,L=8)")
    got = s.fsd_threshold(spec, tol=1e-6, config=PdeConfig(max_iters=100000)).epsilon
    want = binary_de_threshold(spec.base_matrix().entries, tol=1e-7)
    assert got == pytest.approx(want, abs=2e-6)


def test_m1_iteration_equivalence():
    # at m = 1 the vector DE must reduce to the scalar DE exactly, iteration
    # by iteration; compare dimension-1 mass against the scalar recursion
    spec = s.parse_ensemble("C1(3,6,1,2,L=4)")
    B = spec.base_matrix().entries
    eps = 0.42
    from scldpc import _core
    from scldpc.subspace import get_tables

    g = Graph(B)
    tb = get_tables(1)
    chan = initial_message(1, eps).probs
    channel = np.tile(chan, (g.n_cols, 1))
    p_V = np.tile(chan, (g.n_edges, 1))
    p_C = np.zeros((g.n_edges, 2))
    p_C[:, 1] = 1.0
    app0 = np.zeros(g.n_cols)
    targets = np.arange(g.n_cols, dtype=np.int32)
    nf = np.zeros(0, dtype=np.int32)
    nfp = np.zeros((0, 2))

    x = {(int(i), int(j)): eps for i, j in zip(g.edge_row, g.edge_col)}
    rows, cols = B.shape
    for it in range(30):
        _core.run_window(1, tb.C, tb.V, g.edge_b, g.edge_col, g.row_ptr,
                         g.row_entry, g.col_ptr, g.col_entry, nf, nfp, channel,
                         p_V, p_C, targets, 1e-15, 1, -1.0, app0)
        q = {}
        for (i, j) in x:
            prod = 1.0
            for jj in range(cols):
                b = B[i, jj]
                if not b:
                    continue
                prod *= (1.0 - x[(i, jj)]) ** (b - 1 if jj == j else b)
            q[(i, j)] = 1.0 - prod
        newx = {}
        for (i, j) in x:
            y = eps
            for ii in range(rows):
                b = B[ii, j]
                if not b:
                    continue
                y *= q[(ii, j)] ** (b - 1 if ii == i else b)
            newx[(i, j)] = y
        x = newx
        for e in range(g.n_edges):
            key = (int(g.edge_row[e]), int(g.edge_col[e]))
            assert p_V[e, 1] == pytest.approx(x[key], abs=1e-12)


def test_epsilon_monotonicity():
    spec = s.parse_ensemble("B(3,6,2)")
    base = spec.base_matrix()
    runner = FsdRunner(base, 2)
    outcomes = [runner.run(e).success for e in (0.05, 0.2, 0.35, 0.45, 0.6, 0.9)]
    # once decoding fails it stays failed
    assert outcomes == sorted(outcomes, reverse=True)


def test_block_anchor_gf4():
    # (2,4) over GF(4): known non-binary block threshold
    got = s.fsd_threshold(s.parse_ensemble("B(2,4,2)"), tol=1e-6).epsilon
    assert got == pytest.approx(0.4096, abs=2e-4)


def test_eps_zero_decodes_in_zero_iterations():
    out = run_fsd(s.parse_ensemble("B(3,6,3)").base_matrix(), 3, 0.0)
    assert out.success
    assert out.iterations == 0


def test_eps_one_fails():
    out = run_fsd(s.parse_ensemble("B(3,6,2)").base_matrix(), 2, 1.0)
    assert not out.success


def test_row_permutation_invariance_of_run():
    spec = s.parse_ensemble("C1(3,6,2,2,L=5)")
    base = spec.base_matrix()
    perm = base.permuted_rows(list(reversed(range(base.rows))))
    for eps in (0.3, 0.46):
        a = run_fsd(base, 2, eps)
        b = run_fsd(perm, 2, eps)
        assert a.success == b.success
        assert a.iterations == b.iterations


def test_kernel_matches_reference_updates():
    # one flooding iteration of the kernel vs the dictionary reference
    from scldpc import _core, pde
    from scldpc.subspace import get_tables

    spec = s.parse_ensemble("C1(3,6,2,2,L=5)")
    base = spec.base_matrix()
    m, eps = 2, 0.47
    tb = get_tables(m)
    g = Graph(base.entries)
    chan = initial_message(m, eps)
    channel = np.tile(chan.probs, (g.n_cols, 1))
    p_V = np.tile(chan.probs, (g.n_edges, 1))
    p_C = np.zeros((g.n_edges, m + 1))
    p_C[:, m] = 1.0
    app0 = np.zeros(g.n_cols)
    targets = np.arange(g.n_cols, dtype=np.int32)
    nf = np.zeros(0, dtype=np.int32)
    nfp = np.zeros((0, m + 1))
    chan_map = {j: chan for j in range(g.n_cols)}

    st = pde.initialize(base, m, eps)
    for it in range(10):
        _core.run_window(m, tb.C, tb.V, g.edge_b, g.edge_col, g.row_ptr,
                         g.row_entry, g.col_ptr, g.col_entry, nf, nfp, channel,
                         p_V, p_C, targets, 1e-15, 1, -1.0, app0)
        st = pde.check_update(st, base)
        st = pde.variable_update(st, base, channel=chan_map)
        for e in range(g.n_edges):
            key = (int(g.edge_row[e]), int(g.edge_col[e]))
            ref = st.p_v[key].probs
            assert np.allclose(p_V[e], ref / ref.sum(), atol=1e-12)
        for j in range(g.n_cols):
            ref = pde.app(st, base, channel=chan_map, j=j).probs
            assert app0[j] == pytest.approx(ref[0] / ref.sum(), abs=1e-12)
