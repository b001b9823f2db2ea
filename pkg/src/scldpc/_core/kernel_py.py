"""Pure-Python density-evolution kernel (fallback when the extension is absent).

Implements the same contract as the compiled ``kernel`` module: one call runs
BP density evolution on a (sub)graph until the target columns converge, the
iteration cap is hit, or progress stalls.  See ``scldpc._core`` for the
interface description.
"""

from __future__ import annotations

import numpy as np

STATUS_SUCCESS = 0
STATUS_MAX_ITERS = 1
STATUS_STALLED = 2


def _boxtimes(C, p1, p2):
    return np.einsum("ijn,i,j->n", C, p1, p2)


def _boxdot(V, p1, p2):
    return np.einsum("ijn,i,j->n", V, p1, p2)


def _pow(table, combine, p, e, identity):
    out = identity
    for _ in range(e):
        out = combine(table, out, p)
    return out


def _normalize(v):
    np.clip(v, 0.0, None, out=v)
    s = v.sum()
    if s > 0:
        v /= s
    return v


def run_window(
    m,
    C,
    V,
    edge_b,
    edge_col,
    row_ptr,
    row_entry,
    col_ptr,
    col_entry,
    frozen_b,
    frozen_pv,
    channel,
    p_V,
    p_C,
    target_cols,
    delta,
    max_iters,
    stall_eps,
    app0_out,
    stop_on_target=True,
):
    msize = m + 1
    n_edges = p_V.shape[0]
    n_rows = len(row_ptr) - 1
    n_cols = len(col_ptr) - 1
    d0 = np.zeros(msize)
    d0[0] = 1.0
    dm = np.zeros(msize)
    dm[m] = 1.0

    def pv_of(entry):
        if entry < n_edges:
            return p_V[entry], int(edge_b[entry])
        f = entry - n_edges
        return frozen_pv[f], int(frozen_b[f])

    def compute_app():
        for j in range(n_cols):
            acc = dm.copy()
            for a in range(col_ptr[j], col_ptr[j + 1]):
                e = col_entry[a]
                acc = _pow(V, _boxdot, p_C[e], int(edge_b[e]), acc)
            acc = _boxdot(V, acc, channel[j])
            _normalize(acc)
            app0_out[j] = acc[0]

    def converged():
        return all(app0_out[j] >= 1.0 - delta for j in target_cols)

    compute_app()
    if converged():
        return STATUS_SUCCESS, 0

    prev = app0_out.copy()
    for it in range(1, max_iters + 1):
        # check-to-variable update
        for i in range(n_rows):
            lo, hi = row_ptr[i], row_ptr[i + 1]
            d = hi - lo
            powm1 = []
            q = []
            for a in range(d):
                pv, b = pv_of(row_entry[lo + a])
                pm1 = _pow(C, _boxtimes, pv, b - 1, d0)
                powm1.append(pm1)
                q.append(_boxtimes(C, pm1, pv))
            prefix = [d0]
            for a in range(d):
                prefix.append(_boxtimes(C, prefix[-1], q[a]))
            suffix = [d0]
            for a in range(d - 1, -1, -1):
                suffix.append(_boxtimes(C, suffix[-1], q[a]))
            suffix.reverse()
            for a in range(d):
                e = row_entry[lo + a]
                if e >= n_edges:
                    continue
                ext = _boxtimes(C, prefix[a], suffix[a + 1])
                p_C[e] = _normalize(_boxtimes(C, ext, powm1[a]))
        # variable-to-check update plus a-posteriori check
        for j in range(n_cols):
            lo, hi = col_ptr[j], col_ptr[j + 1]
            d = hi - lo
            powm1 = []
            r = []
            for a in range(d):
                e = col_entry[lo + a]
                pm1 = _pow(V, _boxdot, p_C[e], int(edge_b[e]) - 1, dm)
                powm1.append(pm1)
                r.append(_boxdot(V, pm1, p_C[e]))
            prefix = [dm]
            for a in range(d):
                prefix.append(_boxdot(V, prefix[-1], r[a]))
            suffix = [dm]
            for a in range(d - 1, -1, -1):
                suffix.append(_boxdot(V, suffix[-1], r[a]))
            suffix.reverse()
            for a in range(d):
                e = col_entry[lo + a]
                ext = _boxdot(V, prefix[a], suffix[a + 1])
                ext = _boxdot(V, ext, powm1[a])
                p_V[e] = _normalize(_boxdot(V, ext, channel[j]))
            acc = _boxdot(V, prefix[d], channel[j])
            _normalize(acc)
            app0_out[j] = acc[0]
        if converged():
            # in fixed-point mode keep iterating until the whole window is done
            if stop_on_target or all(app0_out[j] >= 1.0 - delta for j in range(n_cols)):
                return STATUS_SUCCESS, it
        if np.max(app0_out - prev) < stall_eps:
            return (STATUS_SUCCESS if converged() else STATUS_STALLED), it
        prev[:] = app0_out
    # budget exhausted; converged targets still count (fixed-point tail cut short)
    return (STATUS_SUCCESS if converged() else STATUS_MAX_ITERS), max_iters
