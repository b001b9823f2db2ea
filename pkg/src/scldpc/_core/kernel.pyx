# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled density-evolution kernel: hot inner loops of the BP message updates."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    _SUCCESS = 0
    _MAX_ITERS = 1
    _STALLED = 2

STATUS_SUCCESS = _SUCCESS
STATUS_MAX_ITERS = _MAX_ITERS
STATUS_STALLED = _STALLED


cdef inline void _boxtimes(const double[:, :, ::1] C, const double* a, const double* b,
                           double* out, int msize) noexcept nogil:
    # out[n] = sum_{i<=n} sum_{n-i<=j<=n} C[i,j,n] a[i] b[j]; bounds match the
    # coefficient support max(i,j) <= n <= i+j.
    cdef int n, i, j
    cdef double s, ai
    for n in range(msize):
        s = 0.0
        for i in range(n + 1):
            ai = a[i]
            if ai == 0.0:
                continue
            for j in range(n - i, n + 1):
                s += C[i, j, n] * ai * b[j]
        out[n] = s


cdef inline void _boxdot(const double[:, :, ::1] V, const double* a, const double* b,
                         double* out, int msize) noexcept nogil:
    # Support: n <= min(i,j), i+j-m <= n, i.e. i,j in [n, m] with j <= m-i+n.
    cdef int n, i, j, m = msize - 1
    cdef double s, ai
    for n in range(msize):
        s = 0.0
        for i in range(n, msize):
            ai = a[i]
            if ai == 0.0:
                continue
            for j in range(n, m - i + n + 1):
                s += V[i, j, n] * ai * b[j]
        out[n] = s


cdef inline void _pow_op(const double[:, :, ::1] T, bint is_check, const double* p, int e,
                         double* out, double* tmp, int msize) noexcept nogil:
    cdef int n, r
    for n in range(msize):
        out[n] = 0.0
    if is_check:
        out[0] = 1.0
    else:
        out[msize - 1] = 1.0
    for r in range(e):
        if is_check:
            _boxtimes(T, out, p, tmp, msize)
        else:
            _boxdot(T, out, p, tmp, msize)
        for n in range(msize):
            out[n] = tmp[n]


cdef inline void _normalize(double* v, int msize) noexcept nogil:
    cdef int n
    cdef double s = 0.0
    for n in range(msize):
        if v[n] < 0.0:
            v[n] = 0.0
        s += v[n]
    if s > 0.0:
        for n in range(msize):
            v[n] /= s


def run_window(
    int m,
    const double[:, :, ::1] C,
    const double[:, :, ::1] V,
    const int[::1] edge_b,
    const int[::1] edge_col,
    const int[::1] row_ptr,
    const int[::1] row_entry,
    const int[::1] col_ptr,
    const int[::1] col_entry,
    const int[::1] frozen_b,
    const double[:, ::1] frozen_pv,
    const double[:, ::1] channel,
    double[:, ::1] p_V,
    double[:, ::1] p_C,
    const int[::1] target_cols,
    double delta,
    int max_iters,
    double stall_eps,
    double[::1] app0_out,
    bint stop_on_target=True,
):
    cdef int msize = m + 1
    cdef int n_edges = p_V.shape[0]
    cdef int n_rows = row_ptr.shape[0] - 1
    cdef int n_cols = col_ptr.shape[0] - 1
    cdef int n_targets = target_cols.shape[0]
    cdef int max_deg = 0, d, i, j, a, e, lo, hi, it, n, b
    for i in range(n_rows):
        d = row_ptr[i + 1] - row_ptr[i]
        if d > max_deg:
            max_deg = d
    for j in range(n_cols):
        d = col_ptr[j + 1] - col_ptr[j]
        if d > max_deg:
            max_deg = d

    scratch = np.empty((4 * (max_deg + 1) + 3, msize))
    cdef double[:, ::1] buf = scratch
    cdef double* powm1_base = &buf[0, 0]
    cdef double* q_base = &buf[max_deg + 1, 0]
    cdef double* pre_base = &buf[2 * (max_deg + 1), 0]
    cdef double* suf_base = &buf[3 * (max_deg + 1), 0]
    cdef double* tmp = &buf[4 * (max_deg + 1), 0]
    cdef double* tmp2 = &buf[4 * (max_deg + 1) + 1, 0]
    cdef double* tmp3 = &buf[4 * (max_deg + 1) + 2, 0]

    prev_arr = np.empty(n_cols)
    cdef double[::1] prev = prev_arr
    cdef const double* pv
    cdef double minapp, minall, maxgain
    cdef int status = _MAX_ITERS
    cdef int iters = max_iters

    with nogil:
        # a-posteriori check with the current (possibly warm-started) messages
        for j in range(n_cols):
            for n in range(msize):
                pre_base[n] = 0.0
            pre_base[msize - 1] = 1.0
            for a in range(col_ptr[j], col_ptr[j + 1]):
                e = col_entry[a]
                _pow_op(V, 0, &p_C[e, 0], edge_b[e], tmp, tmp2, msize)
                _boxdot(V, pre_base, tmp, tmp3, msize)
                for n in range(msize):
                    pre_base[n] = tmp3[n]
            _boxdot(V, pre_base, &channel[j, 0], tmp, msize)
            _normalize(tmp, msize)
            app0_out[j] = tmp[0]
        minapp = 2.0
        for a in range(n_targets):
            if app0_out[target_cols[a]] < minapp:
                minapp = app0_out[target_cols[a]]
        if n_targets == 0 or minapp >= 1.0 - delta:
            status = _SUCCESS
            iters = 0
        else:
            for j in range(n_cols):
                prev[j] = app0_out[j]
            for it in range(1, max_iters + 1):
                # check-to-variable update
                for i in range(n_rows):
                    lo = row_ptr[i]
                    hi = row_ptr[i + 1]
                    d = hi - lo
                    for a in range(d):
                        e = row_entry[lo + a]
                        if e < n_edges:
                            pv = &p_V[e, 0]
                            b = edge_b[e]
                        else:
                            pv = &frozen_pv[e - n_edges, 0]
                            b = frozen_b[e - n_edges]
                        _pow_op(C, 1, pv, b - 1, powm1_base + a * msize, tmp, msize)
                        _boxtimes(C, powm1_base + a * msize, pv, q_base + a * msize, msize)
                    for n in range(msize):
                        pre_base[n] = 0.0
                        suf_base[d * msize + n] = 0.0
                    pre_base[0] = 1.0
                    suf_base[d * msize] = 1.0
                    for a in range(d):
                        _boxtimes(C, pre_base + a * msize, q_base + a * msize,
                                  pre_base + (a + 1) * msize, msize)
                    for a in range(d - 1, -1, -1):
                        _boxtimes(C, suf_base + (a + 1) * msize, q_base + a * msize,
                                  suf_base + a * msize, msize)
                    for a in range(d):
                        e = row_entry[lo + a]
                        if e >= n_edges:
                            continue
                        _boxtimes(C, pre_base + a * msize, suf_base + (a + 1) * msize, tmp, msize)
                        _boxtimes(C, tmp, powm1_base + a * msize, &p_C[e, 0], msize)
                        _normalize(&p_C[e, 0], msize)
                # variable-to-check update and a-posteriori check
                for j in range(n_cols):
                    lo = col_ptr[j]
                    hi = col_ptr[j + 1]
                    d = hi - lo
                    for a in range(d):
                        e = col_entry[lo + a]
                        _pow_op(V, 0, &p_C[e, 0], edge_b[e] - 1, powm1_base + a * msize, tmp, msize)
                        _boxdot(V, powm1_base + a * msize, &p_C[e, 0], q_base + a * msize, msize)
                    for n in range(msize):
                        pre_base[n] = 0.0
                        suf_base[d * msize + n] = 0.0
                    pre_base[msize - 1] = 1.0
                    suf_base[d * msize + msize - 1] = 1.0
                    for a in range(d):
                        _boxdot(V, pre_base + a * msize, q_base + a * msize,
                                pre_base + (a + 1) * msize, msize)
                    for a in range(d - 1, -1, -1):
                        _boxdot(V, suf_base + (a + 1) * msize, q_base + a * msize,
                                suf_base + a * msize, msize)
                    for a in range(d):
                        e = col_entry[lo + a]
                        _boxdot(V, pre_base + a * msize, suf_base + (a + 1) * msize, tmp, msize)
                        _boxdot(V, tmp, powm1_base + a * msize, tmp2, msize)
                        _boxdot(V, tmp2, &channel[j, 0], &p_V[e, 0], msize)
                        _normalize(&p_V[e, 0], msize)
                    _boxdot(V, pre_base + d * msize, &channel[j, 0], tmp, msize)
                    _normalize(tmp, msize)
                    app0_out[j] = tmp[0]
                minapp = 2.0
                for a in range(n_targets):
                    if app0_out[target_cols[a]] < minapp:
                        minapp = app0_out[target_cols[a]]
                minall = 2.0
                for j in range(n_cols):
                    if app0_out[j] < minall:
                        minall = app0_out[j]
                if minapp >= 1.0 - delta:
                    # in fixed-point mode keep going until the whole window is done
                    if stop_on_target or minall >= 1.0 - delta:
                        status = _SUCCESS
                        iters = it
                        break
                maxgain = -1.0
                for j in range(n_cols):
                    if app0_out[j] - prev[j] > maxgain:
                        maxgain = app0_out[j] - prev[j]
                    prev[j] = app0_out[j]
                if maxgain < stall_eps:
                    status = _SUCCESS if minapp >= 1.0 - delta else _STALLED
                    iters = it
                    break
            # at the cap, converged targets still count (fixed-point tail cut short)
            if status == _MAX_ITERS and minapp >= 1.0 - delta:
                status = _SUCCESS
    return status, iters
