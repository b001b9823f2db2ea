"""Kernel backend selection.

The density-evolution inner loop is provided by a Cython extension
(``scldpc._core.kernel``) with a pure-Python twin (``kernel_py``) used when
the extension has not been built.  Both expose

    run_window(m, C, V, edge_b, edge_col, row_ptr, row_entry, col_ptr,
               col_entry, frozen_b, frozen_pv, channel, p_V, p_C,
               target_cols, delta, max_iters, stall_eps, app0_out,
               stop_on_target=True)
        -> (status, iterations)

``stop_on_target=False`` iterates to the fixed point (progress below
stall_eps or every column converged) before judging the targets.

operating in place on the per-edge message arrays ``p_V``/``p_C`` and writing
the per-column a-posteriori dimension-0 mass into ``app0_out``.  Row CSR
entries >= len(edge_b) address frozen boundary messages (index minus
len(edge_b) into ``frozen_pv``/``frozen_b``); those contribute to check
updates but are never rewritten.
"""

from . import kernel_py

STATUS_SUCCESS = kernel_py.STATUS_SUCCESS
STATUS_MAX_ITERS = kernel_py.STATUS_MAX_ITERS
STATUS_STALLED = kernel_py.STATUS_STALLED

try:
    from . import kernel as _impl

    COMPILED = True
except ImportError:  # extension not built; fall back to the Python twin
    _impl = kernel_py
    COMPILED = False

run_window = _impl.run_window


def get_backend(name: str):
    """Return a kernel module by name ('compiled' or 'python')."""
    if name == "python":
        return kernel_py
    if name == "compiled":
        if not COMPILED:
            raise RuntimeError("compiled kernel is not available")
        from . import kernel

        return kernel
    raise ValueError(f"unknown backend {name!r}")
