"""Windowed density evolution over a spatially coupled base matrix.

The decoder slides a W-block window along the chain.  Within each window the
flooding kernel runs until the target block (the window's first column block)
converges; the recovered targets are then committed and feed later windows as
known-symbol boundary inputs.  Messages of the remaining in-window columns
persist when the window shifts, so later positions usually need only a few
extra iterations once the decoding wave is established.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _core
from .errors import InvalidArgumentError, WindowTooSmallError
from .pde import PdeConfig
from .protograph import BaseMatrix
from .subspace import get_tables, initial_message


@dataclass(frozen=True)
class WindowConfig(PdeConfig):
    """PdeConfig plus the window size in column blocks.

    ``stop_on_target`` stops a window as soon as the target block converges;
    the default iterates each window to its density-evolution fixed point
    before checking the target, which strengthens the messages handed to
    later windows (thresholds are defined at the fixed point).
    """

    W: int = 2
    stop_on_target: bool = False
    #: treat decoded columns as exactly known: their boundary messages into
    #: later windows are the zero-dimension point mass, modelling a decoder
    #: that commits the recovered target symbols when the window shifts.
    #: False keeps the raw extrinsic messages instead; that variant starves
    #: the boundary for E_B-heavy spreadings whose decoded columns owe their
    #: convergence to the very checks the next window reuses.
    decoded_exact: bool = True

    def __post_init__(self):
        super().__post_init__()
        if self.W < 1:
            raise InvalidArgumentError(f"window size must be >= 1, got {self.W}")


@dataclass(frozen=True)
class WdOutcome:
    success: bool
    first_failed_position: Optional[int]  # 1-based, None on success
    l_t: np.ndarray                       # iterations touching each chain position
    target_app0: np.ndarray               # final dim-0 mass of each target block (min over block)
    position_iterations: np.ndarray
    failure_kind: Optional[str] = None


@dataclass(frozen=True)
class WindowSlice:
    """Geometry of the window at one position (all indices 0-based)."""

    position: int          # 1-based position t
    rows: range            # active rows of the SC matrix
    col_blocks: range      # active column blocks (1-based block numbers)
    cols: range            # active columns
    boundary_edges: list   # (row, col, multiplicity) into already-decoded columns


def _require_coupling(base: BaseMatrix):
    if base.coupling is None:
        raise InvalidArgumentError("windowed decoding needs a coupled base matrix")
    if base.coupling.cb != 1:
        raise InvalidArgumentError("windowed decoding supports one check row per block (c-b = 1)")
    return base.coupling


def window_slice(base: BaseMatrix, t: int, W: int) -> WindowSlice:
    """Active sub-matrix and frozen-boundary edge list of window position t."""
    info = _require_coupling(base)
    if not 1 <= t <= info.L:
        raise InvalidArgumentError(f"position must be in [1, {info.L}], got {t}")
    rows = range(t - 1, min(t + W - 1, info.L + info.w))
    col_blocks = range(t, min(t + W - 1, info.L) + 1)
    cols = range((t - 1) * info.c, col_blocks[-1] * info.c)
    boundary = []
    for i in rows:
        for j in range((t - 1) * info.c):
            b = int(base.entries[i, j])
            if b > 0:
                boundary.append((i, j, b))
    return WindowSlice(position=t, rows=rows, col_blocks=col_blocks, cols=cols,
                       boundary_edges=boundary)


@dataclass
class _WindowPlan:
    edge_gids: np.ndarray    # global edge ids of active edges (defines local order)
    frozen_gids: np.ndarray  # global edge ids feeding the window from decoded columns
    edge_b: np.ndarray
    edge_col: np.ndarray     # local column index per active edge
    row_ptr: np.ndarray
    row_entry: np.ndarray
    col_ptr: np.ndarray
    col_entry: np.ndarray
    frozen_b: np.ndarray
    n_cols: int
    col_blocks: range
    targets: np.ndarray


class WdRunner:
    """Reusable windowed-decoding engine for one (base, m, W) combination.

    Window geometry is independent of the erasure rate, so the per-position
    kernel layouts are built once and shared by every run (each bisection
    probe reuses them).
    """

    def __init__(self, base: BaseMatrix, m: int, wconfig: WindowConfig):
        info = _require_coupling(base)
        if wconfig.W < info.w + 1:
            raise WindowTooSmallError(
                f"window size {wconfig.W} below minimum {info.w + 1} for coupling width {info.w}"
            )
        if wconfig.W > info.L + info.w:
            raise InvalidArgumentError(
                f"window size {wconfig.W} exceeds chain extent {info.L + info.w}"
            )
        self.base = base
        self.m = m
        self.config = wconfig
        self.info = info
        self.tables = get_tables(m)
        entries = base.entries
        rows_g, cols_g = np.nonzero(entries)
        order = np.lexsort((cols_g, rows_g))
        self._g_row = rows_g[order]
        self._g_col = cols_g[order]
        self._g_b = entries[self._g_row, self._g_col].astype(np.int32)
        self.n_edges_global = len(self._g_b)
        gid_of = {(int(r), int(c)): g for g, (r, c) in enumerate(zip(self._g_row, self._g_col))}
        self._plans = [self._build_plan(t, gid_of) for t in range(1, info.L + 1)]

    def _build_plan(self, t: int, gid_of) -> _WindowPlan:
        info = self.info
        sl = window_slice(self.base, t, self.config.W)
        col_base = sl.cols[0]
        active, frozen = [], []
        for i in sl.rows:
            for j in range(self.base.cols):
                b = int(self.base.entries[i, j])
                if b == 0:
                    continue
                if j in sl.cols:
                    active.append((i, j))
                elif j < col_base:
                    frozen.append((i, j))
        edge_gids = np.array([gid_of[e] for e in active], dtype=np.int64)
        frozen_gids = np.array([gid_of[e] for e in frozen], dtype=np.int64)
        n_active = len(active)
        edge_b = self._g_b[edge_gids] if n_active else np.zeros(0, dtype=np.int32)
        edge_col = np.array([j - col_base for (_, j) in active], dtype=np.int32)
        n_rows = len(sl.rows)
        n_cols = len(sl.cols)
        row_lo = sl.rows[0]
        # row CSR mixing active (local id) and frozen (n_active + slot) entries
        row_entry, row_ptr = [], [0]
        per_row = {r: [] for r in range(n_rows)}
        for e, (i, _) in enumerate(active):
            per_row[i - row_lo].append(e)
        for f, (i, _) in enumerate(frozen):
            per_row[i - row_lo].append(n_active + f)
        for r in range(n_rows):
            row_entry.extend(per_row[r])
            row_ptr.append(len(row_entry))
        col_entry, col_ptr = [], [0]
        per_col = {c: [] for c in range(n_cols)}
        for e, (_, j) in enumerate(active):
            per_col[j - col_base].append(e)
        for c in range(n_cols):
            col_entry.extend(per_col[c])
            col_ptr.append(len(col_entry))
        frozen_b = self._g_b[frozen_gids] if len(frozen) else np.zeros(0, dtype=np.int32)
        targets = np.arange(info.c, dtype=np.int32)  # first block of the window
        return _WindowPlan(
            edge_gids=edge_gids,
            frozen_gids=frozen_gids,
            edge_b=np.ascontiguousarray(edge_b, dtype=np.int32),
            edge_col=edge_col,
            row_ptr=np.array(row_ptr, dtype=np.int32),
            row_entry=np.array(row_entry, dtype=np.int32),
            col_ptr=np.array(col_ptr, dtype=np.int32),
            col_entry=np.array(col_entry, dtype=np.int32),
            frozen_b=np.ascontiguousarray(frozen_b, dtype=np.int32),
            n_cols=n_cols,
            col_blocks=sl.col_blocks,
            targets=targets,
        )

    def run(self, eps: float) -> WdOutcome:
        info = self.info
        cfg = self.config
        m = self.m
        chan = initial_message(m, eps).probs
        p_V_g = np.tile(chan, (self.n_edges_global, 1))
        p_C_g = np.zeros((self.n_edges_global, m + 1))
        p_C_g[:, m] = 1.0
        l_t = np.zeros(info.L, dtype=np.int64)
        pos_iters = np.zeros(info.L, dtype=np.int64)
        target_app0 = np.zeros(info.L)
        for t in range(1, info.L + 1):
            plan = self._plans[t - 1]
            p_V = np.ascontiguousarray(p_V_g[plan.edge_gids])
            p_C = np.ascontiguousarray(p_C_g[plan.edge_gids])
            if cfg.decoded_exact:
                frozen_pv = np.zeros((len(plan.frozen_gids), m + 1))
                frozen_pv[:, 0] = 1.0
            elif len(plan.frozen_gids):
                frozen_pv = np.ascontiguousarray(p_V_g[plan.frozen_gids])
            else:
                frozen_pv = np.zeros((0, m + 1))
            channel = np.tile(chan, (plan.n_cols, 1))
            app0 = np.zeros(plan.n_cols)
            status, iters = _core.run_window(
                m, self.tables.C, self.tables.V,
                plan.edge_b, plan.edge_col, plan.row_ptr, plan.row_entry,
                plan.col_ptr, plan.col_entry, plan.frozen_b, frozen_pv,
                channel, p_V, p_C, plan.targets,
                cfg.delta, cfg.max_iters, cfg.stall_eps, app0,
                cfg.stop_on_target,
            )
            p_V_g[plan.edge_gids] = p_V
            p_C_g[plan.edge_gids] = p_C
            pos_iters[t - 1] = iters
            for blk in plan.col_blocks:
                l_t[blk - 1] += iters
            target_app0[t - 1] = app0[plan.targets].min() if len(plan.targets) else 1.0
            if status != _core.STATUS_SUCCESS:
                return WdOutcome(
                    success=False,
                    first_failed_position=t,
                    l_t=l_t,
                    target_app0=target_app0,
                    position_iterations=pos_iters,
                    failure_kind="max_iters" if status == _core.STATUS_MAX_ITERS else "stalled",
                )
        return WdOutcome(
            success=True,
            first_failed_position=None,
            l_t=l_t,
            target_app0=target_app0,
            position_iterations=pos_iters,
        )


def run_wd(base: BaseMatrix, m: int, eps: float, wconfig: WindowConfig) -> WdOutcome:
    """Windowed decoding of the whole chain at erasure rate eps."""
    return WdRunner(base, m, wconfig).run(eps)
