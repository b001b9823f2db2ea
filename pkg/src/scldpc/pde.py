"""Flooding-schedule q-ary protograph density evolution on the BEC.

``run_fsd`` drives the selected kernel backend over an entire base matrix.
The module also exposes the individual update rules (``initialize``,
``check_update``, ``variable_update``, ``app``) in a direct dictionary-based
form; these serve as the readable reference the kernels are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _core
from .errors import InvalidArgumentError
from .protograph import BaseMatrix
from .subspace import (
    DeMessage,
    SubspaceTables,
    box_power,
    boxdot,
    boxtimes,
    delta_message,
    get_tables,
    initial_message,
)


@dataclass(frozen=True)
class PdeConfig:
    """Convergence policy: residual target, iteration cap, stall detection."""

    delta: float = 1e-6
    max_iters: int = 10000
    stall_eps: float = 1e-12

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise InvalidArgumentError(f"delta must be in (0, 1), got {self.delta}")
        if self.max_iters < 1:
            raise InvalidArgumentError("max_iters must be >= 1")
        if self.stall_eps <= 0:
            raise InvalidArgumentError("stall_eps must be > 0")


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    iterations: int
    app_dim0: np.ndarray
    failure_kind: Optional[str] = None  # "max_iters" | "stalled"


_FAILURE_KINDS = {
    _core.STATUS_MAX_ITERS: "max_iters",
    _core.STATUS_STALLED: "stalled",
}


class Graph:
    """CSR layout of a base matrix's nonzero entries for the kernels."""

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries)
        rows, cols = np.nonzero(entries)
        order = np.lexsort((cols, rows))
        self.edge_row = rows[order].astype(np.int32)
        self.edge_col = cols[order].astype(np.int32)
        self.edge_b = entries[self.edge_row, self.edge_col].astype(np.int32)
        self.n_rows, self.n_cols = entries.shape
        self.n_edges = len(self.edge_b)
        self.row_ptr = np.zeros(self.n_rows + 1, dtype=np.int32)
        np.add.at(self.row_ptr, self.edge_row + 1, 1)
        np.cumsum(self.row_ptr, out=self.row_ptr)
        self.row_entry = np.arange(self.n_edges, dtype=np.int32)  # edges sorted by row
        col_order = np.lexsort((self.edge_row, self.edge_col)).astype(np.int32)
        self.col_ptr = np.zeros(self.n_cols + 1, dtype=np.int32)
        np.add.at(self.col_ptr, self.edge_col + 1, 1)
        np.cumsum(self.col_ptr, out=self.col_ptr)
        self.col_entry = col_order


_NO_FROZEN_B = np.zeros(0, dtype=np.int32)


class FsdRunner:
    """Reusable flooding-schedule engine for one (base, m) pair."""

    def __init__(self, base: BaseMatrix, m: int, config: Optional[PdeConfig] = None):
        self.base = base
        self.m = m
        self.config = config or PdeConfig()
        self.graph = Graph(base.entries)
        self.tables = get_tables(m)
        self._no_frozen_pv = np.zeros((0, m + 1))

    def run(self, eps: float, check_columns=None) -> DecodeOutcome:
        g = self.graph
        m = self.m
        cfg = self.config
        chan = initial_message(m, eps).probs
        channel = np.tile(chan, (g.n_cols, 1))
        p_V = np.tile(chan, (g.n_edges, 1))
        p_C = np.zeros((g.n_edges, m + 1))
        p_C[:, m] = 1.0
        if check_columns is None:
            targets = np.arange(g.n_cols, dtype=np.int32)
        else:
            targets = np.asarray(sorted(check_columns), dtype=np.int32)
            if len(targets) and (targets[0] < 0 or targets[-1] >= g.n_cols):
                raise InvalidArgumentError("check_columns outside the matrix")
        app0 = np.zeros(g.n_cols)
        status, iters = _core.run_window(
            m, self.tables.C, self.tables.V,
            g.edge_b, g.edge_col, g.row_ptr, g.row_entry, g.col_ptr, g.col_entry,
            _NO_FROZEN_B, self._no_frozen_pv, channel, p_V, p_C, targets,
            cfg.delta, cfg.max_iters, cfg.stall_eps, app0,
        )
        return DecodeOutcome(
            success=status == _core.STATUS_SUCCESS,
            iterations=iters,
            app_dim0=app0,
            failure_kind=_FAILURE_KINDS.get(status),
        )


def run_fsd(
    base: BaseMatrix,
    m: int,
    eps: float,
    config: Optional[PdeConfig] = None,
    check_columns=None,
) -> DecodeOutcome:
    """Density evolution over the whole base matrix at erasure rate eps."""
    return FsdRunner(base, m, config).run(eps, check_columns)


# ---------------------------------------------------------------------------
# Reference (dictionary) form of the update rules.


@dataclass
class EdgeState:
    """One message pair per nonzero base entry; parallel edges share a pair."""

    m: int
    p_v: dict = field(default_factory=dict)  # (i, j) -> variable-to-check DeMessage
    p_c: dict = field(default_factory=dict)  # (i, j) -> check-to-variable DeMessage


def initialize(base: BaseMatrix, m: int, eps: float) -> EdgeState:
    """Variable messages start at the channel distribution, check messages at
    the uninformative full-dimension point mass."""
    chan = initial_message(m, eps)
    uninformative = delta_message(m, m)
    state = EdgeState(m=m)
    for i in range(base.rows):
        for j in range(base.cols):
            if base.entries[i, j] > 0:
                state.p_v[(i, j)] = chan
                state.p_c[(i, j)] = uninformative
    return state


def check_update(state: EdgeState, base: BaseMatrix, tables: Optional[SubspaceTables] = None) -> EdgeState:
    """Extrinsic check rule: an edge excludes exactly one of its own b parallel copies."""
    new_pc = {}
    for (i, j) in state.p_c:
        out = delta_message(state.m, 0)
        for s in range(base.cols):
            b = int(base.entries[i, s])
            if b == 0 or s == j:
                continue
            out = boxtimes(out, box_power(state.p_v[(i, s)], b, boxtimes))
        out = boxtimes(out, box_power(state.p_v[(i, j)], int(base.entries[i, j]) - 1, boxtimes))
        new_pc[(i, j)] = out
    return EdgeState(m=state.m, p_v=dict(state.p_v), p_c=new_pc)


def variable_update(
    state: EdgeState,
    base: BaseMatrix,
    tables: Optional[SubspaceTables] = None,
    channel=None,
) -> EdgeState:
    """Extrinsic variable rule; ``channel`` maps column -> DeMessage."""
    new_pv = {}
    for (i, j) in state.p_v:
        out = channel[j]
        for s in range(base.rows):
            b = int(base.entries[s, j])
            if b == 0 or s == i:
                continue
            out = boxdot(out, box_power(state.p_c[(s, j)], b, boxdot))
        out = boxdot(out, box_power(state.p_c[(i, j)], int(base.entries[i, j]) - 1, boxdot))
        new_pv[(i, j)] = out
    return EdgeState(m=state.m, p_v=new_pv, p_c=dict(state.p_c))


def app(
    state: EdgeState,
    base: BaseMatrix,
    tables: Optional[SubspaceTables] = None,
    channel=None,
    j: int = 0,
) -> DeMessage:
    """A-posteriori distribution of column j (all incoming edges, no exclusion)."""
    out = channel[j]
    for i in range(base.rows):
        b = int(base.entries[i, j])
        if b == 0:
            continue
        out = boxdot(out, box_power(state.p_c[(i, j)], b, boxdot))
    return out
