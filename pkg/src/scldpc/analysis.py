"""Latency and decoding-complexity figures for the coupled ensembles.

Latency is counted in coded bits at the decoder input; complexity is the
operation count per decoded bit, normalised so that different field sizes
and chain lengths can be compared on one axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DecodeFailureError, InvalidArgumentError
from .pde import FsdRunner, PdeConfig
from .protograph import EnsembleSpec
from .windowed import WdRunner, WindowConfig


def latency_wd(k: int, m: int, W: int) -> int:
    """Structural latency of windowed decoding in coded bits: the window
    spans W blocks of k symbols, each carrying m bits."""
    return k * m * W


def latency_block_fsd(m: int) -> int:
    """Latency of the rate-1/2 block code of comparable structure (k = 2,
    two column blocks' worth of symbols)."""
    return 4 * m


@dataclass(frozen=True)
class LatencyReport:
    ensemble: str
    m: int
    W: Optional[int]
    latency_bits: int


def complexity_order(J: int, m: int, rate: float, L: int, l_t: np.ndarray) -> float:
    """Operation-count order per decoded information bit.

    Each check update touches J edges, each edge convolves length-(m+1)
    vectors over a field of size 2^m, and position t of the chain is
    processed l_t times in total.
    """
    if rate <= 0:
        raise InvalidArgumentError("complexity is undefined for nonpositive rate")
    total = float(np.sum(l_t))
    return J * (2.0 ** m) * (m + 1) * total / (rate * m * L)


@dataclass(frozen=True)
class ComplexityReport:
    ensemble: str
    m: int
    W: Optional[int]        # None for flooding over the full chain
    epsilon: float
    rate: float
    latency_bits: int
    iterations_total: int
    l_t: np.ndarray
    complexity: float


def complexity_profile(
    spec: EnsembleSpec,
    epsilon: float,
    W: Optional[int] = None,
    config: Optional[PdeConfig] = None,
) -> ComplexityReport:
    """Decode the ensemble at ``epsilon`` and report the resulting latency
    and per-bit complexity.  ``W`` selects windowed decoding; ``W=None``
    floods the whole chain (for a block ensemble this is the only option).
    """
    cfg = config or PdeConfig()
    base = spec.base_matrix()
    rate = float(spec.design_rate())
    if spec.family == "block":
        if W is not None:
            raise InvalidArgumentError("block ensembles have no window to slide")
        out = FsdRunner(base, spec.m, cfg).run(epsilon)
        if not out.success:
            raise DecodeFailureError(
                f"{spec.name()} does not decode at epsilon = {epsilon}"
            )
        l_t = np.array([out.iterations], dtype=np.int64)
        return ComplexityReport(
            ensemble=spec.name(), m=spec.m, W=None, epsilon=epsilon, rate=rate,
            latency_bits=latency_block_fsd(spec.m) if spec.k == 2 else spec.k * 2 * spec.m,
            iterations_total=out.iterations, l_t=l_t,
            complexity=complexity_order(spec.J, spec.m, rate, 1, l_t),
        )
    L = spec.L
    if W is None:
        out = FsdRunner(base, spec.m, cfg).run(epsilon)
        if not out.success:
            raise DecodeFailureError(
                f"{spec.name()} does not decode at epsilon = {epsilon}"
            )
        # flooding touches every position on every iteration
        l_t = np.full(L, out.iterations, dtype=np.int64)
        iters_total = out.iterations
        latency = spec.k * spec.m * (L + spec.w)
        W_out = None
    else:
        # stop each window at target convergence: l_t counts useful iterations
        wout = WdRunner(base, spec.m, WindowConfig(
            delta=cfg.delta, max_iters=cfg.max_iters, stall_eps=cfg.stall_eps, W=W,
            stop_on_target=True,
        )).run(epsilon)
        if not wout.success:
            raise DecodeFailureError(
                f"{spec.name()} with W = {W} does not decode at epsilon = {epsilon}"
                f" (failed at position {wout.first_failed_position})"
            )
        l_t = wout.l_t
        iters_total = int(wout.position_iterations.sum())
        latency = latency_wd(spec.k, spec.m, W)
        W_out = W
    return ComplexityReport(
        ensemble=spec.name(), m=spec.m, W=W_out, epsilon=epsilon, rate=rate,
        latency_bits=latency, iterations_total=iters_total, l_t=l_t,
        complexity=complexity_order(spec.J, spec.m, rate, L, l_t),
    )
