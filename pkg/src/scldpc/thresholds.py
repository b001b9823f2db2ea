"""Threshold search: bisection over the erasure rate, plus the saturation
sweeps that locate the smallest window size or chain length whose threshold
has stopped improving."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .errors import (
    DegenerateBracketError,
    InvalidArgumentError,
    NoPlateauError,
    WindowTooSmallError,
)
from .pde import FsdRunner, PdeConfig
from .protograph import EnsembleSpec
from .windowed import WdRunner, WindowConfig

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class ThresholdResult:
    epsilon: float
    bracket_lo: float   # largest erasure rate known to decode
    bracket_hi: float   # smallest erasure rate known to fail
    evaluations: int
    resolution: float
    window_too_small: bool = False


def bisect_threshold(
    predicate: Callable[[float], bool],
    tol: float = DEFAULT_TOL,
    hint: Optional[Tuple[float, float]] = None,
) -> ThresholdResult:
    """Largest eps with predicate(eps) true, assuming predicate is a step
    down in eps.  ``hint`` seeds the bracket (e.g. from a neighbouring sweep
    cell); it is expanded outward if the step lies outside it."""
    evals = 0

    def check(eps: float) -> bool:
        nonlocal evals
        evals += 1
        return predicate(eps)

    if hint is not None:
        lo = max(0.0, min(hint))
        hi = min(1.0, max(hint))
    else:
        lo, hi = 0.0, 1.0

    # establish predicate(lo) true, expanding downward if necessary
    step = max(hi - lo, tol)
    while lo > 0.0 and not check(lo):
        hi = lo
        lo = max(0.0, lo - step)
        step *= 2
    if lo == 0.0:
        # hint may have collapsed onto 0; verify the floor decodes
        if not check(0.0):
            raise DegenerateBracketError("channel with no erasures fails to decode")
    # establish predicate(hi) false, expanding upward if necessary
    step = max(hi - lo, tol)
    while hi < 1.0 and check(hi):
        lo = hi
        hi = min(1.0, hi + step)
        step *= 2
    if hi == 1.0 and check(1.0):
        raise DegenerateBracketError("full erasure decodes; threshold is degenerate")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if check(mid):
            lo = mid
        else:
            hi = mid
    return ThresholdResult(
        epsilon=lo,
        bracket_lo=lo,
        bracket_hi=hi,
        evaluations=evals,
        resolution=hi - lo,
    )


def fsd_threshold(
    spec: EnsembleSpec,
    tol: float = DEFAULT_TOL,
    config: Optional[PdeConfig] = None,
    hint: Optional[Tuple[float, float]] = None,
) -> ThresholdResult:
    """Flooding-schedule decoding threshold of the ensemble."""
    runner = FsdRunner(spec.base_matrix(), spec.m, config)
    return bisect_threshold(lambda e: runner.run(e).success, tol=tol, hint=hint)


def wd_threshold(
    spec: EnsembleSpec,
    W: int,
    tol: float = DEFAULT_TOL,
    config: Optional[PdeConfig] = None,
    hint: Optional[Tuple[float, float]] = None,
) -> ThresholdResult:
    """Windowed decoding threshold.  Windows narrower than the coupling
    width plus one cannot cover a full check neighbourhood; their threshold
    is reported as 0 with ``window_too_small`` set."""
    cfg = config or PdeConfig()
    try:
        runner = WdRunner(
            spec.base_matrix(), spec.m,
            WindowConfig(delta=cfg.delta, max_iters=cfg.max_iters,
                         stall_eps=cfg.stall_eps, W=W),
        )
    except WindowTooSmallError:
        return ThresholdResult(
            epsilon=0.0, bracket_lo=0.0, bracket_hi=0.0,
            evaluations=0, resolution=0.0, window_too_small=True,
        )
    return bisect_threshold(lambda e: runner.run(e).success, tol=tol, hint=hint)


@dataclass(frozen=True)
class SaturationResult:
    value: int                    # smallest parameter on the plateau
    threshold: float              # threshold at that parameter
    history: tuple                # ((param, threshold), ...) in sweep order
    evaluations: int


def _saturation_sweep(
    threshold_of: Callable[[int, Optional[Tuple[float, float]]], ThresholdResult],
    start: int,
    stop: int,
    what: str,
    indistinguishable: float = DEFAULT_TOL,
    confirmations: int = 3,
) -> SaturationResult:
    """Walk the integer parameter upward until ``confirmations`` successive
    thresholds agree with the current candidate to within
    ``indistinguishable``."""
    history = []
    evals = 0
    hint = None
    candidate = None       # (param, threshold)
    agree = 0
    for param in range(start, stop + 1):
        res = threshold_of(param, hint)
        evals += res.evaluations
        history.append((param, res.epsilon))
        hint = (res.bracket_lo, res.bracket_hi)
        if candidate is not None and abs(res.epsilon - candidate[1]) <= indistinguishable:
            agree += 1
            if agree >= confirmations:
                return SaturationResult(
                    value=candidate[0],
                    threshold=candidate[1],
                    history=tuple(history),
                    evaluations=evals,
                )
        else:
            candidate = (param, res.epsilon)
            agree = 0
    raise NoPlateauError(
        f"threshold kept improving up to {what} = {stop}; no plateau found"
    )


def find_w_star(
    spec: EnsembleSpec,
    tol: float = DEFAULT_TOL,
    config: Optional[PdeConfig] = None,
    w_max: int = 40,
    confirmations: int = 3,
) -> SaturationResult:
    """Smallest window size whose threshold matches all larger windows."""
    return _saturation_sweep(
        lambda W, hint: wd_threshold(spec, W, tol=tol, config=config, hint=hint),
        start=spec.w + 1,
        stop=w_max,
        what="W",
        indistinguishable=tol,
        confirmations=confirmations,
    )


def find_l_star(
    spec: EnsembleSpec,
    tol: float = DEFAULT_TOL,
    config: Optional[PdeConfig] = None,
    l_max: int = 100,
    confirmations: int = 3,
) -> SaturationResult:
    """Smallest chain length whose flooding threshold matches all longer
    chains."""

    def threshold_of(L, hint):
        return fsd_threshold(spec.with_(L=L), tol=tol, config=config, hint=hint)

    return _saturation_sweep(
        threshold_of, start=2, stop=l_max, what="L",
        indistinguishable=tol, confirmations=confirmations,
    )


def shannon_limit(rate) -> float:
    """BEC capacity limit for a given design rate."""
    return 1.0 - float(rate)


def capacity_gap(rate, epsilon: float) -> float:
    """Relative shortfall of ``epsilon`` from the Shannon limit of ``rate``."""
    r = float(rate)
    if not 0.0 < r < 1.0:
        raise InvalidArgumentError(f"rate must be in (0, 1), got {r}")
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidArgumentError(f"epsilon must be in [0, 1], got {epsilon}")
    lim = 1.0 - r
    return (lim - epsilon) / lim
