"""Bisection, saturation sweeps, capacity helpers."""

import math

import pytest

import scldpc as s
from scldpc.errors import (
    DegenerateBracketError,
    InvalidArgumentError,
    NoPlateauError,
)
from scldpc.pde import PdeConfig
from scldpc.thresholds import (
    bisect_threshold,
    capacity_gap,
    find_l_star,
    find_w_star,
    fsd_threshold,
    shannon_limit,
    wd_threshold,
    _saturation_sweep,
)


def test_bisect_analytic_step():
    for true in (0.123456, 0.5, 0.91):
        r = bisect_threshold(lambda e: e <= true, tol=1e-7)
        assert abs(r.epsilon - true) < 1e-6
        assert r.bracket_lo <= true <= r.bracket_hi + 1e-12
        assert r.resolution <= 1e-7


def test_bisect_hint_speeds_up():
    true = 0.43
    cold = bisect_threshold(lambda e: e <= true, tol=1e-6)
    warm = bisect_threshold(lambda e: e <= true, tol=1e-6, hint=(0.42, 0.44))
    assert warm.evaluations < cold.evaluations
    assert abs(warm.epsilon - true) < 1e-5


def test_bisect_hint_outside_step_recovers():
    true = 0.43
    for hint in [(0.1, 0.12), (0.8, 0.9)]:
        r = bisect_threshold(lambda e: e <= true, tol=1e-6, hint=hint)
        assert abs(r.epsilon - true) < 1e-5


def test_bisect_degenerate():
    with pytest.raises(DegenerateBracketError):
        bisect_threshold(lambda e: False, tol=1e-3)
    with pytest.raises(DegenerateBracketError):
        bisect_threshold(lambda e: True, tol=1e-3)


def test_fsd_threshold_block_m1():
    r = fsd_threshold(s.parse_ensemble("B(3,6,1)"), tol=1e-6)
    assert r.epsilon == pytest.approx(0.42944, abs=1e-4)
    assert r.bracket_hi - r.bracket_lo <= 1e-6


def test_wd_threshold_window_too_small_flag():
    r = wd_threshold(s.parse_ensemble("C2(3,6,1)"), W=2)
    assert r.window_too_small
    assert r.epsilon == 0.0


def test_wd_threshold_small_case():
    spec = s.parse_ensemble("C1(3,6,1,2,L=12)")
    r = wd_threshold(spec, W=4, tol=1e-4, config=PdeConfig(max_iters=5000))
    assert 0.40 < r.epsilon < 0.49


def test_saturation_sweep_synthetic():
    # threshold curve that plateaus at parameter 7
    def th(p, hint):
        val = 0.4 + 0.01 * min(p, 7)
        return type("R", (), {"epsilon": val, "evaluations": 1,
                              "bracket_lo": val, "bracket_hi": val})()
    r = _saturation_sweep(th, start=2, stop=30, what="W")
    assert r.value == 7
    assert r.threshold == pytest.approx(0.47)
    assert r.history[0] == (2, pytest.approx(0.42))


def test_saturation_sweep_no_plateau():
    def th(p, hint):
        val = 0.4 + 0.001 * p
        return type("R", (), {"epsilon": val, "evaluations": 1,
                              "bracket_lo": val, "bracket_hi": val})()
    with pytest.raises(NoPlateauError):
        _saturation_sweep(th, start=2, stop=10, what="W")


def test_find_l_star_small_binary():
    # cheap smoke test at coarse resolution: the plateau shows up early
    r = find_l_star(s.parse_ensemble("C1(3,6,1,2)"), tol=1e-3,
                    config=PdeConfig(max_iters=50000), l_max=30)
    assert 2 <= r.value <= 12
    assert len(r.history) >= r.value


def test_shannon_limit():
    assert shannon_limit(0.5) == 0.5
    assert shannon_limit(0.495) == pytest.approx(0.505)


def test_capacity_gap():
    assert capacity_gap(0.5, 0.5) == 0.0
    assert capacity_gap(0.5, 0.45) == pytest.approx(0.1)
    with pytest.raises(InvalidArgumentError):
        capacity_gap(0.0, 0.3)
    with pytest.raises(InvalidArgumentError):
        capacity_gap(1.0, 0.3)
    with pytest.raises(InvalidArgumentError):
        capacity_gap(0.5, 1.2)
