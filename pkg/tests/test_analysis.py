"""Latency and complexity accounting."""

import numpy as np
import pytest

import scldpc as s
from scldpc.analysis import (
    complexity_order,
    complexity_profile,
    latency_block_fsd,
    latency_wd,
)
from scldpc.errors import DecodeFailureError, InvalidArgumentError
from scldpc.pde import PdeConfig


def test_latency_formulas():
    assert latency_wd(2, 5, 5) == 50
    assert latency_wd(2, 1, 12) == 24
    assert latency_block_fsd(3) == 12


def test_complexity_order_scaling():
    l_t = np.full(10, 7)
    base = complexity_order(3, 2, 0.5, 10, l_t)
    # doubling the iteration profile doubles the count
    assert complexity_order(3, 2, 0.5, 10, 2 * l_t) == pytest.approx(2 * base)
    # halving the rate doubles the per-information-bit cost
    assert complexity_order(3, 2, 0.25, 10, l_t) == pytest.approx(2 * base)
    with pytest.raises(InvalidArgumentError):
        complexity_order(3, 2, 0.0, 10, l_t)


def test_block_profile():
    rep = complexity_profile(s.parse_ensemble("B(3,6,2)"), 0.3)
    assert rep.W is None
    assert rep.l_t.tolist() == [rep.iterations_total]
    assert rep.complexity > 0
    assert rep.latency_bits == 8


def test_block_profile_rejects_window():
    with pytest.raises(InvalidArgumentError):
        complexity_profile(s.parse_ensemble("B(3,6,2)"), 0.3, W=3)


def test_eps_zero_profile_is_free():
    rep = complexity_profile(s.parse_ensemble("C1(3,6,2,2,L=10)"), 0.0, W=3)
    assert rep.iterations_total == 0
    assert np.all(rep.l_t == 0)
    assert rep.complexity == 0.0


def test_wd_cheaper_than_fsd():
    spec = s.parse_ensemble("C1(3,6,2,2,L=20)")
    eps = 0.44
    fsd = complexity_profile(spec, eps)
    wd = complexity_profile(spec, eps, W=6)
    assert wd.complexity < fsd.complexity
    assert wd.latency_bits < fsd.latency_bits
    assert len(wd.l_t) == len(fsd.l_t) == 20


def test_decode_failure_raises():
    with pytest.raises(DecodeFailureError):
        complexity_profile(s.parse_ensemble("C1(3,6,1,2,L=10)"), 0.6, W=3,
                           config=PdeConfig(max_iters=500))


def test_wd_iteration_profile_counts_window_span():
    # each window position adds its iterations to every block it covers
    spec = s.parse_ensemble("C1(3,6,2,2,L=10)")
    rep = complexity_profile(spec, 0.3, W=4)
    assert rep.l_t.sum() >= rep.iterations_total  # W blocks touched per iteration
