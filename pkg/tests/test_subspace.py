"""Subspace-dimension algebra: coefficient tables, operators, invariants."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scldpc.errors import DimensionMismatchError, InvalidArgumentError
from scldpc.subspace import (
    DeMessage,
    box_power,
    boxdot,
    boxtimes,
    coeff_C,
    coeff_V,
    delta_message,
    gaussian_binomial,
    get_tables,
    initial_message,
)


def test_gaussian_binomial_values():
    # hand-checked: G(4,2) counts 2-dim subspaces of GF_2^4
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(3, 1) == 7
    assert gaussian_binomial(5, 0) == 1
    assert gaussian_binomial(5, 5) == 1
    assert gaussian_binomial(2, 3) == 0
    assert gaussian_binomial(2, -1) == 0


def test_gaussian_binomial_symmetry():
    for m in range(9):
        for k in range(m + 1):
            assert gaussian_binomial(m, k) == gaussian_binomial(m, m - k)


def test_gaussian_binomial_rejects_bad_m():
    with pytest.raises(InvalidArgumentError):
        gaussian_binomial(-1, 0)
    with pytest.raises(InvalidArgumentError):
        gaussian_binomial(17, 2)


# ---------------------------------------------------------------------------
# Brute-force oracle: enumerate the subspaces of GF_2^m directly and measure
# the dimension distribution of sums/intersections of uniformly random
# subspaces of fixed dimensions.  Completely independent of the closed-form
# coefficients.


def _all_subspaces(m):
    """Each subspace as a frozenset of its vectors (ints 0..2^m-1)."""
    vectors = list(range(1, 2 ** m))
    seen = {}
    frontier = [frozenset([0])]
    seen[frozenset([0])] = None
    while frontier:
        nxt = []
        for sp in frontier:
            for v in vectors:
                if v in sp:
                    continue
                grown = set(sp)
                for u in sp:
                    grown.add(u ^ v)
                grown = frozenset(grown)
                if grown not in seen:
                    seen[grown] = None
                    nxt.append(grown)
        frontier = nxt
    return list(seen)


def _dim(sp):
    d = len(sp).bit_length() - 1
    assert 2 ** d == len(sp)
    return d


def _span_union(a, b):
    out = set(a)
    frontier = list(a)
    for v in b:
        if v not in out:
            add = [v ^ u for u in out]
            out.update(add)
    # union of cosets closure: repeat until stable
    changed = True
    while changed:
        changed = False
        cur = list(out)
        for x in cur:
            for y in cur:
                if x ^ y not in out:
                    out.add(x ^ y)
                    changed = True
    return frozenset(out)


@pytest.mark.parametrize("m", [2, 3])
def test_tables_match_subspace_enumeration(m):
    spaces = _all_subspaces(m)
    by_dim = {}
    for sp in spaces:
        by_dim.setdefault(_dim(sp), []).append(sp)
    for i in range(m + 1):
        for j in range(m + 1):
            sum_counts = np.zeros(m + 1)
            cap_counts = np.zeros(m + 1)
            total = 0
            for a in by_dim[i]:
                for b in by_dim[j]:
                    total += 1
                    sum_counts[_dim(_span_union(a, b))] += 1
                    cap_counts[_dim(a & b)] += 1
            for n in range(m + 1):
                assert coeff_C(m, i, j, n) == pytest.approx(sum_counts[n] / total, abs=1e-12)
                assert coeff_V(m, i, j, n) == pytest.approx(cap_counts[n] / total, abs=1e-12)


@pytest.mark.parametrize("m", range(1, 9))
def test_coefficient_rows_sum_to_one(m):
    tb = get_tables(m)
    assert np.allclose(tb.C.sum(axis=2), 1.0, atol=1e-12)
    assert np.allclose(tb.V.sum(axis=2), 1.0, atol=1e-12)


@pytest.mark.parametrize("m", range(1, 9))
def test_coefficient_support(m):
    tb = get_tables(m)
    for i in range(m + 1):
        for j in range(m + 1):
            for n in range(m + 1):
                if not (max(i, j) <= n <= min(i + j, m)):
                    assert tb.C[i, j, n] == 0.0
                if not (max(0, i + j - m) <= n <= min(i, j)):
                    assert tb.V[i, j, n] == 0.0


# ---------------------------------------------------------------------------
# Operator invariants


def _msg(m, data):
    v = np.asarray(data, dtype=float)
    v = v / v.sum()
    return DeMessage(m, v)


_probs = st.integers(1, 1000)


def _message_strategy(m):
    return st.lists(_probs, min_size=m + 1, max_size=m + 1).map(lambda xs: _msg(m, xs))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda m: st.tuples(st.just(m), _message_strategy(m), _message_strategy(m))))
def test_closure_and_commutativity(args):
    m, p, q = args
    for op in (boxtimes, boxdot):
        a = op(p, q)
        b = op(q, p)
        assert a.probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(a.probs >= 0)
        assert np.allclose(a.probs, b.probs, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda m: st.tuples(st.just(m), _message_strategy(m), _message_strategy(m),
                        _message_strategy(m))))
def test_associativity(args):
    m, p, q, r = args
    for op in (boxtimes, boxdot):
        left = op(op(p, q), r)
        right = op(p, op(q, r))
        assert np.allclose(left.probs, right.probs, atol=1e-11)


@pytest.mark.parametrize("m", range(1, 9))
def test_identity_elements(m):
    rng = np.random.default_rng(m)
    p = _msg(m, rng.random(m + 1) + 0.01)
    # dimension-0 subspace is neutral for sums, the full space for intersections
    assert np.allclose(boxtimes(delta_message(m, 0), p).probs, p.probs, atol=1e-12)
    assert np.allclose(boxdot(delta_message(m, m), p).probs, p.probs, atol=1e-12)


def _dominates(a, b):
    # first-order dominance on dimension: a has stochastically larger dimension
    ca = np.cumsum(a)
    cb = np.cumsum(b)
    return np.all(ca <= cb + 1e-12)


@pytest.mark.parametrize("m", range(1, 9))
def test_degradation_monotonicity(m):
    # a worse channel (larger eps) gives stochastically larger dimensions, and
    # both operators preserve that ordering against a fixed third message
    rng = np.random.default_rng(100 + m)
    for _ in range(10):
        e1, e2 = sorted(rng.random(2))
        p1 = initial_message(m, e1)
        p2 = initial_message(m, e2)
        assert _dominates(p2.probs, p1.probs)
        ref = _msg(m, rng.random(m + 1) + 0.01)
        assert _dominates(boxtimes(p2, ref).probs, boxtimes(p1, ref).probs)
        assert _dominates(boxdot(p2, ref).probs, boxdot(p1, ref).probs)


def test_box_power():
    m = 3
    p = initial_message(m, 0.4)
    assert np.allclose(box_power(p, 0, boxtimes).probs, delta_message(m, 0).probs)
    assert np.allclose(box_power(p, 1, boxtimes).probs, p.probs)
    assert np.allclose(box_power(p, 2, boxdot).probs, boxdot(p, p).probs, atol=1e-12)


def test_initial_message_is_binomial():
    m, eps = 4, 0.3
    p = initial_message(m, eps).probs
    from math import comb
    want = [comb(m, n) * eps ** n * (1 - eps) ** (m - n) for n in range(m + 1)]
    assert np.allclose(p, want, atol=1e-14)


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatchError):
        boxtimes(initial_message(2, 0.5), initial_message(3, 0.5))
