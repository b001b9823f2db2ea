"""Dimension-domain message algebra for erasure decoding over GF_2^m.

On the BEC the set of candidate symbols at any point of BP decoding forms a
subspace of GF_2^m, so density evolution only has to track the distribution of
its dimension: a message is a probability vector of length (m+1).  Check nodes
combine messages through subspace sums, variable nodes through subspace
intersections; both reduce to weighted convolutions with precomputed
coefficient tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, InvalidArgumentError, NumericError

M_MAX = 16

# Negative entries below this magnitude are round-off and get clamped to zero;
# anything larger indicates a real bug.
_CLAMP = 1e-15


def gaussian_binomial(m: int, k: int) -> int:
    """Number of k-dimensional subspaces of GF_2^m (exact integer)."""
    if m < 0 or m > M_MAX:
        raise InvalidArgumentError(f"m must be in [0, {M_MAX}], got {m}")
    if k < 0 or k > m:
        return 0
    if k == 0 or k == m:
        return 1
    num = 1
    den = 1
    for l in range(k):
        num *= 2**m - 2**l
        den *= 2**k - 2**l
    return num // den


def coeff_C(m: int, i: int, j: int, n: int) -> float:
    """Probability that a random dim-j subspace sums with a dim-i one to dim n."""
    _check_index_range(m, i, j, n)
    if n < max(i, j) or n > min(m, i + j):
        return 0.0
    num = gaussian_binomial(m - i, m - n) * gaussian_binomial(i, n - j) * 2 ** ((n - i) * (n - j))
    return num / gaussian_binomial(m, m - j)


def coeff_V(m: int, i: int, j: int, n: int) -> float:
    """Probability that a random dim-j subspace meets a dim-i one in dim n."""
    _check_index_range(m, i, j, n)
    if n < max(0, i + j - m) or n > min(i, j):
        return 0.0
    num = gaussian_binomial(i, n) * gaussian_binomial(m - i, j - n) * 2 ** ((i - n) * (j - n))
    return num / gaussian_binomial(m, j)


def _check_index_range(m: int, i: int, j: int, n: int) -> None:
    if m < 0 or m > M_MAX:
        raise InvalidArgumentError(f"m must be in [0, {M_MAX}], got {m}")
    for name, v in (("i", i), ("j", j), ("n", n)):
        if v < 0 or v > m:
            raise InvalidArgumentError(f"{name} must be in [0, {m}], got {v}")


@dataclass(frozen=True)
class SubspaceTables:
    """Precomputed coefficient tables for a fixed field exponent m.

    C[i, j, n] weights the check-node (sum) combination, V[i, j, n] the
    variable-node (intersection) combination.  G[a, b] holds the subspace
    counts for every ambient dimension a <= m.
    """

    m: int
    G: np.ndarray
    C: np.ndarray
    V: np.ndarray


@lru_cache(maxsize=None)
def get_tables(m: int) -> SubspaceTables:
    if m < 1 or m > M_MAX:
        raise InvalidArgumentError(f"m must be in [1, {M_MAX}], got {m}")
    size = m + 1
    G = np.zeros((size, size))
    for a in range(size):
        for b in range(a + 1):
            G[a, b] = float(gaussian_binomial(a, b))
    C = np.zeros((size, size, size))
    V = np.zeros((size, size, size))
    for i in range(size):
        for j in range(size):
            for n in range(size):
                C[i, j, n] = coeff_C(m, i, j, n)
                V[i, j, n] = coeff_V(m, i, j, n)
    for arr in (G, C, V):
        arr.setflags(write=False)
    return SubspaceTables(m=m, G=G, C=C, V=V)


@dataclass(frozen=True)
class DeMessage:
    """Distribution of the BP message-vector dimension, entries 0..m."""

    m: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.shape != (self.m + 1,):
            raise InvalidArgumentError(
                f"message for m={self.m} needs {self.m + 1} entries, got shape {probs.shape}"
            )
        probs = _finish(probs.copy())
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __eq__(self, other):
        return (
            isinstance(other, DeMessage)
            and self.m == other.m
            and np.array_equal(self.probs, other.probs)
        )

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)


def _finish(v: np.ndarray) -> np.ndarray:
    neg = v < 0
    if neg.any():
        if v[neg].min() < -_CLAMP:
            raise NumericError(f"probability entry {v[neg].min()} below clamp window")
        v[neg] = 0.0
    s = v.sum()
    if s <= 0 or abs(s - 1.0) > 1e-9:
        raise NumericError(f"probability vector sums to {s}")
    return v / s


def delta_message(m: int, n: int) -> DeMessage:
    """Point mass on dimension n."""
    v = np.zeros(m + 1)
    v[n] = 1.0
    return DeMessage(m, v)


def initial_message(m: int, eps: float) -> DeMessage:
    """Channel message: each of the m bits erased independently with prob eps."""
    if not 0.0 <= eps <= 1.0:
        raise InvalidArgumentError(f"erasure probability must be in [0, 1], got {eps}")
    v = np.array([math.comb(m, n) * eps**n * (1 - eps) ** (m - n) for n in range(m + 1)])
    return DeMessage(m, v)


def _combine(p1: DeMessage, p2: DeMessage, table: np.ndarray) -> DeMessage:
    if p1.m != p2.m:
        raise DimensionMismatchError(f"m mismatch: {p1.m} vs {p2.m}")
    out = np.einsum("ijn,i,j->n", table, p1.probs, p2.probs)
    return DeMessage(p1.m, out)


def boxtimes(p1: DeMessage, p2: DeMessage) -> DeMessage:
    """Check-node combination (distribution of the subspace sum)."""
    return _combine(p1, p2, get_tables(p1.m).C)


def boxdot(p1: DeMessage, p2: DeMessage) -> DeMessage:
    """Variable-node combination (distribution of the subspace intersection)."""
    return _combine(p1, p2, get_tables(p1.m).V)


def box_power(p: DeMessage, e: int, op) -> DeMessage:
    """e-fold application of op; e=0 gives op's identity element."""
    if e < 0:
        raise InvalidArgumentError(f"exponent must be >= 0, got {e}")
    if op is boxtimes:
        out = delta_message(p.m, 0)
    elif op is boxdot:
        out = delta_message(p.m, p.m)
    else:
        raise InvalidArgumentError("op must be boxtimes or boxdot")
    for _ in range(e):
        out = op(out, p)
    return out
