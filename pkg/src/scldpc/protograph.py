"""Protograph base matrices, edge spreadings, and spatially coupled chains."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import GrammarError, InvalidArgumentError, NonpositiveRateError

#: Sentinel accepted by design_rate for the uncoupled limit.
INFINITE_L = math.inf


class CouplingInfo(NamedTuple):
    """Shape metadata a coupled base matrix carries for windowed decoding."""

    w: int   # coupling width
    L: int   # coupling length (column blocks)
    c: int   # columns per block
    cb: int  # rows per block (c - b)


class BaseMatrix:
    """Non-negative integer protograph matrix; entries are edge multiplicities."""

    def __init__(self, entries, coupling: Optional[CouplingInfo] = None):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidArgumentError(f"base matrix must be 2-D and non-empty, got shape {arr.shape}")
        if (arr < 0).any():
            raise InvalidArgumentError("base matrix entries must be non-negative")
        arr = arr.copy()
        arr.setflags(write=False)
        self.entries = arr
        self.coupling = coupling

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def permuted_rows(self, order) -> "BaseMatrix":
        return BaseMatrix(self.entries[list(order), :])

    def __eq__(self, other):
        return isinstance(other, BaseMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"BaseMatrix({self.entries.tolist()})"


class ComponentStack:
    """The (w+1) component matrices of an edge spreading.

    Columns are canonicalized to ascending lexicographic order of the stacked
    column vectors (so the [1, J-1] pattern sorts before [J-1, 1]); column
    permutations do not change the ensemble.
    """

    def __init__(self, components):
        comps = [np.asarray(c, dtype=np.int64) for c in components]
        if len(comps) < 2:
            raise InvalidArgumentError("a spreading needs at least two components (w >= 1)")
        shape = comps[0].shape
        if any(c.shape != shape for c in comps):
            raise InvalidArgumentError("all components must have identical shape")
        if len(shape) != 2:
            raise InvalidArgumentError("components must be 2-D")
        stack = np.vstack(comps)
        cb, c = shape
        w = len(comps) - 1
        if cb == 1:
            J = int(stack[:, 0].sum())
            if w > J - 1:
                raise InvalidArgumentError(f"coupling width {w} exceeds J-1 = {J - 1}")
            for col in stack.T:
                if col.sum() != J:
                    raise InvalidArgumentError("every stack column must sum to the variable degree J")
                if (col < 1).any() or (col > J - w).any():
                    raise InvalidArgumentError(
                        f"stack column {col.tolist()} outside the allowed range 1..{J - w}"
                    )
            self.J = J
        else:
            self.J = int(stack[:, 0].sum())
        order = sorted(range(c), key=lambda j: tuple(stack[:, j]))
        stack = stack[:, order]
        stack.setflags(write=False)
        self._stack = stack
        self.w = w
        self.cb = cb
        self.c = c

    @property
    def k(self) -> int:
        return self.c

    @property
    def components(self):
        return tuple(self._stack[i * self.cb : (i + 1) * self.cb, :] for i in range(self.w + 1))

    @property
    def stacked(self) -> np.ndarray:
        return self._stack

    def block_sum(self) -> np.ndarray:
        """Elementwise sum of the components (the uncoupled block base matrix)."""
        return sum(self.components[1:], start=self.components[0].copy())

    def __eq__(self, other):
        return (
            isinstance(other, ComponentStack)
            and self.w == other.w
            and np.array_equal(self._stack, other._stack)
        )

    def __repr__(self):
        return f"ComponentStack({[c.tolist() for c in self.components]})"


def make_block_base(J: int, k: int) -> BaseMatrix:
    """1 x k base matrix of a (J, kJ)-regular block ensemble."""
    if J < 2:
        raise InvalidArgumentError(f"variable degree J must be >= 2, got {J}")
    if k < 1:
        raise InvalidArgumentError(f"ratio k must be >= 1, got {k}")
    return BaseMatrix(np.full((1, k), J))


def enumerate_edge_spreadings(J: int, w: int) -> list[tuple[int, ...]]:
    """All length-(w+1) columns with entries in 1..J-w summing to J, lexicographic."""
    if w < 1 or w > J - 1:
        raise InvalidArgumentError(f"width must satisfy 1 <= w <= J-1, got w={w}, J={J}")
    out = []
    for combo in itertools.product(range(1, J - w + 1), repeat=w + 1):
        if sum(combo) == J:
            out.append(combo)
    return out


def make_classical_spreading(J: int, k: int) -> ComponentStack:
    """Width J-1 spreading with every component equal to the all-ones row."""
    if J < 2:
        raise InvalidArgumentError(f"variable degree J must be >= 2, got {J}")
    if k < 1:
        raise InvalidArgumentError(f"ratio k must be >= 1, got {k}")
    return ComponentStack([np.ones((1, k), dtype=np.int64) for _ in range(J)])


def make_type_p_spreading(J: int, k: int, p: int) -> ComponentStack:
    """Width-1 spreading with (k-p+1) columns of [1, J-1] and (p-1) of [J-1, 1]."""
    if J < 3:
        raise InvalidArgumentError(f"type-p spreading needs J >= 3, got {J}")
    if k < 1:
        raise InvalidArgumentError(f"ratio k must be >= 1, got {k}")
    if p < 1 or p > k + 1:
        raise InvalidArgumentError(f"type index must satisfy 1 <= p <= k+1, got {p}")
    n_a = k - p + 1
    top = [1] * n_a + [J - 1] * (p - 1)
    bot = [J - 1] * n_a + [1] * (p - 1)
    return ComponentStack([np.array([top]), np.array([bot])])


def couple(stack: ComponentStack, L: int) -> BaseMatrix:
    """Band matrix of the terminated chain: block column t holds B_0..B_w in rows t..t+w."""
    if not (isinstance(L, int) and L >= 1):
        raise InvalidArgumentError(f"coupling length must be an integer >= 1, got {L}")
    w, cb, c = stack.w, stack.cb, stack.c
    out = np.zeros(((L + w) * cb, L * c), dtype=np.int64)
    comps = stack.components
    for t in range(L):
        for i in range(w + 1):
            out[(t + i) * cb : (t + i + 1) * cb, t * c : (t + 1) * c] = comps[i]
    return BaseMatrix(out, coupling=CouplingInfo(w=w, L=L, c=c, cb=cb))


def design_rate(stack: ComponentStack, L) -> Fraction:
    """Exact design rate of the length-L chain; L=INFINITE_L gives the block rate."""
    c, cb, w = stack.c, stack.cb, stack.w
    if L == INFINITE_L:
        return Fraction(c - cb, c)
    if not (isinstance(L, int) and L >= 1):
        raise InvalidArgumentError(f"coupling length must be an integer >= 1 or INFINITE_L, got {L}")
    if L * c <= (L + w) * cb:
        raise NonpositiveRateError(
            f"L={L} gives nonpositive rate for c={c}, w={w}; increase L"
        )
    return 1 - Fraction((L + w) * cb, L * c)


DEFAULT_L = 100

_FAMILIES = ("block", "classical_sc", "type_p_sc", "custom_sc")


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters identifying one code ensemble."""

    family: str
    J: int
    k: int
    m: int
    p: Optional[int] = None
    L: int = DEFAULT_L
    custom_stack: Optional[ComponentStack] = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidArgumentError(f"unknown family {self.family!r}")
        if self.J < 2 or self.k < 1 or self.m < 1 or self.L < 1:
            raise InvalidArgumentError("need J >= 2, k >= 1, m >= 1, L >= 1")
        if self.family == "type_p_sc":
            if self.p is None or not 1 <= self.p <= self.k + 1:
                raise InvalidArgumentError(f"type index p={self.p} outside [1, {self.k + 1}]")
        if self.family == "custom_sc" and self.custom_stack is None:
            raise InvalidArgumentError("custom_sc requires a component stack")

    @property
    def K(self) -> int:
        return self.k * self.J

    @property
    def w(self) -> Optional[int]:
        if self.family == "block":
            return None
        return self.stack().w

    def stack(self) -> Optional[ComponentStack]:
        if self.family == "block":
            return None
        if self.family == "classical_sc":
            return make_classical_spreading(self.J, self.k)
        if self.family == "type_p_sc":
            return make_type_p_spreading(self.J, self.k, self.p)
        return self.custom_stack

    def base_matrix(self) -> BaseMatrix:
        if self.family == "block":
            return make_block_base(self.J, self.k)
        return couple(self.stack(), self.L)

    def design_rate(self) -> Fraction:
        if self.family == "block":
            return Fraction(self.k - 1, self.k)
        return design_rate(self.stack(), self.L)

    def with_(self, **kwargs) -> "EnsembleSpec":
        fields = dict(
            family=self.family, J=self.J, k=self.k, m=self.m, p=self.p, L=self.L,
            custom_stack=self.custom_stack,
        )
        fields.update(kwargs)
        return EnsembleSpec(**fields)

    def name(self) -> str:
        if self.family == "block":
            return f"B({self.J},{self.K},{self.m})"
        if self.family == "classical_sc":
            return f"C{self.J - 1}({self.J},{self.K},{self.m})"
        if self.family == "type_p_sc":
            return f"C1({self.J},{self.K},{self.m},{self.p})"
        return f"custom({self.J},{self.K},{self.m},w={self.w})"


_GRAMMAR = re.compile(r"^(B|C(\d+))\((\d+),(\d+),(\d+)(?:,(\d+))?(?:,L=(\d+))?\)$")


def parse_ensemble(text: str) -> EnsembleSpec:
    """Parse an ensemble name: B(J,K,m), C{w}(J,K,m), or C1(J,K,m,p), optional ,L=<int>."""
    mobj = _GRAMMAR.match(text.strip())
    if mobj is None:
        raise GrammarError(f"cannot parse ensemble {text!r}")
    head, cw, J_s, K_s, m_s, p_s, L_s = mobj.groups()
    J, K, m = int(J_s), int(K_s), int(m_s)
    if J < 2 or K % J != 0:
        raise GrammarError(f"{text!r}: K must be a multiple of J >= 2")
    k = K // J
    L = int(L_s) if L_s is not None else DEFAULT_L
    if head == "B":
        if p_s is not None:
            raise GrammarError(f"{text!r}: block ensembles take no type index")
        return EnsembleSpec(family="block", J=J, k=k, m=m, L=L)
    cw = int(cw)
    if p_s is not None:
        if cw != 1:
            raise GrammarError(f"{text!r}: a type index is only valid for C1")
        return EnsembleSpec(family="type_p_sc", J=J, k=k, m=m, p=int(p_s), L=L)
    if cw != J - 1:
        raise GrammarError(f"{text!r}: classical spreading of degree {J} must be C{J - 1}")
    return EnsembleSpec(family="classical_sc", J=J, k=k, m=m, L=L)
