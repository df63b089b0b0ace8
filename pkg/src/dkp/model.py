"""Core types for the discounted 0-1 knapsack problem.

An instance has ``m`` groups of three items. Item ``k`` of group ``i`` lives at
flat index ``3*i + k``; the third item of every group is the "discounted"
bundle of the first two (profit equal to their sum, weight strictly between
the larger of the two and their sum).

Solutions use a compressed encoding: one entry per group, ``-1`` for "nothing
taken" and ``0``, ``1`` or ``2`` for the chosen item.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

NO_ITEM = -1
_U32_MAX = np.iinfo(np.uint32).max


def _as_u32(values: Iterable[int], name: str) -> np.ndarray:
    raw = [int(v) for v in values]
    for j, v in enumerate(raw):
        if v < 0 or v > _U32_MAX:
            raise ValueError(f"{name}[{j}] = {v} is outside the unsigned 32-bit range")
    arr = np.asarray(raw, dtype=np.uint32)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DkpInstance:
    """A DKP instance: flat profit/weight arrays of length ``3*m`` and a capacity.

    Arrays are stored read-only as ``uint32``; every sum is taken in 64-bit
    (or Python int) arithmetic.
    """

    profits: np.ndarray
    weights: np.ndarray
    capacity: int

    def __post_init__(self) -> None:
        profits = _as_u32(self.profits, "profits")
        weights = _as_u32(self.weights, "weights")
        if profits.shape != weights.shape:
            raise ValueError("profits and weights must have the same length")
        if len(profits) % 3:
            raise ValueError(f"item count {len(profits)} is not a multiple of 3")
        capacity = int(self.capacity)
        if capacity < 0:
            raise ValueError(f"capacity must be non-negative, got {capacity}")
        object.__setattr__(self, "profits", profits)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "capacity", capacity)

    @classmethod
    def from_groups(cls, groups: Sequence[tuple[Sequence[int], Sequence[int]]],
                    capacity: int) -> "DkpInstance":
        """Build from ``[((c0, c1, c2), (a0, a1, a2)), ...]``."""
        profits = [c for cs, _ in groups for c in cs]
        weights = [a for _, ws in groups for a in ws]
        return cls(profits, weights, capacity)

    @property
    def m(self) -> int:
        return len(self.profits) // 3

    @property
    def n(self) -> int:
        return len(self.profits)

    def group(self, i: int) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        """Profits and weights of group ``i`` as Python ints."""
        c = self.profits[3 * i:3 * i + 3]
        a = self.weights[3 * i:3 * i + 3]
        return (int(c[0]), int(c[1]), int(c[2])), (int(a[0]), int(a[1]), int(a[2]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DkpInstance):
            return NotImplemented
        return (self.capacity == other.capacity
                and np.array_equal(self.profits, other.profits)
                and np.array_equal(self.weights, other.weights))

    def __hash__(self) -> int:
        return hash((self.capacity, self.profits.tobytes(), self.weights.tobytes()))

    def __repr__(self) -> str:
        return f"DkpInstance(m={self.m}, capacity={self.capacity})"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    group: int | None = None

    def __str__(self) -> str:
        where = "" if self.group is None else f" at group {self.group}"
        return f"{self.message}{where}"


@dataclass(frozen=True)
class ValidationReport:
    strict: bool
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def groups(self, code: str | None = None) -> list[int]:
        return [v.group for v in self.violations
                if v.group is not None and (code is None or v.code == code)]


def validate(instance: DkpInstance, strict: bool = False) -> ValidationReport:
    """Check the structural assumptions on every group.

    Lenient mode checks the per-group orderings, the profit-sum rule and the
    discounted-weight rule, and positivity. Strict mode also requires that the
    capacity binds (total third-item weight exceeds ``b``) while every single
    third item fits. Violations are collected, never raised.
    """
    found: list[Violation] = []
    for i in range(instance.m):
        (c0, c1, c2), (a0, a1, a2) = instance.group(i)
        if min(c0, c1, c2, a0, a1, a2) <= 0:
            found.append(Violation("nonpositive", "all c_j and a_j must be positive", i))
        if c2 != c0 + c1:
            found.append(Violation("profit-sum", "c_{3i+2} ≠ c_{3i}+c_{3i+1}", i))
        if not c0 < c1 < c2:
            found.append(Violation("profit-order", "c_{3i} < c_{3i+1} < c_{3i+2} fails", i))
        if not a0 < a1 < a2:
            found.append(Violation("weight-order", "a_{3i} < a_{3i+1} < a_{3i+2} fails", i))
        if not a2 < a0 + a1:
            found.append(Violation("weight-discount", "a_{3i+2} < a_{3i}+a_{3i+1} fails", i))
    if strict:
        thirds = instance.weights[2::3].astype(np.int64)
        if not int(thirds.sum()) > instance.capacity:
            found.append(Violation("capacity-total", "Σ a_{3i+2} > b fails"))
        for i in np.flatnonzero(thirds > instance.capacity):
            found.append(Violation("capacity-item", "a_{3i+2} ≤ b fails", int(i)))
    return ValidationReport(strict, tuple(found))


@dataclass(frozen=True, eq=False)
class MckpView:
    """Multiple-choice view: four items per group, item 0 being the empty dummy.

    ``profits[i, k]`` and ``weights[i, k]`` hold item ``k`` of group ``i`` for
    ``k`` in 0..3, where ``k >= 1`` maps to flat item ``3*i + k - 1``.
    """

    profits: np.ndarray
    weights: np.ndarray

    @property
    def m(self) -> int:
        return self.profits.shape[0]

    def group(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(int(v) for v in self.profits[i]),
                tuple(int(v) for v in self.weights[i]))


def to_mckp(instance: DkpInstance) -> MckpView:
    m = instance.m
    profits = np.zeros((m, 4), dtype=np.int64)
    weights = np.zeros((m, 4), dtype=np.int64)
    profits[:, 1:] = instance.profits.reshape(m, 3)
    weights[:, 1:] = instance.weights.reshape(m, 3)
    profits.setflags(write=False)
    weights.setflags(write=False)
    return MckpView(profits, weights)


def from_mckp(view: MckpView, capacity: int) -> DkpInstance:
    """Drop the dummy items again."""
    return DkpInstance(view.profits[:, 1:].ravel(), view.weights[:, 1:].ravel(), capacity)


@dataclass(frozen=True)
class Solution:
    selection: tuple[int, ...]
    value: int
    weight: int
    feasible: bool = field(default=True)

    @property
    def m(self) -> int:
        return len(self.selection)

    def to_binary(self) -> list[int]:
        """The ``3*m`` binary vector of the standard formulation."""
        x = [0] * (3 * len(self.selection))
        for i, s in enumerate(self.selection):
            if s != NO_ITEM:
                x[3 * i + s] = 1
        return x


def evaluate(instance: DkpInstance, selection: Sequence[int]) -> Solution:
    """Value, weight and feasibility of a per-group selection."""
    if len(selection) != instance.m:
        raise ValueError(f"selection has length {len(selection)}, expected {instance.m}")
    value = 0
    weight = 0
    sel = []
    for i, s in enumerate(selection):
        s = int(s)
        if s not in (NO_ITEM, 0, 1, 2):
            raise ValueError(f"selection[{i}] = {s} is not in {{-1, 0, 1, 2}}")
        sel.append(s)
        if s != NO_ITEM:
            value += int(instance.profits[3 * i + s])
            weight += int(instance.weights[3 * i + s])
    return Solution(tuple(sel), value, weight, weight <= instance.capacity)


def selection_from_binary(x: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :meth:`Solution.to_binary`; rejects two items from one group."""
    if len(x) % 3:
        raise ValueError("binary vector length must be a multiple of 3")
    sel = []
    for i in range(len(x) // 3):
        chosen = [k for k in range(3) if x[3 * i + k]]
        if len(chosen) > 1:
            raise ValueError(f"group {i} has more than one selected item")
        sel.append(chosen[0] if chosen else NO_ITEM)
    return tuple(sel)
