"""LP-dominance, the incremental knapsack transform and the LP-greedy bound.

Group items are numbered on the multiple-choice view: level 0 is the empty
dummy and levels 1..3 are the three real items (flat item ``3*i + level - 1``).
A level is *LP-dominated* when it lies on or below the segment joining two of
its neighbours in the (weight, profit) plane; such levels are never needed
to reach the LP optimum, so they are dropped before the greedy pass.

All dominance tests cross-multiply integers and the upper bound is an exact
:class:`~fractions.Fraction`; floats appear only for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .model import NO_ITEM, DkpInstance, MckpView, Solution, evaluate, to_mckp, validate


class Dominance(NamedTuple):
    dom1: bool
    dom2: bool


class KpItem(NamedTuple):
    """One incremental item, ordered by ``key``."""

    key: tuple
    group: int
    level: int
    profit: int
    weight: int
    full_profit: int
    full_weight: int


def _ge(num1: int, den1: int, num2: int, den2: int) -> bool:
    # num1/den1 >= num2/den2 for positive denominators
    return num1 * den2 >= num2 * den1


# A level is LP-dominated when it lies on or under the segment joining a
# lighter and a heavier level of its group; each helper tests one segment.

def level1_dominated_via_2(c: Sequence[int], a: Sequence[int]) -> bool:
    """Level 1 under the segment from the dummy level to level 2."""
    return _ge(c[2] - c[1], a[2] - a[1], c[1], a[1])


def level1_dominated_via_3(c: Sequence[int], a: Sequence[int]) -> bool:
    """Level 1 under the segment from the dummy level to level 3."""
    return _ge(c[3] - c[1], a[3] - a[1], c[1], a[1])


def level2_dominated_via_1(c: Sequence[int], a: Sequence[int]) -> bool:
    """Level 2 under the segment from level 1 to level 3."""
    return _ge(c[3] - c[2], a[3] - a[2], c[2] - c[1], a[2] - a[1])


def level2_dominated_via_0(c: Sequence[int], a: Sequence[int]) -> bool:
    """Level 2 under the segment from the dummy level to level 3."""
    return _ge(c[3] - c[2], a[3] - a[2], c[2], a[2])


def classify_dominance(view: MckpView, group: int) -> Dominance:
    """Which of levels 1 and 2 of ``group`` are LP-dominated (ties count)."""
    c, a = view.group(group)
    return Dominance(level1_dominated_via_2(c, a) or level1_dominated_via_3(c, a),
                     level2_dominated_via_1(c, a) or level2_dominated_via_0(c, a))


def raw_increments(c: Sequence[int], a: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Level-to-level increments with no dominance removal."""
    return (tuple(c[k] - c[k - 1] for k in (1, 2, 3)),
            tuple(a[k] - a[k - 1] for k in (1, 2, 3)))


def sort_key(profit: int, weight: int, group: int, level: int) -> tuple:
    # non-increasing efficiency, then higher level, then lower group index
    return (-Fraction(profit, weight), -level, group)


def make_item(group: int, level: int, profit: int, weight: int,
              full_profit: int, full_weight: int) -> KpItem:
    return KpItem(sort_key(profit, weight, group, level), group, level,
                  profit, weight, full_profit, full_weight)


@dataclass(frozen=True, eq=False)
class IncrementalKp:
    """Incremental profits/weights per (group, level) plus the greedy order.

    ``profits[i, k-1]`` and ``weights[i, k-1]`` hold level ``k``; dominated
    levels carry zeros and ``alive[i, k-1] == False`` (efficiency -inf).
    """

    view: MckpView
    profits: np.ndarray
    weights: np.ndarray
    alive: np.ndarray
    order: tuple[KpItem, ...]

    def efficiency(self, group: int, level: int) -> Fraction | float:
        if not self.alive[group, level - 1]:
            return float("-inf")
        return Fraction(int(self.profits[group, level - 1]), int(self.weights[group, level - 1]))


def group_items(view: MckpView, group: int) -> tuple[list[KpItem], list[tuple[int, int]]]:
    """Surviving incremental items of one group and its dominated levels."""
    c, a = view.group(group)
    dom = classify_dominance(view, group)
    items: list[KpItem] = []
    dominated: list[tuple[int, int]] = []
    c1 = a1 = 0
    if dom.dom1:
        dominated.append((group, 1))
    else:
        c1, a1 = c[1], a[1]
        items.append(make_item(group, 1, c1, a1, c[1], a[1]))
    if dom.dom2:
        dominated.append((group, 2))
        items.append(make_item(group, 3, c[3] - c1, a[3] - a1, c[3], a[3]))
    else:
        c2, a2 = c[2] - c1, a[2] - a1
        items.append(make_item(group, 2, c2, a2, c[2], a[2]))
        items.append(make_item(group, 3, c[3] - c[2], a[3] - a[2], c[3], a[3]))
    return items, dominated


def build_incremental_kp(view: MckpView) -> tuple[IncrementalKp, tuple[tuple[int, int], ...]]:
    m = view.m
    profits = np.zeros((m, 3), dtype=np.int64)
    weights = np.zeros((m, 3), dtype=np.int64)
    alive = np.zeros((m, 3), dtype=bool)
    items: list[KpItem] = []
    f0: list[tuple[int, int]] = []
    for i in range(m):
        its, dominated = group_items(view, i)
        for it in its:
            profits[i, it.level - 1] = it.profit
            weights[i, it.level - 1] = it.weight
            alive[i, it.level - 1] = True
        items.extend(its)
        f0.extend(dominated)
    for arr in (profits, weights, alive):
        arr.setflags(write=False)
    items.sort()
    return IncrementalKp(view, profits, weights, alive, tuple(items)), tuple(f0)


class GreedyOutcome(NamedTuple):
    ubar: Fraction
    xbar: dict
    selection: list
    fractional: KpItem | None


def greedy(order: Sequence[KpItem], m: int, capacity: int) -> GreedyOutcome:
    """Greedy LP solve over sorted incremental items, then a greedy completion.

    The LP pass takes items while they fit (a tie with the residual capacity
    counts as fitting) and stops at the first item that does not, which then
    enters fractionally. The rounded-down LP solution is then completed with
    whole items, in the same order, from groups that hold nothing yet.
    """
    level = [0] * m
    residual = capacity
    value = 0
    stop = len(order)
    fractional = None
    for pos, it in enumerate(order):
        if it.weight <= residual:
            value += it.profit
            residual -= it.weight
            level[it.group] = it.level
        else:
            fractional = it
            stop = pos + 1
            break

    xbar = {(g, k): Fraction(1) for g, k in enumerate(level) if k}
    ubar = Fraction(value)
    if fractional is not None:
        frac = Fraction(residual, fractional.weight)
        ubar += fractional.profit * frac
        g = fractional.group
        if frac:
            xbar[(g, fractional.level)] = frac
            if level[g]:
                xbar[(g, level[g])] = 1 - frac

    selection = [k - 1 if k else NO_ITEM for k in level]
    for it in order[stop:]:
        if residual <= 0:
            break
        if selection[it.group] == NO_ITEM and it.full_weight <= residual:
            selection[it.group] = it.level - 1
            residual -= it.full_weight
    return GreedyOutcome(ubar, xbar, selection, fractional)


@dataclass(frozen=True, eq=False)
class LpResult:
    """LP optimum ``xbar`` (nonzero levels only), its value ``ubar``, a greedy
    feasible solution ``x`` with value ``lb`` and the LP-dominated levels ``f0``."""

    xbar: dict
    ubar: Fraction
    lb: int
    x: Solution
    f0: tuple[tuple[int, int], ...]
    kp: IncrementalKp | None = None

    @property
    def ubar_floor(self) -> int:
        return self.ubar.numerator // self.ubar.denominator

    @property
    def ubar_float(self) -> float:
        return float(self.ubar)

    def level(self, group: int, level: int) -> Fraction:
        return self.xbar.get((group, level), Fraction(0))

    def fractional_levels(self) -> list[tuple[int, int]]:
        return sorted(key for key, v in self.xbar.items() if v != 1)


def lp_greedy(instance: DkpInstance) -> LpResult:
    """Solve the LP relaxation and build a greedy feasible solution.

    Guarantees ``lb <= optimum <= ubar``.
    """
    report = validate(instance)
    if not report.ok:
        raise ValueError(f"instance violates the DKP assumptions: {report.violations[0]}")
    kp, f0 = build_incremental_kp(to_mckp(instance))
    out = greedy(kp.order, instance.m, instance.capacity)
    x = evaluate(instance, out.selection)
    assert x.feasible
    return LpResult(out.xbar, out.ubar, x.value, x, f0, kp)
