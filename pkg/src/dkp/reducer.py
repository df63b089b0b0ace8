"""Exact group fixation from per-group restricted LP bounds.

For every group whose third item is fully taken by the LP optimum, the LP is
re-solved with that item forbidden. If the rounded-down bound cannot beat the
incumbent, some optimal solution takes the third item (or the incumbent is
itself optimal), so the group leaves the problem with its third item packed.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction

from .lp import KpItem, LpResult, greedy, level1_dominated_via_2, make_item
from .model import NO_ITEM, DkpInstance, Solution, evaluate


@dataclass(frozen=True)
class GroupAudit:
    group: int
    ubar: Fraction
    lb: int
    fixed: bool

    @property
    def ubar_floor(self) -> int:
        return self.ubar.numerator // self.ubar.denominator


@dataclass(frozen=True)
class FixationReport:
    f0: tuple[tuple[int, int], ...]
    f1: tuple[int, ...]
    lb_best: int
    x_best: Solution
    lb_initial: int = 0
    audits: tuple[GroupAudit, ...] = field(default=(), repr=False)

    @classmethod
    def empty(cls, instance: DkpInstance) -> "FixationReport":
        x = evaluate(instance, [NO_ITEM] * instance.m)
        return cls((), (), 0, x, 0, ())


def _restricted_items(lp: LpResult, f0: set, group: int) -> list[KpItem]:
    # group items once its third item is forbidden: level 2 is now the top
    # level, and level 1 can only be dominated through level 2
    c, a = lp.kp.view.group(group)
    if (group, 1) in f0 and level1_dominated_via_2(c, a):
        return [make_item(group, 2, c[2], a[2], c[2], a[2])]
    return [make_item(group, 1, c[1], a[1], c[1], a[1]),
            make_item(group, 2, c[2] - c[1], a[2] - a[1], c[2], a[2])]


def ub_fix(instance: DkpInstance, lp: LpResult) -> FixationReport:
    """Audit groups in ascending order and collect the fixable ones.

    The incumbent improves along the way, so later groups are tested against
    a stronger bound than earlier ones; the result depends on the order.
    """
    if lp.kp is None:
        raise ValueError("lp result carries no incremental instance")
    order = list(lp.kp.order)
    f0 = set(lp.f0)
    lb_best = lp.lb
    x_best = lp.x
    f1: list[int] = []
    audits: list[GroupAudit] = []
    for i in range(instance.m):
        if lp.level(i, 3) != 1:
            continue
        restricted = [it for it in order if it.group != i]
        for it in _restricted_items(lp, f0, i):
            bisect.insort(restricted, it)
        out = greedy(restricted, instance.m, instance.capacity)
        xg = evaluate(instance, out.selection)
        assert xg.feasible
        if xg.value >= lb_best:
            lb_best, x_best = xg.value, xg
        fixed = out.ubar.numerator // out.ubar.denominator <= lb_best
        if fixed:
            f1.append(i)
        audits.append(GroupAudit(i, out.ubar, xg.value, fixed))
    return FixationReport(lp.f0, tuple(f1), lb_best, x_best, lp.lb, tuple(audits))


@dataclass(frozen=True, eq=False)
class ReducedInstance:
    """Residual problem left after fixations.

    ``groups[r]`` is the original index of residual group ``r`` and
    ``masks[r]`` the items (0, 1, 2) it may still use. Groups in ``fixed``
    are packed with their third item, which accounts for ``offset`` and the
    capacity drop from ``original.capacity`` to ``capacity``.
    """

    original: DkpInstance
    groups: tuple[int, ...]
    masks: tuple[tuple[int, ...], ...]
    capacity: int
    offset: int
    fixed: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.groups)

    def items(self, r: int) -> list[tuple[int, int, int]]:
        """``(item, profit, weight)`` of the allowed items of residual group ``r``."""
        g = self.groups[r]
        c, a = self.original.group(g)
        return [(k, c[k], a[k]) for k in self.masks[r]]

    def to_original(self, selection) -> tuple[int, ...]:
        """Lift a residual selection back to one selection per original group."""
        full = [NO_ITEM] * self.original.m
        for g in self.fixed:
            full[g] = 2
        for r, s in enumerate(selection):
            full[self.groups[r]] = int(s)
        return tuple(full)

    def variable_count(self) -> int:
        return sum(len(mask) for mask in self.masks)


def apply_fixations(instance: DkpInstance, report: FixationReport,
                    use_f0: bool = True, use_f1: bool = True) -> ReducedInstance:
    """Materialize the residual problem.

    With ``use_f0=False`` the reduction keeps an optimal solution (combined
    with ``report.lb_best``); masking LP-dominated items makes it a heuristic.
    """
    fixed = tuple(sorted(report.f1)) if use_f1 else ()
    fixed_set = set(fixed)
    capacity = instance.capacity
    offset = 0
    for g in fixed:
        (_, _, c2), (_, _, a2) = instance.group(g)
        capacity -= a2
        offset += c2
    # every fixed group has its third item fully in one LP solution
    assert capacity >= 0, "fixed third items exceed the capacity"
    dropped: dict[int, set[int]] = {}
    if use_f0:
        for g, level in report.f0:
            dropped.setdefault(g, set()).add(level - 1)
    groups, masks = [], []
    for g in range(instance.m):
        if g in fixed_set:
            continue
        groups.append(g)
        masks.append(tuple(k for k in (0, 1, 2) if k not in dropped.get(g, ())))
    return ReducedInstance(instance, tuple(groups), tuple(masks), capacity, offset, fixed)
