"""Preprocess-then-DP solve pipelines and their reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, replace

from .dp import dp_solve, dp_value
from .lp import lp_greedy
from .model import DkpInstance, Solution
from .reducer import FixationReport, apply_fixations, ub_fix

METHODS = ("full", "red", "lpdom", "red-lpdom", "heuristic")
EXACT_METHODS = frozenset({"full", "red"})

CSV_FIELDS = ("instance", "family", "m", "b", "method", "value", "optimal", "lb", "ub_floor",
              "lpdom_pct", "red_pct", "combined_pct", "pre_ms", "dp_ms", "total_ms", "gap_pct")


def _pct(part: int, whole: int) -> float:
    return round(100.0 * part / whole, 4) if whole else 0.0


def _ms(seconds: float) -> float:
    return round(1000.0 * seconds, 3)


@dataclass(frozen=True)
class SolveReport:
    method: str
    value: int
    optimal: bool
    lb: int | None = None
    ub_floor: int | None = None
    lpdom_pct: float | None = None
    red_pct: float | None = None
    combined_pct: float | None = None
    pre_ms: float = 0.0
    dp_ms: float = 0.0
    total_ms: float = 0.0
    gap_pct: float | None = None
    selection: tuple[int, ...] | None = None
    weight: int | None = None

    def with_optimum(self, optimum: int | None) -> "SolveReport":
        if optimum is None:
            return self
        gap = round(100.0 * (optimum - self.value) / optimum, 6) if optimum else 0.0
        return replace(self, gap_pct=gap)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["selection"] is not None:
            d["selection"] = list(d["selection"])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def table(self) -> str:
        rows = [(k, "-" if v is None else str(v)) for k, v in self.to_dict().items()
                if k != "selection"]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)

    def timing_free(self) -> dict:
        d = self.to_dict()
        for key in ("pre_ms", "dp_ms", "total_ms"):
            d.pop(key)
        return d


def fixation_stats(instance: DkpInstance, report: FixationReport,
                   with_f1: bool = True) -> tuple[float, float | None, float | None]:
    """LP_Dom, Red. and Red.+LP_Dom percentages.

    A fixed group fixes all three of its variables; LP-dominated items of the
    remaining groups add one variable each.
    """
    n, m = instance.n, instance.m
    lpdom = _pct(len(report.f0), n)
    if not with_f1:
        return lpdom, None, None
    f1 = set(report.f1)
    loose = sum(1 for g, _ in report.f0 if g not in f1)
    return lpdom, _pct(len(f1), m), _pct(3 * len(f1) + loose, n)


def solve(instance: DkpInstance, method: str = "red", with_solution: bool = True,
          mem_limit: int | None = None, optimum: int | None = None) -> SolveReport:
    """Run one pipeline.

    ``full`` is plain DP. ``red`` fixes groups exactly and returns the true
    optimum. ``lpdom`` and ``red-lpdom`` also drop LP-dominated items and may
    lose the optimum. ``heuristic`` returns the best greedy bound without DP.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    start = time.perf_counter()

    if method == "full":
        t0 = time.perf_counter()
        if with_solution:
            sol = dp_solve(instance, mem_limit)
            value = sol.value
        else:
            sol, value = None, dp_value(instance, mem_limit)
        t1 = time.perf_counter()
        return SolveReport(
            method, value, True, pre_ms=0.0, dp_ms=_ms(t1 - t0), total_ms=_ms(t1 - start),
            selection=sol.selection if sol else None, weight=sol.weight if sol else None,
        ).with_optimum(optimum)

    lp = lp_greedy(instance)
    if method == "lpdom":
        fix = FixationReport(lp.f0, (), lp.lb, lp.x, lp.lb)
    else:
        fix = ub_fix(instance, lp)
    lpdom, red, combined = fixation_stats(instance, fix, with_f1=method != "lpdom")
    common = dict(lb=fix.lb_best, ub_floor=lp.ubar_floor,
                  lpdom_pct=lpdom, red_pct=red, combined_pct=combined)

    if method == "heuristic":
        t1 = time.perf_counter()
        x = fix.x_best
        return SolveReport(method, x.value, False, pre_ms=_ms(t1 - start), dp_ms=0.0,
                           total_ms=_ms(t1 - start), selection=x.selection, weight=x.weight,
                           **common).with_optimum(optimum)

    reduced = apply_fixations(instance, fix, use_f0=method != "red", use_f1=method != "lpdom")
    t0 = time.perf_counter()
    best: Solution | None
    if with_solution:
        sol = dp_solve(reduced, mem_limit)
        dp_result = sol.value
    else:
        sol, dp_result = None, reduced.offset + dp_value(reduced, mem_limit)
    t1 = time.perf_counter()
    if dp_result >= fix.lb_best:
        value, best = dp_result, sol
    else:
        value, best = fix.lb_best, fix.x_best if with_solution else None
    return SolveReport(
        method, value, method in EXACT_METHODS, pre_ms=_ms(t0 - start), dp_ms=_ms(t1 - t0),
        total_ms=_ms(t1 - start), selection=best.selection if best else None,
        weight=best.weight if best else None, **common,
    ).with_optimum(optimum)
