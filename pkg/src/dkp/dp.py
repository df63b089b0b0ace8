"""Capacity-indexed dynamic programming over groups.

Stage ``i`` holds ``v_i(beta)``, the best value from groups ``0..i`` within
capacity ``beta``; each stage takes the best of "no item" and every allowed
item that fits. Value-only runs keep two rows; solution runs also keep a
packed 2-bit choice code per (stage, state) for backtracking.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from .model import NO_ITEM, DkpInstance, Solution, evaluate
from .reducer import ReducedInstance

Problem = Union[DkpInstance, ReducedInstance]

DEFAULT_MEM_LIMIT = 2 * 1024**3


class MemoryBudgetError(MemoryError):
    def __init__(self, required: int, limit: int, predecessors: int = 0):
        self.required = required
        self.limit = limit
        detail = f" ({predecessors} bytes for predecessors)" if predecessors else ""
        super().__init__(f"dynamic programming needs {required} bytes{detail}, "
                         f"over the memory limit of {limit} bytes")


def _stages(problem: Problem) -> tuple[int, list[list[tuple[int, int, int]]]]:
    if isinstance(problem, ReducedInstance):
        return problem.capacity, [problem.items(r) for r in range(problem.m)]
    stages = []
    for i in range(problem.m):
        c, a = problem.group(i)
        stages.append([(k, c[k], a[k]) for k in range(3)])
    return problem.capacity, stages


def _packed_width(capacity: int) -> int:
    return (capacity + 1 + 3) // 4


def required_bytes(problem: Problem, solution: bool) -> tuple[int, int]:
    """Bytes for the two value rows and for the packed predecessor matrix."""
    rows = 2 * 8 * (problem.capacity + 1)
    pred = problem.m * _packed_width(problem.capacity) if solution else 0
    return rows, pred


def _check_budget(problem: Problem, solution: bool, mem_limit: int | None) -> None:
    rows, pred = required_bytes(problem, solution)
    limit = DEFAULT_MEM_LIMIT if mem_limit is None else mem_limit
    if rows + pred > limit:
        raise MemoryBudgetError(rows + pred, limit, pred)


def dp_value(problem: Problem, mem_limit: int | None = None) -> int:
    """Optimal value ``v_{m-1}(b)`` of the (possibly reduced) problem.

    For a :class:`ReducedInstance` this is the residual optimum only; the
    fixed groups' ``offset`` is not included.
    """
    _check_budget(problem, False, mem_limit)
    b, stages = _stages(problem)
    prev = np.zeros(b + 1, dtype=np.int64)
    cur = np.empty_like(prev)
    for items in stages:
        np.copyto(cur, prev)
        for _, c, a in items:
            if a <= b:
                np.maximum(cur[a:], prev[:b + 1 - a] + c, out=cur[a:])
        prev, cur = cur, prev
    return int(prev[b])


def dp_table(problem: Problem) -> np.ndarray:
    """Full ``m x (b+1)`` table of stage values (small problems only)."""
    b, stages = _stages(problem)
    table = np.zeros((len(stages), b + 1), dtype=np.int64)
    prev = np.zeros(b + 1, dtype=np.int64)
    for s, items in enumerate(stages):
        row = table[s]
        row[:] = prev
        for _, c, a in items:
            if a <= b:
                np.maximum(row[a:], prev[:b + 1 - a] + c, out=row[a:])
        prev = row
    return table


def _pack(codes: np.ndarray, out: np.ndarray) -> None:
    padded = np.zeros(4 * len(out), dtype=np.uint8)
    padded[:len(codes)] = codes
    q = padded.reshape(-1, 4)
    np.bitwise_or(q[:, 0], q[:, 1] << 2, out=out)
    out |= q[:, 2] << 4
    out |= q[:, 3] << 6


def dp_solve(problem: Problem, mem_limit: int | None = None) -> Solution:
    """Optimal solution by backtracking through packed choice codes.

    On ties the backtrack prefers "no item", then item 0, 1, 2. For a
    :class:`ReducedInstance` the returned selection is in original group
    space with fixed groups on their third item, so its value includes the
    offset.
    """
    _check_budget(problem, True, mem_limit)
    b, stages = _stages(problem)
    m = len(stages)
    pred = np.zeros((m, _packed_width(b)), dtype=np.uint8)
    prev = np.zeros(b + 1, dtype=np.int64)
    cur = np.empty_like(prev)
    choice = np.empty(b + 1, dtype=np.uint8)
    for s, items in enumerate(stages):
        np.copyto(cur, prev)
        choice.fill(0)
        for k, c, a in items:
            if a > b:
                continue
            cand = prev[:b + 1 - a] + c
            better = cand > cur[a:]
            np.copyto(cur[a:], cand, where=better)
            choice[a:][better] = k + 1
        _pack(choice, pred[s])
        prev, cur = cur, prev

    selection = [NO_ITEM] * m
    beta = b
    for s in range(m - 1, -1, -1):
        code = (int(pred[s, beta >> 2]) >> (2 * (beta & 3))) & 3
        if code:
            k = code - 1
            selection[s] = k
            beta -= next(a for kk, _, a in stages[s] if kk == k)

    if isinstance(problem, ReducedInstance):
        sol = evaluate(problem.original, problem.to_original(selection))
        assert sol.value == problem.offset + int(prev[b])
    else:
        sol = evaluate(problem, selection)
        assert sol.value == int(prev[b])
    assert sol.feasible
    return sol
