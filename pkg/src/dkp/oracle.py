"""Exhaustive reference solver for small instances.

Enumerates every per-group selection, level by level, discarding partial
selections that already exceed the capacity. Nothing here shares logic with
the dynamic program; it exists to check it.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from .model import NO_ITEM, DkpInstance, Solution, evaluate
from .reducer import ReducedInstance

DEFAULT_GROUP_LIMIT = 12


class OracleLimitError(ValueError):
    pass


def _options(problem, g: int) -> list[tuple[int, int, int]]:
    if isinstance(problem, ReducedInstance):
        return [(NO_ITEM, 0, 0)] + problem.items(g)
    c, a = problem.group(g)
    return [(NO_ITEM, 0, 0)] + [(k, c[k], a[k]) for k in range(3)]


def brute_force(problem: Union[DkpInstance, ReducedInstance],
                group_limit: int = DEFAULT_GROUP_LIMIT) -> tuple[int, Solution]:
    """Best value and a witness.

    For a :class:`ReducedInstance` the value is the residual optimum (no
    offset) while the witness is lifted to the original groups.
    """
    m = problem.m
    if m > group_limit:
        raise OracleLimitError(f"{m} groups exceed the brute-force limit of {group_limit}")
    cap = problem.capacity
    values = np.zeros(1, dtype=np.int64)
    weights = np.zeros(1, dtype=np.int64)
    choices = np.zeros((1, 0), dtype=np.int8)
    for g in range(m):
        opts = _options(problem, g)
        codes = np.array([k for k, _, _ in opts], dtype=np.int8)
        cs = np.array([c for _, c, _ in opts], dtype=np.int64)
        ws = np.array([a for _, _, a in opts], dtype=np.int64)
        values = (values[:, None] + cs[None, :]).ravel()
        weights = (weights[:, None] + ws[None, :]).ravel()
        choices = np.hstack([np.repeat(choices, len(opts), axis=0),
                             np.tile(codes, len(choices))[:, None]])
        keep = weights <= cap
        values, weights, choices = values[keep], weights[keep], choices[keep]
    best = int(np.argmax(values))
    selection = tuple(int(s) for s in choices[best])
    if isinstance(problem, ReducedInstance):
        return int(values[best]), evaluate(problem.original, problem.to_original(selection))
    return int(values[best]), evaluate(problem, selection)
