"""Exact and heuristic solvers for the discounted 0-1 knapsack problem.

Preprocessing fixes groups whose third item provably belongs to an optimal
solution (and, heuristically, drops LP-dominated items); a capacity-indexed
dynamic program then solves what remains.
"""

from .dp import MemoryBudgetError, dp_solve, dp_table, dp_value
from .generator import GenSpec, generate, load, save
from .lp import LpResult, build_incremental_kp, classify_dominance, lp_greedy
from .model import DkpInstance, MckpView, Solution, evaluate, to_mckp, validate
from .oracle import brute_force
from .pipeline import METHODS, SolveReport, solve
from .reducer import FixationReport, ReducedInstance, apply_fixations, ub_fix

__all__ = [
    "DkpInstance", "MckpView", "Solution", "evaluate", "to_mckp", "validate",
    "GenSpec", "generate", "load", "save",
    "LpResult", "build_incremental_kp", "classify_dominance", "lp_greedy",
    "FixationReport", "ReducedInstance", "apply_fixations", "ub_fix",
    "MemoryBudgetError", "dp_solve", "dp_table", "dp_value",
    "brute_force", "METHODS", "SolveReport", "solve",
]
