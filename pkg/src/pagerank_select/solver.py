"""Exact cutting-plane loop: alternate master solves and cut separation.

Each round solves the master over the accumulated pool, evaluates the true
objective at the master's incumbent, and stops once the incumbent value and
the master bound meet within the gap tolerance; otherwise one cut of the
chosen family is separated at the incumbent and the loop repeats.  Every cut
is tight at its incumbent, so an incumbent can never recur while a gap
persists; if that happens anyway a separated cut is numerically invalid and
the loop aborts loudly rather than cycling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import chain, cuts as cut_families, master as master_mod, oracle
from .errors import DampingRangeError, Infeasible, NoConvergence
from .instance import ConstraintSet, EMPTY_CONSTRAINTS, Instance, Selection

OPTIMAL = "optimal"
ITER_LIMIT = "iter_limit"

DEFAULT_EPS = 1e-9
DEFAULT_MAX_ITERS = 10_000


@dataclass(frozen=True)
class SolveReport:
    """Trace of one cutting-plane run.

    ``lower_bounds``/``upper_bounds`` hold one entry per master solve (the
    master bound and the best incumbent value so far); ``iterations`` counts
    separation rounds, so it equals ``cuts_added``.
    """

    status: str
    best_y: Selection
    best_value: float
    lower_bounds: tuple[float, ...]
    upper_bounds: tuple[float, ...]
    cuts_added: int
    gamma_calls_total: int
    iterations: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "best_y": list(self.best_y),
            "best_value": self.best_value,
            "lower_bounds": list(self.lower_bounds),
            "upper_bounds": list(self.upper_bounds),
            "cuts_added": self.cuts_added,
            "gamma_calls_total": self.gamma_calls_total,
            "iterations": self.iterations,
        }


def solve(
    instance: Instance,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
    family: str = cut_families.LIFTED,
    ordering_strategy: str = cut_families.BY_INDEX,
    eps: float = DEFAULT_EPS,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> SolveReport:
    """Minimize the first return time over the feasible selections, exactly.

    Raises Infeasible when the constraint set admits no selection; returns a
    partial trace with status "iter_limit" once max_iters cuts have been
    separated without closing the gap.
    """
    if family not in cut_families.FAMILIES:
        raise ValueError(f"unknown cut family {family!r}")
    if ordering_strategy not in cut_families.ORDERING_STRATEGIES:
        raise ValueError(f"unknown ordering strategy {ordering_strategy!r}")
    if instance.damping >= 1.0:
        raise DampingRangeError("the cutting-plane solver requires damping < 1")
    if eps < 0:
        raise ValueError(f"gap tolerance must be nonnegative, got {eps}")

    z_count = instance.z_count
    gamma_calls = 0
    shared_lower = None
    if family == cut_families.L_SHAPED:
        shared_lower = oracle.min_unconstrained(instance)
        gamma_calls += 1

    pool: list[cut_families.Cut] = []
    lower: list[float] = []
    upper: list[float] = []
    best_y: Selection | None = None
    best_val = math.inf
    separated: set[Selection] = set()
    iterations = 0

    while True:
        result = master_mod.solve_master(pool, constraints, z_count)
        if result.status == master_mod.INFEASIBLE:
            raise Infeasible("constraint set admits no selection")
        incumbent = result.y
        value = chain.hitting_times(instance, incumbent).fr
        if value < best_val:
            best_y, best_val = incumbent, value
        lower.append(result.theta)
        upper.append(best_val)
        if best_val - result.theta <= eps:
            status = OPTIMAL
            break
        if iterations >= max_iters:
            status = ITER_LIMIT
            break
        if incumbent in separated:
            raise NoConvergence(
                f"incumbent {incumbent} recurred with gap {best_val - result.theta:.3e}; "
                "a separated cut is numerically invalid"
            )
        separated.add(incumbent)
        if family == cut_families.L_SHAPED:
            cut = cut_families.l_shaped_cut(instance, incumbent, shared_lower)
        elif family == cut_families.NEW:
            cut = cut_families.new_cut(instance, incumbent)
        else:
            ordering, ordering_calls = cut_families.make_lift_ordering(
                instance, incumbent, ordering_strategy
            )
            gamma_calls += ordering_calls
            cut = cut_families.lifted_cut(instance, incumbent, ordering)
        gamma_calls += cut.gamma_calls
        pool.append(cut)
        iterations += 1

    return SolveReport(
        status=status,
        best_y=best_y,
        best_value=best_val,
        lower_bounds=tuple(lower),
        upper_bounds=tuple(upper),
        cuts_added=len(pool),
        gamma_calls_total=gamma_calls,
        iterations=iterations,
    )
