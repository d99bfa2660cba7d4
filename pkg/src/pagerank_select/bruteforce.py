"""Exhaustive enumeration twins used as reference answers in tests and checks.

Deliberately simple, no pruning: these must stay easy to trust.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Sequence

from . import chain
from .errors import DimensionMismatch, Infeasible, InvalidOrdering, OverlapError, TooLargeToEnumerate
from .instance import ENUM_LIMIT, ConstraintSet, EMPTY_CONSTRAINTS, Instance, Selection, is_feasible, support


def bf_min(
    instance: Instance,
    constraints: ConstraintSet = EMPTY_CONSTRAINTS,
    limit: int = ENUM_LIMIT,
) -> tuple[Selection, float]:
    """Exhaustive minimum of the first return time over the feasible cube.

    Returns (argmin, value); ties keep the lexicographically smallest point.
    """
    z_count = instance.z_count
    if z_count > limit:
        raise TooLargeToEnumerate(f"{z_count} fragile edges exceed the enumeration limit {limit}")
    best_y, best_val = None, math.inf
    for bits in product((0, 1), repeat=z_count):
        if not is_feasible(constraints, bits):
            continue
        val = chain.hitting_times(instance, bits).fr
        if val < best_val:
            best_y, best_val = bits, val
    if best_y is None:
        raise Infeasible("no selection satisfies the constraints")
    return best_y, best_val


def bf_gamma(instance: Instance, forced_on, forced_off, limit: int = ENUM_LIMIT) -> float:
    """Exhaustive minimum respecting the forced-on/forced-off edges."""
    forced_on = frozenset(forced_on)
    forced_off = frozenset(forced_off)
    both = forced_on & forced_off
    if both:
        raise OverlapError(f"fragile edge(s) {sorted(both)} forced both on and off")
    z_count = instance.z_count
    free = [k for k in range(z_count) if k not in forced_on and k not in forced_off]
    if len(free) > limit:
        raise TooLargeToEnumerate(f"{len(free)} free fragile edges exceed the enumeration limit {limit}")
    template = [0] * z_count
    for k in forced_on:
        template[k] = 1
    best = math.inf
    for bits in product((0, 1), repeat=len(free)):
        y = list(template)
        for k, bit in zip(free, bits):
            y[k] = bit
        best = min(best, chain.hitting_times(instance, tuple(y)).fr)
    return best


def bf_exact_lift(
    instance: Instance,
    constraints: ConstraintSet,
    incumbent: Selection,
    ordering: Sequence[int],
    prior_coeffs: Sequence[float],
    r: int,
    limit: int = ENUM_LIMIT,
) -> float:
    """Exact lifting coefficient at position r (1-based) of the ordering.

    Enumerates every selection with the r-th ordered edge on, the later ones
    off, and everything else free, minimizing the first return time minus the
    already-fixed terms of the inequality under construction (the clipped
    single-edge coefficients on the incumbent's support and prior_coeffs on
    positions before r).  The incumbent-support coefficients are computed here
    with bf_gamma so this stays independent of the fast oracle.
    """
    z_count = instance.z_count
    sel = support(incumbent)
    if sorted(ordering) != sorted(set(range(z_count)) - sel):
        raise InvalidOrdering("ordering is not a permutation of the unselected fragile edges")
    if not 1 <= r <= len(ordering):
        raise InvalidOrdering(f"position {r} outside [1, {len(ordering)}]")
    if len(prior_coeffs) < r - 1:
        raise DimensionMismatch(f"need {r - 1} prior coefficients, got {len(prior_coeffs)}")
    fr_bar = chain.hitting_times(instance, tuple(incumbent)).fr
    sel_coeff = {
        e: min(0.0, bf_gamma(instance, frozenset(), frozenset({e}), limit=limit) - fr_bar)
        for e in sel
    }
    edge_r = ordering[r - 1]
    tail = set(ordering[r:])
    free = [k for k in range(z_count) if k != edge_r and k not in tail]
    if len(free) > limit:
        raise TooLargeToEnumerate(f"{len(free)} free positions exceed the enumeration limit {limit}")
    prior = {ordering[k]: float(prior_coeffs[k]) for k in range(r - 1)}
    best = math.inf
    for bits in product((0, 1), repeat=len(free)):
        y = [0] * z_count
        y[edge_r] = 1
        for k, bit in zip(free, bits):
            y[k] = bit
        point = tuple(y)
        if not is_feasible(constraints, point):
            continue
        obj = chain.hitting_times(instance, point).fr
        obj -= sum(sel_coeff[e] * (1 - point[e]) for e in sel)
        obj -= sum(coeff * point[k] for k, coeff in prior.items())
        best = min(best, obj)
    if math.isinf(best):
        raise Infeasible("the lifting problem has no feasible point")
    return best - fr_bar
