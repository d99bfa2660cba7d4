"""Fast minimization of the first return time over free fragile edges.

Some fragile edges may be forced on, some forced off; the rest are free.  The
minimizer is found by policy iteration on the underlying shortest-path control
problem: each node independently re-selects which of its free fragile
out-edges to activate, given the current hitting-time estimates.  Because the
teleportation step reaches the target from everywhere when damping < 1, every
configuration is proper and the iteration converges to the global optimum;
correctness is gated on the exhaustive twin in bruteforce.

The per-node step is the classical minimize-the-mean rule: with out-neighbor
value estimates at hand, include the next-cheapest free target exactly when it
strictly lowers the mean of the included values.  A node with no fixed or
forced-on out-edges also weighs staying dangling (uniform jump) against
activating its cheapest free target.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chain
from .errors import DampingRangeError, DimensionMismatch, NoConvergence, OverlapError
from .instance import Instance, Selection

MEAN_IMPROVEMENT = 1e-12


@dataclass(frozen=True)
class GammaQuery:
    """Disjoint sets of fragile-edge ids forced on and forced off."""

    forced_on: frozenset[int] = frozenset()
    forced_off: frozenset[int] = frozenset()


@dataclass(frozen=True)
class GammaResult:
    """Optimal value, a minimizing selection, and the sweep count used."""

    value: float
    argmin: Selection
    iterations: int


def _greedy_subset(h, base_targets, free_edges, mean_all):
    """Pick the free out-edges of one node that minimize the mean hitting
    value of its active out-neighbor set; ties keep an edge deactivated."""
    order = sorted(free_edges, key=lambda kj: (h[kj[1]], kj[0]))
    total = float(sum(h[j] for j in base_targets))
    count = len(base_targets)
    chosen: set[int] = set()
    if count == 0:
        k0, j0 = order[0]
        if h[j0] < mean_all - MEAN_IMPROVEMENT:
            chosen.add(k0)
            total, count = float(h[j0]), 1
        else:
            return chosen  # staying dangling is at least as good
    for k, j in order:
        if k in chosen:
            continue
        if (total + h[j]) / (count + 1) < total / count - MEAN_IMPROVEMENT:
            chosen.add(k)
            total += float(h[j])
            count += 1
    return chosen


def gamma(instance: Instance, query: GammaQuery) -> GammaResult:
    """Minimize the first return time subject to the forced edges.

    Policy iteration: start with every free edge activated; alternate exact
    hitting-time evaluation with the per-node greedy re-selection until no
    node changes.  The sweep guard must never trigger; hitting it signals a
    bug, not a hard instance.
    """
    forced_on = frozenset(query.forced_on)
    forced_off = frozenset(query.forced_off)
    both = forced_on & forced_off
    if both:
        raise OverlapError(f"fragile edge(s) {sorted(both)} forced both on and off")
    z_count = instance.z_count
    for k in forced_on | forced_off:
        if not 0 <= k < z_count:
            raise DimensionMismatch(f"fragile edge id {k} outside [0, {z_count})")
    if instance.damping >= 1.0:
        raise DampingRangeError("the minimization oracle requires damping < 1")

    base_targets: list[list[int]] = [[] for _ in range(instance.n)]
    for (i, j) in instance.edges:
        base_targets[i].append(j)
    for k in forced_on:
        i, j = instance.fragile[k]
        base_targets[i].append(j)
    free_by_node: list[list[tuple[int, int]]] = [[] for _ in range(instance.n)]
    for k, (i, j) in enumerate(instance.fragile):
        if k not in forced_on and k not in forced_off:
            free_by_node[i].append((k, j))

    y = [0] * z_count
    for k in forced_on:
        y[k] = 1
    for node_edges in free_by_node:
        for k, _ in node_edges:
            y[k] = 1

    guard = 10 * (1 << min(z_count, 20))
    sweeps = 0
    while True:
        if sweeps >= guard:
            raise NoConvergence(f"policy iteration exceeded {guard} sweeps")
        profile = chain.hitting_times(instance, tuple(y))
        sweeps += 1
        h = profile.h
        mean_all = float(h.sum()) / instance.n
        changed = False
        for node in range(instance.n):
            node_free = free_by_node[node]
            if not node_free:
                continue
            chosen = _greedy_subset(h, base_targets[node], node_free, mean_all)
            for k, _ in node_free:
                bit = 1 if k in chosen else 0
                if y[k] != bit:
                    y[k] = bit
                    changed = True
        if not changed:
            return GammaResult(value=profile.fr, argmin=tuple(y), iterations=sweeps)


def min_unconstrained(instance: Instance) -> float:
    """Global minimum of the first return time over the whole cube; the
    sharpest legal constant for the distance-style cut family."""
    return gamma(instance, GammaQuery()).value
