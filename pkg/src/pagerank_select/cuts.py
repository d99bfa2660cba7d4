"""The three valid-inequality families over (theta, y).

Every cut is stored in normalized affine form ``theta >= a0 + sum_e a[e] y[e]``.
All families are tight at their incumbent by construction.  The construction
form puts coefficients on ``(1 - y[e])`` for edges in the incumbent's support
and on ``y[e]`` elsewhere; for a supported edge the construction coefficient
equals ``-a[e]``.

Families:

* ``lshaped``: every coefficient is the gap between a global lower bound and
  the incumbent's value, so the bound decays with Hamming distance.
* ``new``: each edge's coefficient comes from one single-edge forced
  minimization, clipped at zero.
* ``lifted``: keeps the supported-edge coefficients of ``new`` and up-lifts
  the rest along an ordering, forcing the yet-unlifted edges off in each
  minimization.  Stronger than ``new`` coefficientwise for any ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chain, oracle
from .errors import DimensionMismatch, InvalidOrdering, LTooLarge
from .instance import Instance, Selection, support

L_SHAPED = "lshaped"
NEW = "new"
LIFTED = "lifted"
FAMILIES = (L_SHAPED, NEW, LIFTED)

BY_INDEX = "index"
BY_GAMMA = "gamma"
ORDERING_STRATEGIES = (BY_INDEX, BY_GAMMA)

L_GUARD = 1e-9  # slack allowed before a supplied lower bound counts as too large


@dataclass(frozen=True)
class Cut:
    """Affine inequality theta >= constant + coeffs . y, tagged with its
    family, the incumbent it was separated at, and the oracle calls spent."""

    constant: float
    coeffs: tuple[float, ...]
    family: str
    incumbent: Selection
    gamma_calls: int

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "a0": self.constant,
            "coeffs": list(self.coeffs),
            "incumbent": list(self.incumbent),
            "gamma_calls": self.gamma_calls,
        }


@dataclass(frozen=True)
class LiftOrdering:
    """A permutation of the unselected fragile-edge ids, plus the strategy tag
    that produced it."""

    order: tuple[int, ...]
    strategy: str = BY_INDEX


def eval_cut(cut: Cut, y: Selection) -> float:
    """Right-hand side of the cut at a selection."""
    if len(y) != len(cut.coeffs):
        raise DimensionMismatch(f"selection length {len(y)} does not match cut arity {len(cut.coeffs)}")
    return cut.constant + sum(a * b for a, b in zip(cut.coeffs, y))


def construction_coefficient(cut: Cut, edge_id: int) -> float:
    """Coefficient in construction form: multiplies (1 - y) for edges in the
    incumbent's support and y elsewhere.  This is the form the dominance
    ordering between families is stated in."""
    if cut.incumbent[edge_id]:
        return -cut.coeffs[edge_id]
    return cut.coeffs[edge_id]


def l_shaped_cut(instance: Instance, incumbent: Selection, lower_bound: float) -> Cut:
    """Distance-decay cut from a global lower bound on the objective.

    ``lower_bound`` must not exceed the optimum; 0 is always legal, the
    unconstrained minimum is the sharpest legal choice.  Costs no oracle calls
    since the bound is supplied by the caller.
    """
    incumbent = tuple(int(b) for b in incumbent)
    fr_bar = chain.hitting_times(instance, incumbent).fr
    if lower_bound > fr_bar + L_GUARD:
        raise LTooLarge(
            f"lower bound {lower_bound} exceeds the incumbent value {fr_bar}"
        )
    gap = lower_bound - fr_bar
    sel = support(incumbent)
    constant = fr_bar + gap * len(sel)
    coeffs = tuple(-gap if k in sel else gap for k in range(instance.z_count))
    return Cut(constant=constant, coeffs=coeffs, family=L_SHAPED, incumbent=incumbent, gamma_calls=0)


def new_cut(instance: Instance, incumbent: Selection) -> Cut:
    """Single-edge-minimization cut: one oracle call per fragile edge.

    For a supported edge the construction coefficient is
    ``min(0, gamma(off e) - fr(incumbent))``; for the rest it is
    ``min(0, gamma(on e) - fr(incumbent))``.
    """
    incumbent = tuple(int(b) for b in incumbent)
    fr_bar = chain.hitting_times(instance, incumbent).fr
    sel = support(incumbent)
    constant = fr_bar
    coeffs = []
    calls = 0
    for k in range(instance.z_count):
        if k in sel:
            g = oracle.gamma(instance, oracle.GammaQuery(forced_off=frozenset({k}))).value
            w = min(0.0, g - fr_bar)
            constant += w
            coeffs.append(-w)
        else:
            g = oracle.gamma(instance, oracle.GammaQuery(forced_on=frozenset({k}))).value
            coeffs.append(min(0.0, g - fr_bar))
        calls += 1
    return Cut(constant=constant, coeffs=tuple(coeffs), family=NEW, incumbent=incumbent, gamma_calls=calls)


def make_lift_ordering(
    instance: Instance, incumbent: Selection, strategy: str = BY_INDEX
) -> tuple[LiftOrdering, int]:
    """Build the lifting order over the unselected fragile edges.

    Returns the ordering and the number of oracle calls spent building it:
    zero for ``index``; one single-edge call per unselected edge for
    ``gamma`` (sorted ascending by that value, ties by edge id).
    """
    sel = support(incumbent)
    unselected = [k for k in range(instance.z_count) if k not in sel]
    if strategy == BY_INDEX:
        return LiftOrdering(order=tuple(unselected), strategy=strategy), 0
    if strategy == BY_GAMMA:
        vals = {
            k: oracle.gamma(instance, oracle.GammaQuery(forced_on=frozenset({k}))).value
            for k in unselected
        }
        order = tuple(sorted(unselected, key=lambda k: (vals[k], k)))
        return LiftOrdering(order=order, strategy=strategy), len(unselected)
    raise ValueError(f"unknown ordering strategy {strategy!r}")


def lifted_cut(instance: Instance, incumbent: Selection, ordering: LiftOrdering) -> Cut:
    """Up-lifted cut along an ordering of the unselected edges.

    Supported-edge coefficients are identical to ``new_cut``'s.  The r-th
    ordered edge gets ``min(0, gamma(on r, off tail) - fr(incumbent))`` where
    the tail is everything after r in the ordering; the last edge therefore
    matches its ``new_cut`` coefficient.  Total oracle calls: one per fragile
    edge.
    """
    incumbent = tuple(int(b) for b in incumbent)
    sel = support(incumbent)
    unselected = sorted(k for k in range(instance.z_count) if k not in sel)
    if sorted(ordering.order) != unselected:
        raise InvalidOrdering("ordering is not a permutation of the unselected fragile edges")
    fr_bar = chain.hitting_times(instance, incumbent).fr
    constant = fr_bar
    coeffs = [0.0] * instance.z_count
    calls = 0
    for k in sorted(sel):
        g = oracle.gamma(instance, oracle.GammaQuery(forced_off=frozenset({k}))).value
        w = min(0.0, g - fr_bar)
        constant += w
        coeffs[k] = -w
        calls += 1
    order = ordering.order
    for pos, k in enumerate(order):
        tail = frozenset(order[pos + 1 :])
        g = oracle.gamma(instance, oracle.GammaQuery(forced_on=frozenset({k}), forced_off=tail)).value
        coeffs[k] = min(0.0, g - fr_bar)
        calls += 1
    return Cut(constant=constant, coeffs=tuple(coeffs), family=LIFTED, incumbent=incumbent, gamma_calls=calls)
