"""Problem data model: graphs with fragile edges, selection constraints, file I/O.

An instance is a directed graph on ``n`` nodes with a distinguished target
node, a set of fixed edges that are always present, and an ordered list of
fragile edges that can be switched on individually.  A selection assigns 0/1
to each fragile edge (by position in the fragile list); the constraint set
restricts which selections are admissible.

Instances and constraint sets are immutable after validation and safe to
share across concurrent solves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    DampingRangeError,
    DimensionMismatch,
    DuplicateEdgeError,
    InfeasibleSpec,
    NodeIndexError,
    OverlapError,
    ParseError,
    TooLargeToEnumerate,
)

Edge = tuple[int, int]
Selection = tuple[int, ...]

DEFAULT_DAMPING = 0.85
ENUM_LIMIT = 20
SENSES = ("<=", "=", ">=")


def support(y: Selection) -> frozenset[int]:
    """Indices of the activated fragile edges."""
    return frozenset(k for k, bit in enumerate(y) if bit)


def from_support(ids: Iterable[int], z_count: int) -> Selection:
    """Selection vector with ones exactly at the given fragile-edge ids."""
    on = set(ids)
    return tuple(1 if k in on else 0 for k in range(z_count))


@dataclass(frozen=True)
class Instance:
    """A directed graph with a target node and optional fragile edges.

    ``fragile`` is ordered: position k is the fragile-edge id that selection
    vectors and cut coefficient vectors align to.
    """

    n: int
    target: int
    edges: frozenset[Edge]
    fragile: tuple[Edge, ...]
    damping: float = DEFAULT_DAMPING

    @property
    def z_count(self) -> int:
        return len(self.fragile)


@dataclass(frozen=True)
class Row:
    """One linear constraint over the selection bits."""

    coeffs: tuple[int, ...]
    sense: str
    rhs: int


@dataclass(frozen=True)
class ConstraintSet:
    """Linear rows over the selection bits plus an optional cardinality shortcut.

    An empty constraint set means every point of the binary cube is feasible.
    """

    rows: tuple[Row, ...] = ()
    cardinality: tuple[str, int] | None = None

    def compiled_rows(self, z_count: int) -> tuple[Row, ...]:
        """All rows, with the cardinality shortcut expanded to an all-ones row."""
        rows = self.rows
        if self.cardinality is not None:
            sense, k = self.cardinality
            rows = rows + (Row(coeffs=(1,) * z_count, sense=sense, rhs=k),)
        return rows

    @property
    def is_empty(self) -> bool:
        return not self.rows and self.cardinality is None


EMPTY_CONSTRAINTS = ConstraintSet()


# ---------------------------------------------------------------------------
# validation


def _as_pair(item, field: str) -> Edge:
    if not isinstance(item, (list, tuple)) or len(item) != 2:
        raise ParseError(f'"{field}" entries must be [i, j] pairs, got {item!r}')
    i, j = item
    if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
        raise ParseError(f'"{field}" endpoints must be integers, got {item!r}')
    return (i, j)


def _coerce(raw) -> tuple[Instance, list[Edge]]:
    """Build an Instance from a schema dict; returns it with the raw edge list
    (needed to detect duplicates that a frozenset would silently collapse)."""
    if isinstance(raw, Instance):
        return raw, sorted(raw.edges)
    if not isinstance(raw, dict):
        raise ParseError(f"expected a mapping or an Instance, got {type(raw).__name__}")
    missing = [k for k in ("n", "target", "edges", "fragile") if k not in raw]
    if missing:
        raise ParseError("missing field(s): " + ", ".join(missing))
    if not isinstance(raw["n"], int) or isinstance(raw["n"], bool):
        raise ParseError(f'"n" must be an integer, got {raw["n"]!r}')
    if not isinstance(raw["target"], int) or isinstance(raw["target"], bool):
        raise ParseError(f'"target" must be an integer, got {raw["target"]!r}')
    damping = raw.get("damping", DEFAULT_DAMPING)
    if isinstance(damping, bool) or not isinstance(damping, (int, float)):
        raise ParseError(f'"damping" must be a number, got {damping!r}')
    edge_list = [_as_pair(e, "edges") for e in raw["edges"]]
    fragile = tuple(_as_pair(e, "fragile") for e in raw["fragile"])
    inst = Instance(
        n=raw["n"],
        target=raw["target"],
        edges=frozenset(edge_list),
        fragile=fragile,
        damping=float(damping),
    )
    return inst, edge_list


def _violations(inst: Instance, edge_list: list[Edge]) -> list[tuple[type, str]]:
    found: list[tuple[type, str]] = []
    if inst.n < 1:
        found.append((NodeIndexError, f"node count must be positive, got {inst.n}"))
        return found
    if not 0 <= inst.target < inst.n:
        found.append((NodeIndexError, f"target {inst.target} outside [0, {inst.n})"))
    for name, pairs in (("fixed", edge_list), ("fragile", inst.fragile)):
        for (i, j) in pairs:
            if not (0 <= i < inst.n and 0 <= j < inst.n):
                found.append((NodeIndexError, f"{name} edge ({i}, {j}) has an endpoint outside [0, {inst.n})"))
    if len(edge_list) != len(set(edge_list)):
        dupes = sorted({e for e in edge_list if edge_list.count(e) > 1})
        found.append((DuplicateEdgeError, f"duplicate fixed edge(s): {dupes}"))
    if len(inst.fragile) != len(set(inst.fragile)):
        dupes = sorted({e for e in inst.fragile if inst.fragile.count(e) > 1})
        found.append((DuplicateEdgeError, f"duplicate fragile edge(s): {dupes}"))
    overlap = inst.edges & set(inst.fragile)
    if overlap:
        found.append((OverlapError, f"edge(s) listed as both fixed and fragile: {sorted(overlap)}"))
    if not 0.0 < inst.damping <= 1.0:
        found.append((DampingRangeError, f"damping must lie in (0, 1], got {inst.damping}"))
    return found


def validate(raw) -> Instance:
    """Check every instance invariant; return the validated Instance.

    Accepts an Instance or a dict in the file schema (any "constraints" key is
    handled separately by read_instance).  Raises the specific error for the
    first violation found: ParseError, NodeIndexError, DuplicateEdgeError,
    OverlapError, or DampingRangeError.
    """
    inst, edge_list = _coerce(raw)
    found = _violations(inst, edge_list)
    if found:
        cls, msg = found[0]
        raise cls(msg)
    return inst


def validation_errors(raw) -> list[str]:
    """All invariant violations as human-readable strings (empty when valid)."""
    try:
        inst, edge_list = _coerce(raw)
    except ParseError as exc:
        return [str(exc)]
    return [msg for _, msg in _violations(inst, edge_list)]


# ---------------------------------------------------------------------------
# feasibility


def _check_row(row: Row, z_count: int) -> None:
    if len(row.coeffs) != z_count:
        raise DimensionMismatch(
            f"constraint row has {len(row.coeffs)} coefficients for {z_count} fragile edges"
        )
    if row.sense not in SENSES:
        raise ParseError(f"unknown constraint sense {row.sense!r}")


def is_feasible(constraints: ConstraintSet, y: Selection) -> bool:
    """True iff every row (and the cardinality shortcut) is satisfied by y."""
    z_count = len(y)
    for row in constraints.compiled_rows(z_count):
        _check_row(row, z_count)
        lhs = sum(c * b for c, b in zip(row.coeffs, y))
        if row.sense == "<=":
            ok = lhs <= row.rhs
        elif row.sense == ">=":
            ok = lhs >= row.rhs
        else:
            ok = lhs == row.rhs
        if not ok:
            return False
    return True


def enumerate_feasible(
    constraints: ConstraintSet, z_count: int, limit: int = ENUM_LIMIT
) -> Iterator[Selection]:
    """Yield the feasible points of the binary cube in lexicographic order."""
    if z_count > limit:
        raise TooLargeToEnumerate(f"{z_count} fragile edges exceed the enumeration limit {limit}")

    def points() -> Iterator[Selection]:
        for bits in product((0, 1), repeat=z_count):
            if is_feasible(constraints, bits):
                yield bits

    return points()


# ---------------------------------------------------------------------------
# random generation


def parse_constraint_spec(spec: str | None, z_count: int, rng=None) -> ConstraintSet:
    """Compile a constraint spec string into a ConstraintSet.

    Supported forms: "none", "card_le:K", "card_ge:K", "card_eq:K" and
    "cover:M" (one covering row over M randomly drawn fragile edges; needs rng).
    """
    if spec is None or spec == "none":
        return EMPTY_CONSTRAINTS
    name, _, arg = spec.partition(":")
    if not arg:
        raise ParseError(f"constraint spec {spec!r} is missing its :K argument")
    try:
        k = int(arg)
    except ValueError:
        raise ParseError(f"constraint spec argument must be an integer, got {arg!r}") from None
    if name == "card_le":
        return ConstraintSet(cardinality=("<=", k))
    if name == "card_ge":
        return ConstraintSet(cardinality=(">=", k))
    if name == "card_eq":
        return ConstraintSet(cardinality=("=", k))
    if name == "cover":
        if z_count == 0:
            raise ParseError("cover constraint needs at least one fragile edge")
        if not 1 <= k <= z_count:
            raise ParseError(f"cover size {k} outside [1, {z_count}]")
        if rng is None:
            rng = np.random.default_rng(0)
        chosen = set(int(i) for i in rng.choice(z_count, size=k, replace=False))
        coeffs = tuple(1 if i in chosen else 0 for i in range(z_count))
        return ConstraintSet(rows=(Row(coeffs=coeffs, sense=">=", rhs=1),))
    raise ParseError(f"unknown constraint spec {spec!r}")


def generate_random(
    n: int,
    fixed_edge_prob: float,
    fragile_count: int,
    constraint_spec: str | None = None,
    seed: int = 0,
    damping: float = DEFAULT_DAMPING,
) -> tuple[Instance, ConstraintSet]:
    """Seeded random instance: fixed edges drawn Bernoulli over ordered pairs,
    fragile edges sampled from the remaining non-edges, target drawn uniformly.

    Deterministic for a fixed seed.  Raises InfeasibleSpec when fewer than
    fragile_count non-edges remain after the fixed draw.
    """
    if n < 1:
        raise NodeIndexError(f"node count must be positive, got {n}")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    if fragile_count > len(pairs):
        raise InfeasibleSpec(f"{fragile_count} fragile edges requested but only {len(pairs)} ordered pairs exist")
    mask = rng.random(len(pairs)) < fixed_edge_prob
    edges = frozenset(p for p, hit in zip(pairs, mask) if hit)
    non_edges = [p for p, hit in zip(pairs, mask) if not hit]
    if fragile_count > len(non_edges):
        raise InfeasibleSpec(
            f"{fragile_count} fragile edges requested but only {len(non_edges)} non-edges remain"
        )
    picks = rng.choice(len(non_edges), size=fragile_count, replace=False) if fragile_count else []
    fragile = tuple(non_edges[int(k)] for k in picks)
    target = int(rng.integers(n))
    inst = validate(Instance(n=n, target=target, edges=edges, fragile=fragile, damping=damping))
    constraints = parse_constraint_spec(constraint_spec, fragile_count, rng)
    return inst, constraints


# ---------------------------------------------------------------------------
# file I/O


def _constraints_from_json(obj, z_count: int) -> ConstraintSet:
    if obj is None:
        return EMPTY_CONSTRAINTS
    if not isinstance(obj, dict):
        raise ParseError(f'"constraints" must be an object or null, got {obj!r}')
    rows = []
    for idx, entry in enumerate(obj.get("rows", [])):
        if not isinstance(entry, dict):
            raise ParseError(f"constraint row {idx} must be an object")
        try:
            coeffs = tuple(int(c) for c in entry["coeffs"])
            sense = entry["sense"]
            rhs = int(entry["rhs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"constraint row {idx}: {exc}") from None
        if sense not in SENSES:
            raise ParseError(f"constraint row {idx}: unknown sense {sense!r}")
        if len(coeffs) != z_count:
            raise ParseError(
                f"constraint row {idx} has {len(coeffs)} coefficients for {z_count} fragile edges"
            )
        rows.append(Row(coeffs=coeffs, sense=sense, rhs=rhs))
    cardinality = None
    card = obj.get("cardinality")
    if card is not None:
        if not isinstance(card, dict) or "sense" not in card or "k" not in card:
            raise ParseError('"cardinality" must be {"sense": ..., "k": ...} or null')
        if card["sense"] not in SENSES:
            raise ParseError(f'cardinality sense {card["sense"]!r} unknown')
        cardinality = (card["sense"], int(card["k"]))
    return ConstraintSet(rows=tuple(rows), cardinality=cardinality)


def constraints_to_json(constraints: ConstraintSet):
    if constraints.is_empty:
        return None
    out: dict = {
        "rows": [
            {"coeffs": list(row.coeffs), "sense": row.sense, "rhs": row.rhs}
            for row in constraints.rows
        ]
    }
    if constraints.cardinality is not None:
        sense, k = constraints.cardinality
        out["cardinality"] = {"sense": sense, "k": k}
    else:
        out["cardinality"] = None
    return out


def instance_to_json(instance: Instance, constraints: ConstraintSet = EMPTY_CONSTRAINTS) -> dict:
    return {
        "n": instance.n,
        "target": instance.target,
        "edges": [list(e) for e in sorted(instance.edges)],
        "fragile": [list(e) for e in instance.fragile],
        "damping": instance.damping,
        "constraints": constraints_to_json(constraints),
    }


def read_instance(path) -> tuple[Instance, ConstraintSet]:
    """Parse and validate an instance file; returns (Instance, ConstraintSet)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    inst = validate(data)
    constraints = _constraints_from_json(data.get("constraints"), inst.z_count)
    return inst, constraints


def write_instance(path, instance: Instance, constraints: ConstraintSet = EMPTY_CONSTRAINTS) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(instance, constraints), fh, indent=2)
        fh.write("\n")
