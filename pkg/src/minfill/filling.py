"""Weighted fillings over tree types.

Weights are exact rationals of either sign.  ``dw`` is the weight of the
unique tree path, so it can be negative and need not satisfy the triangle
inequality.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from .metric_space import PseudometricSpace
from .topology import (
    Splitting,
    TopologyError,
    TreeTopology,
    edge_key,
    norm_edge,
    topology_from_json,
)


class FillingError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedFilling:
    topology: TreeTopology
    weights: tuple  # aligned with topology.edges

    def __init__(self, topology: TreeTopology, weights: Union[Mapping, Sequence]):
        if isinstance(weights, Mapping):
            by_edge = {}
            keys = {edge_key(e): e for e in topology.edges}
            for k, w in weights.items():
                e = keys.get(k) if isinstance(k, str) else norm_edge(*k)
                if e is None or e not in topology.edge_index:
                    raise FillingError(f"weight given for unknown edge {k!r}")
                if e in by_edge:
                    raise FillingError(f"edge {edge_key(e)} weighted twice")
                by_edge[e] = Fraction(w)
            missing = [edge_key(e) for e in topology.edges if e not in by_edge]
            if missing:
                raise FillingError(f"edges without weight: {missing}")
            values = tuple(by_edge[e] for e in topology.edges)
        else:
            values = tuple(Fraction(w) for w in weights)
            if len(values) != len(topology.edges):
                raise FillingError(
                    f"{len(values)} weights for {len(topology.edges)} edges"
                )
        object.__setattr__(self, "topology", topology)
        object.__setattr__(self, "weights", values)

    def weight(self, u: str, v: str) -> Fraction:
        return self.weights[self.topology.edge_index[norm_edge(u, v)]]

    def as_dict(self) -> dict:
        return dict(zip(self.topology.edges, self.weights))

    def negative_edges(self) -> list:
        return [e for e, w in zip(self.topology.edges, self.weights) if w < 0]

    @cached_property
    def pair_weights(self) -> dict:
        """d_w for every boundary label pair, keyed in the tree's label order."""
        den = 1
        for w in self.weights:
            den = den * w.denominator // math.gcd(den, w.denominator)
        ints = [w.numerator * (den // w.denominator) for w in self.weights]
        return {
            pair: Fraction(sum(ints[k] for k in idx), den)
            for pair, idx in self.topology.pair_paths.items()
        }

    def pair_weight(self, a: str, b: str) -> Fraction:
        """d_w between two boundary labels."""
        if a == b:
            return Fraction(0)
        weights = self.pair_weights
        d = weights.get((a, b))
        if d is None:
            d = weights.get((b, a))
        if d is None:
            raise FillingError(f"unknown boundary pair {a!r}, {b!r}")
        return d

    def to_json_obj(self) -> dict:
        obj = self.topology.to_json_obj()
        obj["weights"] = {edge_key(e): str(w) for e, w in zip(self.topology.edges, self.weights)}
        return obj


def filling_from_json(obj: dict, labels: Sequence[str]) -> WeightedFilling:
    tree = topology_from_json(obj, labels)
    try:
        weights = obj["weights"]
    except KeyError:
        raise FillingError('missing "weights"') from None
    return WeightedFilling(tree, {k: Fraction(v) for k, v in weights.items()})


def total_weight(f: WeightedFilling) -> Fraction:
    return sum(f.weights, Fraction(0))


def dw(f: WeightedFilling, u: str, v: str) -> Fraction:
    """Path weight between two vertices of the filling's tree."""
    idx = f.topology.edge_index
    return sum((f.weights[idx[e]] for e in f.topology.path_between(u, v)), Fraction(0))


def _require_same_labels(f: WeightedFilling, space: PseudometricSpace):
    if set(f.topology.labels) != set(space.labels):
        raise FillingError(
            f"tree joins {sorted(f.topology.labels)}, space has {sorted(space.labels)}"
        )


@dataclass(frozen=True)
class FillingCheck:
    ok: bool
    witness: Optional[tuple] = None  # (u, v, d_w, rho) of the first violation

    def __bool__(self) -> bool:
        return self.ok


def is_generalized_filling(f: WeightedFilling, space: PseudometricSpace) -> FillingCheck:
    _require_same_labels(f, space)
    for (i, a), (j, b) in itertools.combinations(enumerate(space.labels), 2):
        d = f.pair_weight(a, b)
        rho = space.dist[i][j]
        if d < rho:
            return FillingCheck(False, (a, b, d, rho))
    return FillingCheck(True)


def is_nonneg_filling(f: WeightedFilling, space: PseudometricSpace) -> bool:
    return bool(is_generalized_filling(f, space)) and all(w >= 0 for w in f.weights)


@dataclass(frozen=True)
class ExactPathReport:
    exact_pairs: tuple
    coverage: dict  # edge -> tuple of exact pairs whose path uses it

    def covered(self, *edges) -> bool:
        """True when some exact path contains all of ``edges``."""
        sets = [set(self.coverage[norm_edge(*e)]) for e in edges]
        return bool(set.intersection(*sets))


def exact_pairs(f: WeightedFilling, space: PseudometricSpace) -> tuple:
    """Boundary pairs (in label order) whose path weight equals their distance."""
    out = []
    for (i, a), (j, b) in itertools.combinations(enumerate(space.labels), 2):
        if f.pair_weight(a, b) == space.dist[i][j]:
            out.append((a, b))
    return tuple(out)


def exact_path_report(f: WeightedFilling, space: PseudometricSpace) -> ExactPathReport:
    check = is_generalized_filling(f, space)
    if not check:
        raise FillingError(f"not a filling: {check.witness}")
    pairs = exact_pairs(f, space)
    coverage = {e: [] for e in f.topology.edges}
    for a, b in pairs:
        for e in f.topology.label_path(a, b):
            coverage[e].append((a, b))
    return ExactPathReport(pairs, {e: tuple(p) for e, p in coverage.items()})


@dataclass(frozen=True)
class ExactPathCheck:
    """Exact-path structure of a (supposedly minimal) filling.

    ``uncovered_edges``: edges on no exact path.
    ``uncovered_adjacent``: pairs of edges sharing a vertex that no exact path
    contains together.
    ``uncovered_degree3``: the same, restricted to interior degree-3 vertices.
    ``uncovered_majorities``: ``(v, subset)`` for interior ``v`` where no exact
    path contains two edges of a subset of more than half the edges at ``v``.
    """

    uncovered_edges: tuple
    uncovered_adjacent: tuple
    uncovered_degree3: tuple
    uncovered_majorities: tuple

    def part_ok(self, part: int) -> bool:
        return not (
            self.uncovered_edges,
            self.uncovered_adjacent,
            self.uncovered_degree3,
            self.uncovered_majorities,
        )[part - 1]

    @property
    def parametric_ok(self) -> bool:
        """Parts that every minimal parametric filling satisfies."""
        return self.part_ok(1) and self.part_ok(3) and self.part_ok(4)

    @property
    def passed(self) -> bool:
        return all(self.part_ok(k) for k in (1, 2, 3, 4))


def check_exact_paths(f: WeightedFilling, space: PseudometricSpace) -> ExactPathCheck:
    report = exact_path_report(f, space)
    tree = f.topology
    cover = {e: set(p) for e, p in report.coverage.items()}
    uncovered_edges = tuple(e for e in tree.edges if not cover[e])
    adjacent, degree3, majorities = [], [], []
    for v in tree.vertices:
        inc = [norm_edge(v, w) for w in tree.adjacency[v]]
        joint = {
            (e1, e2): bool(cover[e1] & cover[e2]) for e1, e2 in itertools.combinations(inc, 2)
        }
        bad = [pair for pair, ok in joint.items() if not ok]
        adjacent.extend(bad)
        if tree.is_boundary(v):
            continue
        if len(inc) == 3:
            degree3.extend(bad)
        d = len(inc)
        for m in range(d // 2 + 1, d + 1):
            for subset in itertools.combinations(inc, m):
                if not any(joint[p] for p in itertools.combinations(subset, 2)):
                    majorities.append((v, subset))
    return ExactPathCheck(
        uncovered_edges, tuple(adjacent), tuple(degree3), tuple(majorities)
    )


def tour_lower_bound(space: PseudometricSpace, order: Sequence[str]) -> Fraction:
    """Half the length of the closed tour through ``order``."""
    if sorted(order) != sorted(space.labels):
        raise FillingError("cyclic order does not match the space's labels")
    idx = [space.index(x) for x in order]
    n = len(idx)
    total = sum((space.dist[idx[k]][idx[(k + 1) % n]] for k in range(n)), Fraction(0))
    return total / 2


def tour_weight_sum(f: WeightedFilling, order: Sequence[str]) -> Fraction:
    """Sum over consecutive pairs of ``order`` of the tree path weight."""
    n = len(order)
    return sum((f.pair_weight(order[k], order[(k + 1) % n]) for k in range(n)), Fraction(0))


def split_filling(f: WeightedFilling, splitting: Splitting) -> WeightedFilling:
    """Carry weights onto a binary refinement; added edges weigh zero."""
    if splitting.tree.labels != f.topology.labels:
        raise TopologyError("splitting belongs to a different tree")
    new = {e: Fraction(0) for e in splitting.tree.edges}
    for old, w in zip(f.topology.edges, f.weights):
        new[splitting.edge_map[old]] += w
    return WeightedFilling(splitting.tree, new)
