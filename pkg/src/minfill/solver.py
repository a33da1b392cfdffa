"""Minimal fillings by enumerating binary tree types.

For one type the problem is a linear program: a variable per edge, a
constraint per boundary pair (path weight >= distance), objective the total
weight.  The classical variant keeps weights non-negative; the generalized
one leaves them free.  Minimizing over all binary types gives the minimal
filling weights.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .filling import WeightedFilling
from .lp_core import LinearProgram, LpOutcome, Status, solve
from .metric_space import PseudometricSpace, SpaceKind, classify
from .topology import TopologyError, TreeTopology, binary_trees, count_binary_trees, has_interior_leaf

DEFAULT_MAX_N = 9


class Variant(enum.Enum):
    NONNEG = "nonneg"
    GENERALIZED = "generalized"


class SizeLimitError(ValueError):
    pass


class OutOfHypothesisError(ValueError):
    """The space violates the triangle inequality."""


def max_n() -> int:
    value = os.environ.get("MINFILL_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


def build_lp(space: PseudometricSpace, tree: TreeTopology, variant: Variant) -> LinearProgram:
    if set(tree.labels) != set(space.labels):
        raise TopologyError(
            f"tree joins {sorted(tree.labels)}, space has {sorted(space.labels)}"
        )
    leaf = has_interior_leaf(tree)
    if leaf is not None:
        raise TopologyError(f"interior vertex {leaf!r} has degree 1")
    m = len(tree.edges)
    paths = tree.pair_paths
    constraints = []
    for i, a in enumerate(space.labels):
        for j in range(i + 1, len(space)):
            b = space.labels[j]
            idx = paths.get((a, b))
            if idx is None:
                idx = paths[(b, a)]
            row = [0] * m
            for k in idx:
                row[k] = 1
            constraints.append((row, space.dist[i][j]))
    return LinearProgram([1] * m, constraints, [variant is Variant.NONNEG] * m)


@dataclass(frozen=True)
class ParametricResult:
    topology: TreeTopology
    variant: Variant
    outcome: LpOutcome
    filling: Optional[WeightedFilling] = None

    @property
    def value(self) -> Optional[Fraction]:
        return self.outcome.value


def _parametric(space, tree, variant) -> ParametricResult:
    outcome = solve(build_lp(space, tree, variant))
    filling = WeightedFilling(tree, outcome.point) if outcome.is_optimal else None
    return ParametricResult(tree, variant, outcome, filling)


def mpf(space: PseudometricSpace, tree: TreeTopology) -> ParametricResult:
    """Minimal filling of the fixed type ``tree`` with non-negative weights."""
    return _parametric(space, tree, Variant.NONNEG)


def mpf_gen(space: PseudometricSpace, tree: TreeTopology) -> ParametricResult:
    """Minimal filling of the fixed type ``tree`` with weights of any sign.

    A pendant interior vertex leaves its edge unconstrained, so the problem is
    unbounded; that case is reported without solving.
    """
    leaf = has_interior_leaf(tree)
    if leaf is not None:
        pendant = next(e for e in tree.edges if leaf in e)
        ray = tuple(Fraction(-1) if e == pendant else Fraction(0) for e in tree.edges)
        return ParametricResult(tree, Variant.GENERALIZED, LpOutcome(Status.UNBOUNDED, ray=ray))
    return _parametric(space, tree, Variant.GENERALIZED)


@dataclass
class SolveReport:
    space: PseudometricSpace
    mf: Fraction
    mf_minus: Fraction
    mf_index: int
    mf_minus_index: int
    mf_filling: WeightedFilling
    mf_minus_filling: WeightedFilling
    # (nonneg, generalized) per topology, in enumeration order
    results: list = field(default_factory=list, repr=False)

    @property
    def theorem_holds(self) -> bool:
        return self.mf == self.mf_minus

    @property
    def topology_count(self) -> int:
        return len(self.results)

    def to_json_obj(self, per_topology: bool = False) -> dict:
        obj = {
            "labels": list(self.space.labels),
            "topologies": self.topology_count,
            "mf": str(self.mf),
            "mf_minus": str(self.mf_minus),
            "theorem_holds": self.theorem_holds,
            "mf_topology": self.mf_index,
            "mf_minus_topology": self.mf_minus_index,
            "mf_filling": self.mf_filling.to_json_obj(),
            "mf_minus_filling": self.mf_minus_filling.to_json_obj(),
        }
        if per_topology:
            obj["per_topology"] = [
                {
                    "index": k,
                    "edges": [list(e) for e in nonneg.topology.edges],
                    "mpf": str(nonneg.value),
                    "mpf_minus": str(gen.value),
                }
                for k, (nonneg, gen) in enumerate(self.results)
            ]
        return obj


def _solve_indices(args):
    space, indices = args
    trees = binary_trees(space.labels)
    return [(mpf(space, trees[k]), mpf_gen(space, trees[k])) for k in indices]


def solve_space(space: PseudometricSpace, limit: Optional[int] = None, jobs: int = 1,
                reverse: bool = False) -> SolveReport:
    """Compute both minimal filling weights of ``space``.

    Every binary tree type is solved in both variants.  Among types with the
    same optimal value the one enumerated first wins, whatever order the
    types were solved in (``reverse`` exists to check that).
    """
    n = len(space)
    limit = max_n() if limit is None else limit
    if n > limit:
        raise SizeLimitError(
            f"{n} points exceed the limit of {limit} ({count_binary_trees(n)} tree types)"
        )
    if n == 0:
        raise ValueError("empty space")
    if n == 1:
        tree = TreeTopology(space.labels, [], [(space.labels[0], space.labels[0])])
        empty = WeightedFilling(tree, [])
        return SolveReport(space, Fraction(0), Fraction(0), 0, 0, empty, empty, [])

    count = len(binary_trees(space.labels))
    order = list(range(count))
    if reverse:
        order.reverse()
    if jobs > 1 and count > 1:
        chunks = [order[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_solve_indices, [(space, c) for c in chunks]))
        by_index = {}
        for chunk, part in zip(chunks, parts):
            by_index.update(zip(chunk, part))
    else:
        by_index = dict(zip(order, _solve_indices((space, order))))
    results = [by_index[k] for k in range(count)]

    best = [None, None]
    for k, pair in enumerate(results):
        for v in (0, 1):
            value = pair[v].value
            if best[v] is None or value < results[best[v]][v].value:
                best[v] = k
    i, j = best
    return SolveReport(
        space,
        results[i][0].value,
        results[j][1].value,
        i,
        j,
        results[i][0].filling,
        results[j][1].filling,
        results,
    )


def verify_theorem(space: PseudometricSpace, **kwargs) -> bool:
    """Whether both minimal filling weights agree; requires the triangle inequality."""
    cls = classify(space)
    if cls.kind is SpaceKind.TRIANGLE_VIOLATING:
        x, y, z = cls.witness
        raise OutOfHypothesisError(
            f"out of hypothesis: d({x},{z}) > d({x},{y}) + d({y},{z})"
        )
    return solve_space(space, **kwargs).theorem_holds
