"""Turning a signed minimal filling into a non-negative one of equal weight.

The local move works at a negative edge X-Y between two interior degree-3
vertices.  Let A, B be the other neighbours of X and C, D those of Y, named
so that a chosen exact path runs A-X-Y-C.  With w(XY) = -2e the move
swaps the subtrees at B and D::

    XB, YD  ->  YB, XD
    w(XY) -2e -> 2e,  w(XA) a -> a-e,  w(YB) b -> b-e,
    w(YC) c -> c-e,   w(XD) d -> d-e

Total weight is unchanged, no boundary distance shrinks, and paths that ran
A-X-Y-C or B-X-Y-D grow by 2e, so the chosen exact path stops being exact.
Repeating at negative edges therefore strictly reduces the number of exact
pairs, and a minimal filling stays minimal throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .filling import WeightedFilling, exact_pairs, is_generalized_filling, total_weight
from .metric_space import PseudometricSpace, SpaceKind, classify
from .topology import TreeTopology, edge_key, norm_edge


class DenegativizeError(ValueError):
    pass


@dataclass(frozen=True)
class ModificationStep:
    edge: tuple  # (X, Y)
    roles: dict  # "A".."D" -> vertex
    gamma: tuple  # boundary pair whose exact path was used
    e: Fraction
    before: dict  # "XA", "XB", "YC", "YD", "XY" -> weight
    after: dict  # "XA", "YB", "YC", "XD", "XY" -> weight
    exact_before: int
    exact_after: int

    def to_json_obj(self) -> dict:
        X, Y = self.edge
        return {
            "edge": [X, Y],
            "roles": dict(self.roles),
            "gamma": list(self.gamma),
            "e": str(self.e),
            "before": {k: str(v) for k, v in self.before.items()},
            "after": {k: str(v) for k, v in self.after.items()},
            "exact_before": self.exact_before,
            "exact_after": self.exact_after,
        }


def _path_vertices(tree: TreeTopology, a: str, b: str) -> list:
    u, v = tree.vertex_of[a], tree.vertex_of[b]
    walk = [u]
    for x, y in tree.path_between(u, v):
        walk.append(y if x == walk[-1] else x)
    return walk


def _pair_distances(f: WeightedFilling, space: PseudometricSpace) -> dict:
    return {(a, b): f.pair_weight(a, b) for a, b in itertools.combinations(space.labels, 2)}


def modify(f: WeightedFilling, xy, gamma, space: PseudometricSpace):
    """Apply the rewiring at negative edge ``xy`` along exact pair ``gamma``.

    X is whichever endpoint of ``xy`` the path of ``gamma`` reaches first.
    Returns the new filling and the recorded step.
    """
    tree = f.topology
    xy = norm_edge(*xy)
    if not tree.is_binary:
        raise DenegativizeError("topology is not binary")
    if xy not in tree.edge_index:
        raise DenegativizeError(f"{edge_key(xy)} is not an edge")
    w_xy = f.weight(*xy)
    if w_xy >= 0:
        raise DenegativizeError(f"edge {edge_key(xy)} has weight {w_xy} >= 0")
    if tree.is_boundary(xy[0]) or tree.is_boundary(xy[1]):
        raise DenegativizeError(f"negative edge {edge_key(xy)} touches a boundary vertex")
    a_lab, b_lab = gamma
    if f.pair_weight(a_lab, b_lab) != space.d(a_lab, b_lab):
        raise DenegativizeError(f"path {a_lab}-{b_lab} is not exact")
    walk = _path_vertices(tree, a_lab, b_lab)
    hits = [k for k in range(len(walk) - 1) if norm_edge(walk[k], walk[k + 1]) == xy]
    if not hits:
        raise DenegativizeError(f"path {a_lab}-{b_lab} does not use {edge_key(xy)}")
    k = hits[0]
    X, Y = walk[k], walk[k + 1]
    A, C = walk[k - 1], walk[k + 2]
    B = next(v for v in tree.adjacency[X] if v not in (Y, A))
    D = next(v for v in tree.adjacency[Y] if v not in (X, C))

    e = -w_xy / 2
    w = f.weight
    before = {"XA": w(X, A), "XB": w(X, B), "YC": w(Y, C), "YD": w(Y, D), "XY": w_xy}
    after = {
        "XA": before["XA"] - e,
        "YB": before["XB"] - e,
        "YC": before["YC"] - e,
        "XD": before["YD"] - e,
        "XY": 2 * e,
    }
    swap = {norm_edge(X, B): norm_edge(Y, B), norm_edge(Y, D): norm_edge(X, D)}
    edges = [swap.get(edge, edge) for edge in tree.edges]
    new_tree = TreeTopology(tree.vertices, edges, tree.embedding)
    new_weights = dict(zip(edges, f.weights))
    new_weights[norm_edge(X, A)] = after["XA"]
    new_weights[norm_edge(Y, B)] = after["YB"]
    new_weights[norm_edge(Y, C)] = after["YC"]
    new_weights[norm_edge(X, D)] = after["XD"]
    new_weights[xy] = after["XY"]
    g = WeightedFilling(new_tree, new_weights)

    old_d = _pair_distances(f, space)
    new_d = _pair_distances(g, space)
    exact_old = {p for p, d in old_d.items() if d == space.d(*p)}
    exact_new = {p for p, d in new_d.items() if d == space.d(*p)}
    # the move's guarantees, checked on every call
    if total_weight(g) != total_weight(f):
        raise AssertionError("rewiring changed the total weight")
    if any(new_d[p] < old_d[p] for p in old_d):
        raise AssertionError("rewiring shortened a boundary path")
    if not exact_new < exact_old or (a_lab, b_lab) in exact_new:
        raise AssertionError("rewiring did not remove the chosen exact pair")

    step = ModificationStep(
        edge=(X, Y),
        roles={"A": A, "B": B, "C": C, "D": D},
        gamma=(a_lab, b_lab),
        e=e,
        before=before,
        after=after,
        exact_before=len(exact_old),
        exact_after=len(exact_new),
    )
    return g, step


def remove_negative_edges(f: WeightedFilling, space: PseudometricSpace,
                          max_steps: Optional[int] = None):
    """Rewire until no edge is negative.

    ``f`` must be a binary generalized filling of minimum total weight over
    all types; only then is every negative edge guaranteed to lie on an exact
    path.  The first negative edge (by edge key) and the first exact pair
    through it (in label order) are used at each step.
    """
    cls = classify(space)
    if cls.kind is SpaceKind.TRIANGLE_VIOLATING:
        raise DenegativizeError(f"space violates the triangle inequality at {cls.witness}")
    if not f.topology.is_binary:
        raise DenegativizeError("topology is not binary")
    check = is_generalized_filling(f, space)
    if not check:
        raise DenegativizeError(f"not a filling: {check.witness}")
    n = len(space)
    if max_steps is None:
        max_steps = n * (n - 1) // 2
    steps: list = []
    while True:
        negative = sorted(f.negative_edges(), key=edge_key)
        if not negative:
            return f, steps
        if len(steps) >= max_steps:
            raise DenegativizeError(f"no termination within {max_steps} steps")
        xy = negative[0]
        gamma = next(
            (p for p in exact_pairs(f, space) if xy in f.topology.label_path(*p)), None
        )
        if gamma is None:
            raise DenegativizeError(
                f"no exact path through negative edge {edge_key(xy)}; "
                "the filling is not minimal"
            )
        f, step = modify(f, xy, gamma, space)
        steps.append(step)
