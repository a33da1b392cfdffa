"""Tree types joining a boundary set.

A :class:`TreeTopology` is a tree whose vertices are named by strings.  The
embedding maps each boundary label to the vertex it sits on; normally that
vertex carries the label as its name, and interior vertices are named
``i0``, ``i1``, ...  Edges are stored as name pairs sorted lexicographically.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence


class TopologyError(ValueError):
    pass


_INTERIOR_NAME = re.compile(r"i\d+")


def norm_edge(u: str, v: str) -> tuple:
    return (u, v) if u <= v else (v, u)


def edge_key(edge) -> str:
    return "-".join(sorted(edge))


@dataclass(frozen=True)
class TreeTopology:
    vertices: tuple
    edges: tuple
    embedding: tuple  # (label, vertex) pairs in boundary order
    relaxed: bool = False

    def __init__(self, vertices: Sequence[str], edges: Iterable, embedding: Iterable,
                 relaxed: bool = False):
        vertices = tuple(vertices)
        edges = tuple(norm_edge(u, v) for u, v in edges)
        embedding = tuple((lab, v) for lab, v in embedding)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "embedding", embedding)
        object.__setattr__(self, "relaxed", relaxed)
        self._validate()

    @classmethod
    def build(cls, labels: Sequence[str], edges: Iterable, relaxed: bool = False) -> "TreeTopology":
        """Tree on ``labels`` where every other name in ``edges`` is interior."""
        edges = [tuple(e) for e in edges]
        labels = tuple(labels)
        names = list(labels)
        seen = set(labels)
        for e in edges:
            for x in e:
                if x not in seen:
                    seen.add(x)
                    names.append(x)
        return cls(names, edges, [(lab, lab) for lab in labels], relaxed=relaxed)

    def _validate(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise TopologyError("duplicate vertex names")
        labels = [lab for lab, _ in self.embedding]
        if len(set(labels)) != len(labels):
            raise TopologyError("a boundary label is embedded twice")
        for lab, v in self.embedding:
            if v not in vs:
                raise TopologyError(f"label {lab!r} embedded at unknown vertex {v!r}")
        if len(set(self.edges)) != len(self.edges):
            raise TopologyError("duplicate edge")
        for u, v in self.edges:
            if u == v:
                raise TopologyError(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise TopologyError(f"edge {u}-{v} has an unknown endpoint")
        if len(self.edges) != len(self.vertices) - 1:
            raise TopologyError(
                f"not a tree: {len(self.vertices)} vertices but {len(self.edges)} edges"
            )
        if self.vertices and len(self._bfs_order) != len(self.vertices):
            raise TopologyError("not connected")
        if not self.relaxed:
            leaf = has_interior_leaf(self)
            if leaf is not None:
                raise TopologyError(f"interior vertex {leaf!r} has degree 1")

    # -- structure -----------------------------------------------------

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    @cached_property
    def labels(self) -> tuple:
        return tuple(lab for lab, _ in self.embedding)

    @cached_property
    def vertex_of(self) -> dict:
        return dict(self.embedding)

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(v for _, v in self.embedding)

    def is_boundary(self, v: str) -> bool:
        return v in self.boundary_vertices

    @cached_property
    def interior(self) -> tuple:
        return tuple(v for v in self.vertices if v not in self.boundary_vertices)

    @cached_property
    def edge_index(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    @property
    def is_binary(self) -> bool:
        return all(
            self.degree(v) == (1 if self.is_boundary(v) else 3) for v in self.vertices
        ) and len(self.boundary_vertices) == len(self.embedding)

    @cached_property
    def _bfs_order(self) -> list:
        if not self.vertices:
            return []
        root = self.vertices[0]
        order, seen = [root], {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    @cached_property
    def _rooted(self) -> tuple:
        parent = {self.vertices[0]: None}
        depth = {self.vertices[0]: 0}
        for u in self._bfs_order:
            for w in self.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
        return parent, depth

    def path_between(self, u: str, v: str) -> list:
        """Edges of the unique simple path from vertex ``u`` to vertex ``v``."""
        parent, depth = self._rooted
        for x in (u, v):
            if x not in parent:
                raise TopologyError(f"unknown vertex {x!r}")
        head, tail = [], []
        while depth[u] > depth[v]:
            head.append(norm_edge(u, parent[u]))
            u = parent[u]
        while depth[v] > depth[u]:
            tail.append(norm_edge(v, parent[v]))
            v = parent[v]
        while u != v:
            head.append(norm_edge(u, parent[u]))
            tail.append(norm_edge(v, parent[v]))
            u, v = parent[u], parent[v]
        return head + tail[::-1]

    def label_path(self, a: str, b: str) -> list:
        return self.path_between(self.vertex_of[a], self.vertex_of[b])

    @cached_property
    def pair_paths(self) -> dict:
        """Edge indices of the path for every label pair (in label order)."""
        idx = self.edge_index
        return {
            (a, b): tuple(idx[e] for e in self.label_path(a, b))
            for a, b in itertools.combinations(self.labels, 2)
        }

    # -- identity ------------------------------------------------------

    def canonical_form(self):
        """Invariant under renaming interior vertices.

        Leaves are pruned layer by layer down to the center (one vertex or
        one edge); the tree is then encoded from the center outward, each
        vertex as its sorted label set plus the sorted codes of its subtrees.
        """
        labels_at: dict = {v: [] for v in self.vertices}
        for lab, v in self.embedding:
            labels_at[v].append(lab)
        remaining = {v: len(self.adjacency[v]) for v in self.vertices}
        layer = [v for v, d in remaining.items() if d <= 1]
        left = len(self.vertices)
        removed = set()
        while left > 2:
            nxt = []
            for v in layer:
                removed.add(v)
                left -= 1
                for w in self.adjacency[v]:
                    if w not in removed:
                        remaining[w] -= 1
                        if remaining[w] == 1:
                            nxt.append(w)
            layer = nxt
        centers = [v for v in self.vertices if v not in removed]

        def code(v, parent):
            kids = sorted(code(w, v) for w in self.adjacency[v] if w != parent)
            return (tuple(sorted(labels_at[v])), tuple(kids))

        if len(centers) == 1:
            return ("vertex", code(centers[0], None))
        a, b = centers
        return ("edge",) + tuple(sorted([code(a, b), code(b, a)]))

    def is_isomorphic(self, other: "TreeTopology") -> bool:
        return self.canonical_form() == other.canonical_form()

    # -- serialization -------------------------------------------------

    def to_json_obj(self) -> dict:
        if any(v != lab for lab, v in self.embedding):
            raise TopologyError("only trees with one vertex per label can be serialized")
        return {"interior": len(self.interior), "edges": [list(e) for e in self.edges]}


def topology_from_json(obj: dict, labels: Sequence[str], relaxed: bool = False) -> TreeTopology:
    """Inverse of :meth:`TreeTopology.to_json_obj`."""
    try:
        k = int(obj["interior"])
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError):
        raise TopologyError('expected {"interior": k, "edges": [[u, v], ...]}') from None
    labels = tuple(labels)
    interior = set()
    for e in edges:
        if len(e) != 2:
            raise TopologyError(f"edge {list(e)} must have two endpoints")
        for x in e:
            if x in labels:
                continue
            if not isinstance(x, str) or not _INTERIOR_NAME.fullmatch(x):
                raise TopologyError(f"{x!r} is neither a boundary label nor an interior name")
            interior.add(x)
    if len(interior) != k:
        raise TopologyError(f"declared {k} interior vertices, found {len(interior)}")
    return TreeTopology.build(labels, edges, relaxed=relaxed)


def has_interior_leaf(tree: TreeTopology) -> Optional[str]:
    for v in tree.vertices:
        if not tree.is_boundary(v) and len(tree.adjacency[v]) == 1:
            return v
    return None


# -- enumeration ---------------------------------------------------------

def interior_name(k: int) -> str:
    return f"i{k}"


def _check_label_clash(labels, count):
    clash = set(labels) & {interior_name(k) for k in range(count)}
    if clash:
        raise TopologyError(f"labels {sorted(clash)} clash with interior vertex names")


def enumerate_binary_trees(labels: Sequence[str]) -> Iterator[TreeTopology]:
    """Every binary tree with leaves ``labels``, each exactly once.

    Leaf k+1 is attached by subdividing each edge of each k-leaf tree with a
    new interior vertex, which yields (2n-5)!! trees for n >= 3.
    """
    labels = tuple(labels)
    n = len(labels)
    if n < 2:
        raise TopologyError(f"need at least 2 boundary points, got {n}")
    if len(set(labels)) != n:
        raise TopologyError("duplicate labels")
    if n == 2:
        yield TreeTopology.build(labels, [labels])
        return
    _check_label_clash(labels, n - 2)
    c = interior_name(0)
    for edges in _grow([[(labels[0], c), (labels[1], c), (labels[2], c)]], labels, 3):
        yield TreeTopology.build(labels, edges)


def _grow(trees, labels, k):
    if k == len(labels):
        yield from trees
        return
    w = interior_name(k - 2)
    leaf = labels[k]
    for tree in trees:
        grown = []
        for idx, (u, v) in enumerate(tree):
            grown.append(tree[:idx] + [(u, w)] + tree[idx + 1:] + [(w, v), (w, leaf)])
        yield from _grow(grown, labels, k + 1)


@lru_cache(maxsize=16)
def binary_trees(labels: tuple) -> tuple:
    """Cached, materialized :func:`enumerate_binary_trees`."""
    return tuple(enumerate_binary_trees(labels))


def count_binary_trees(n: int) -> int:
    """(2n-5)!! for n >= 3, and 1 for n = 2."""
    out = 1
    for k in range(3, 2 * n - 4, 2):
        out *= k
    return out


# -- planar orders and tours ---------------------------------------------

def planar_order(tree: TreeTopology) -> tuple:
    """Boundary labels in depth-first visiting order from the first label.

    Children are visited in adjacency (edge) order.  Walking around any
    plane drawing of the tree meets the boundary in such an order, so every
    edge lies on exactly two paths of the resulting tour.
    """
    leaf = has_interior_leaf(tree)
    if leaf is not None:
        raise TopologyError(f"interior vertex {leaf!r} has degree 1")
    labels_at: dict = {}
    for lab, v in tree.embedding:
        labels_at.setdefault(v, []).append(lab)
    start = tree.embedding[0][1]
    order, seen = [], {start}
    stack = [start]
    while stack:
        v = stack.pop()
        order.extend(labels_at.get(v, ()))
        for w in reversed(tree.adjacency[v]):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return tuple(order)


def tour_paths(tree: TreeTopology, order: Sequence[str]) -> list:
    if sorted(order) != sorted(tree.labels):
        raise TopologyError("cyclic order does not match the boundary labels")
    n = len(order)
    return [tree.label_path(order[k], order[(k + 1) % n]) for k in range(n)]


def is_planar_order(tree: TreeTopology, order: Sequence[str]) -> bool:
    counts = dict.fromkeys(tree.edges, 0)
    for path in tour_paths(tree, order):
        for e in path:
            counts[e] += 1
    return all(c == 2 for c in counts.values())


# -- quotient and splitting ----------------------------------------------

def quotient(tree: TreeTopology, contract: Iterable) -> TreeTopology:
    """Contract every edge in ``contract``; each component becomes one vertex.

    A component keeps the name of its first vertex, and all boundary labels
    in it are embedded at that vertex.
    """
    contract = {norm_edge(*e) for e in contract}
    unknown = contract - set(tree.edges)
    if unknown:
        raise TopologyError(f"edges {sorted(unknown)} are not in the tree")
    root = {v: v for v in tree.vertices}

    def find(v):
        while root[v] != v:
            root[v] = root[root[v]]
            v = root[v]
        return v

    rank = {v: k for k, v in enumerate(tree.vertices)}
    for u, v in contract:
        a, b = find(u), find(v)
        if rank[a] > rank[b]:
            a, b = b, a
        root[b] = a
    # prefer a boundary vertex as the component's name
    name = {}
    for _, v in tree.embedding:
        name.setdefault(find(v), v)
    for v in tree.vertices:
        name.setdefault(find(v), v)
    rep = {v: name[find(v)] for v in tree.vertices}
    vertices = list(dict.fromkeys(rep[v] for v in tree.vertices))
    edges = [(rep[u], rep[v]) for u, v in tree.edges if (u, v) not in contract]
    embedding = [(lab, rep[v]) for lab, v in tree.embedding]
    return TreeTopology(vertices, edges, embedding, relaxed=tree.relaxed)


@dataclass(frozen=True)
class Splitting:
    tree: TreeTopology
    edge_map: dict  # old edge -> new edge carrying its weight
    added: tuple  # new edges that carry weight zero


def split_to_binary(tree: TreeTopology) -> Splitting:
    """Refine ``tree`` into a binary tree.

    Interior degree-2 vertices are suppressed (their two edges merge), each
    boundary vertex of degree >= 2 is pulled off onto a new pendant edge, and
    every interior vertex of degree d > 3 becomes a chain of d - 2 degree-3
    vertices.  Transferring weights along ``edge_map`` (summing merged edges)
    and giving the ``added`` edges weight zero keeps every boundary path weight.
    """
    leaf = has_interior_leaf(tree)
    if leaf is not None:
        raise TopologyError(f"interior vertex {leaf!r} has degree 1")
    if len(tree.boundary_vertices) != len(tree.embedding):
        raise TopologyError("several labels share a vertex; cannot split to a binary tree")
    if len(tree.vertices) < 2:
        raise TopologyError("a single vertex has no binary refinement")

    adj = {v: list(nb) for v, nb in tree.adjacency.items()}
    current = {e: e for e in tree.edges}  # old edge -> current edge
    boundary = tree.boundary_vertices
    used = set(tree.vertices)
    counter = itertools.count()
    added: list = []

    def fresh():
        while True:
            name = interior_name(next(counter))
            if name not in used:
                used.add(name)
                return name

    def rename(old, new):
        old, new = norm_edge(*old), norm_edge(*new)
        for k, e in current.items():
            if e == old:
                current[k] = new
        for k, e in enumerate(added):
            if e == old:
                added[k] = new

    def move(v, w, z):
        """Reattach the edge v-w as z-w."""
        adj[v].remove(w)
        adj[w][adj[w].index(v)] = z
        adj[z].append(w)
        rename((v, w), (z, w))

    # suppress interior degree-2 vertices
    for m in list(tree.vertices):
        if m not in boundary and len(adj[m]) == 2:
            x, y = adj[m]
            merged = norm_edge(x, y)
            for k, e in current.items():
                if e in (norm_edge(x, m), norm_edge(m, y)):
                    current[k] = merged
            adj[x][adj[x].index(m)] = y
            adj[y][adj[y].index(m)] = x
            del adj[m]

    # pull boundary vertices of degree >= 2 onto pendant edges
    for b in tree.vertices:
        if b in boundary and len(adj[b]) >= 2:
            z = fresh()
            adj[z] = []
            for w in list(adj[b]):
                move(b, w, z)
            adj[b].append(z)
            adj[z].append(b)
            added.append(norm_edge(b, z))

    # expand high-degree interior vertices into chains
    for v in list(adj):
        if v in boundary or len(adj[v]) <= 3:
            continue
        nbrs = list(adj[v])
        d = len(nbrs)
        chain = [v] + [fresh() for _ in range(d - 3)]
        for z in chain[1:]:
            adj[z] = []
        # chain[0] keeps nbrs[0], nbrs[1]; chain[k] takes nbrs[k+1]; the last takes the final two
        for k in range(1, len(chain)):
            move(v, nbrs[k + 1], chain[k])
        move(v, nbrs[-1], chain[-1])
        for a, b in zip(chain, chain[1:]):
            adj[a].append(b)
            adj[b].append(a)
            added.append(norm_edge(a, b))

    edges = []
    seen = set()
    for v, nb in adj.items():
        for w in nb:
            e = norm_edge(v, w)
            if e not in seen:
                seen.add(e)
                edges.append(e)
    vertices = list(adj)
    new_tree = TreeTopology(vertices, edges, tree.embedding)
    if not new_tree.is_binary:
        raise AssertionError("splitting did not produce a binary tree")
    return Splitting(new_tree, dict(current), tuple(added))
