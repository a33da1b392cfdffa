"""Finite pseudometric spaces with exact rational distances."""

from __future__ import annotations

import enum
import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


class SpaceError(ValueError):
    """Invalid instance document or distance matrix."""


class SpaceKind(enum.Enum):
    DEGENERATE_PSEUDOMETRIC = "degenerate"
    NON_DEGENERATE_METRIC = "nondegenerate"
    TRIANGLE_VIOLATING = "violating"


@dataclass(frozen=True)
class SpaceClass:
    kind: SpaceKind
    # pair (x, y) for a zero distance, triple (x, y, z) for a triangle
    # equality or violation where dist(x, z) >= dist(x, y) + dist(y, z)
    witness: Optional[tuple] = None


def _to_fraction(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpaceError(f"{where}: boolean is not a distance")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # repr gives the shortest decimal that round-trips, which is what the user typed
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SpaceError(f"{where}: cannot read {value!r} as a rational") from None
    raise SpaceError(f"{where}: unsupported entry {value!r}")


@dataclass(frozen=True)
class PseudometricSpace:
    labels: tuple
    dist: tuple  # n x n tuple of Fractions

    def __init__(self, labels: Sequence[str], dist: Sequence[Sequence]):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        seen = set()
        for i, lab in enumerate(labels):
            if lab in seen:
                raise SpaceError(f"labels[{i}]: duplicate label {lab!r}")
            seen.add(lab)
        if len(dist) != n:
            raise SpaceError(f"dist: expected {n} rows, got {len(dist)}")
        rows = []
        for i, row in enumerate(dist):
            if len(row) != n:
                raise SpaceError(f"dist[{i}]: expected {n} entries, got {len(row)}")
            rows.append(tuple(_to_fraction(v, f"dist[{i}][{j}]") for j, v in enumerate(row)))
        for i in range(n):
            if rows[i][i] != 0:
                raise SpaceError(f"dist[{i}][{i}]: nonzero diagonal {rows[i][i]}")
            for j in range(n):
                if rows[i][j] < 0:
                    raise SpaceError(f"dist[{i}][{j}]: negative distance {rows[i][j]}")
                if rows[i][j] != rows[j][i]:
                    raise SpaceError(
                        f"dist[{i}][{j}]: asymmetric matrix ({rows[i][j]} vs {rows[j][i]})"
                    )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", tuple(rows))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown point {label!r}") from None

    def d(self, u: str, v: str) -> Fraction:
        return self.dist[self.index(u)][self.index(v)]

    def pairs(self):
        """Unordered label pairs in label order."""
        return itertools.combinations(self.labels, 2)

    def satisfies_triangle(self) -> bool:
        return classify(self).kind is not SpaceKind.TRIANGLE_VIOLATING

    def to_json_obj(self) -> dict:
        return {
            "labels": list(self.labels),
            "dist": [[str(v) for v in row] for row in self.dist],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def parse_space(text: str) -> PseudometricSpace:
    """Read the JSON instance format ``{"labels": [...], "dist": [[...]]}``.

    Entries may be numbers or strings such as ``"3"``, ``"1.5"`` or ``"7/2"``;
    decimals convert exactly.
    """
    try:
        doc = json.loads(text, parse_float=lambda s: Fraction(s))
    except json.JSONDecodeError as exc:
        raise SpaceError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict) or "labels" not in doc or "dist" not in doc:
        raise SpaceError('malformed document: expected an object with "labels" and "dist"')
    labels, dist = doc["labels"], doc["dist"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise SpaceError("labels: expected a list of strings")
    if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
        raise SpaceError("dist: expected a list of rows")
    return PseudometricSpace(labels, dist)


def load_space(path) -> PseudometricSpace:
    with open(path, encoding="utf-8") as fh:
        return parse_space(fh.read())


def classify(space: PseudometricSpace) -> SpaceClass:
    n = len(space)
    lab = space.labels
    d = space.dist
    for x, y, z in itertools.permutations(range(n), 3):
        if d[x][z] > d[x][y] + d[y][z]:
            return SpaceClass(SpaceKind.TRIANGLE_VIOLATING, (lab[x], lab[y], lab[z]))
    for x, y in itertools.combinations(range(n), 2):
        if d[x][y] == 0:
            return SpaceClass(SpaceKind.DEGENERATE_PSEUDOMETRIC, (lab[x], lab[y]))
    for x, y, z in itertools.permutations(range(n), 3):
        if d[x][z] == d[x][y] + d[y][z]:
            return SpaceClass(SpaceKind.DEGENERATE_PSEUDOMETRIC, (lab[x], lab[y], lab[z]))
    return SpaceClass(SpaceKind.NON_DEGENERATE_METRIC)


def shortest_path_closure(dist: Sequence[Sequence]) -> list:
    """Floyd-Warshall closure; the result satisfies the triangle inequality."""
    n = len(dist)
    out = [list(row) for row in dist]
    for k in range(n):
        for i in range(n):
            dik = out[i][k]
            for j in range(n):
                if dik + out[k][j] < out[i][j]:
                    out[i][j] = dik + out[k][j]
    return out


MAX_REDRAWS = 500


def random_space(n: int, seed: int, kind: Optional[SpaceKind] = None,
                 labels: Optional[Sequence[str]] = None) -> PseudometricSpace:
    """Seeded random instance.

    Distances are integers drawn uniformly from [1, 100].  Unless a triangle
    violation is requested, the draw is replaced by its shortest-path
    closure.  ``kind=None`` accepts any closed draw; otherwise draws repeat
    until the class matches.  Closed draws are almost always degenerate once
    n >= 6, so after ``MAX_REDRAWS`` failures a non-degenerate request draws
    from [51, 100] instead, where every triangle is strict.
    """
    if n < 2:
        raise SpaceError(f"need at least 2 points, got {n}")
    if kind is SpaceKind.TRIANGLE_VIOLATING and n < 3:
        raise SpaceError("a triangle violation needs at least 3 points")
    if kind is SpaceKind.DEGENERATE_PSEUDOMETRIC and n < 3:
        raise SpaceError("a degenerate space from positive draws needs at least 3 points")
    rng = random.Random(seed)
    labels = tuple(labels) if labels is not None else tuple(f"p{i}" for i in range(n))
    if len(labels) != n:
        raise SpaceError(f"expected {n} labels, got {len(labels)}")

    def draw(lo):
        raw = [[0] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            raw[i][j] = raw[j][i] = rng.randint(lo, 100)
        return raw

    for _ in range(MAX_REDRAWS):
        raw = draw(1)
        if kind is not SpaceKind.TRIANGLE_VIOLATING:
            raw = shortest_path_closure(raw)
        space = PseudometricSpace(labels, raw)
        if kind is None or classify(space).kind is kind:
            return space
    if kind is SpaceKind.NON_DEGENERATE_METRIC:
        return PseudometricSpace(labels, draw(51))
    raise SpaceError(f"no {kind.value} space found after {MAX_REDRAWS} draws")
