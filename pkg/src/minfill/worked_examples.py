"""Small hand-checkable instances with known answers, runnable as a self-test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lp_core import Status
from .metric_space import PseudometricSpace
from .solver import mpf, mpf_gen, solve_space
from .topology import TreeTopology

FOUR_POINT_EDGES = [("a", "u"), ("b", "u"), ("u", "v"), ("c", "v"), ("d", "v")]


def four_point_space(corrupt: bool = False) -> PseudometricSpace:
    """Opposite pairs {a,b}, {c,d} at distance 4, every cross pair at 3."""
    ab = 5 if corrupt else 4
    return PseudometricSpace(
        ["a", "b", "c", "d"],
        [[0, ab, 3, 3], [ab, 0, 3, 3], [3, 3, 0, 4], [3, 3, 4, 0]],
    )


def four_point_tree() -> TreeTopology:
    return TreeTopology.build(["a", "b", "c", "d"], FOUR_POINT_EDGES)


def violating_space() -> PseudometricSpace:
    """x-y 1, y-z 2, z-x 5: the long side exceeds the other two."""
    return PseudometricSpace(["x", "y", "z"], [[0, 1, 5], [1, 0, 2], [5, 2, 0]])


def pendant_tree() -> TreeTopology:
    """A-B joined through i0, with an extra interior leaf i1 hanging off i0."""
    return TreeTopology.build(
        ["A", "B"], [("A", "i0"), ("i0", "B"), ("i0", "i1")], relaxed=True
    )


@dataclass(frozen=True)
class ExampleLine:
    name: str
    passed: bool
    observed: str
    expected: str

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<24} observed {self.observed:<22} expected {self.expected}"


def run_examples(corrupt: bool = False) -> list:
    four = four_point_space(corrupt)
    lines = []

    tree = four_point_tree()
    a, b = mpf(four, tree).value, mpf_gen(four, tree).value
    lines.append(ExampleLine(
        "fixed-type-gap", (a, b) == (8, 7), f"mpf={a} mpf_minus={b}", "mpf=8 mpf_minus=7"
    ))

    rep = solve_space(four)
    lines.append(ExampleLine(
        "four-point-global", (rep.mf, rep.mf_minus) == (7, 7),
        f"mf={rep.mf} mf_minus={rep.mf_minus}", "mf=7 mf_minus=7",
    ))

    rep = solve_space(violating_space())
    lines.append(ExampleLine(
        "triangle-violation", (rep.mf, rep.mf_minus) == (5, 4),
        f"mf={rep.mf} mf_minus={rep.mf_minus}", "mf=5 mf_minus=4",
    ))

    two = PseudometricSpace(["A", "B"], [[0, Fraction(1)], [Fraction(1), 0]])
    outcome = mpf_gen(two, pendant_tree()).outcome
    lines.append(ExampleLine(
        "pendant-interior-vertex", outcome.status is Status.UNBOUNDED,
        outcome.status.value, "unbounded",
    ))
    return lines
