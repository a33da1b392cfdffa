import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minfill.filling import is_generalized_filling, is_nonneg_filling, total_weight
from minfill.lp_core import Status, check_ray
from minfill.metric_space import PseudometricSpace, SpaceKind, random_space
from minfill.solver import (
    OutOfHypothesisError,
    SizeLimitError,
    Variant,
    build_lp,
    mpf,
    mpf_gen,
    solve_space,
    verify_theorem,
)
from minfill.topology import TopologyError, TreeTopology
from minfill.worked_examples import (
    four_point_space,
    four_point_tree,
    pendant_tree,
    run_examples,
    violating_space,
)


def test_fixed_type_gap():
    space, tree = four_point_space(), four_point_tree()
    assert mpf(space, tree).value == 8
    gen = mpf_gen(space, tree)
    assert gen.value == 7
    assert gen.filling.weight("u", "v") == -1


def test_four_point_global_optimum():
    rep = solve_space(four_point_space())
    assert rep.topology_count == 3
    assert (rep.mf, rep.mf_minus) == (7, 7)
    assert [(a.value, b.value) for a, b in rep.results] == [(7, 7), (7, 7), (8, 7)]
    assert rep.theorem_holds


def test_triangle_violation_breaks_equality():
    space = violating_space()
    rep = solve_space(space)
    assert (rep.mf, rep.mf_minus) == (5, 4)
    f = rep.mf_minus_filling
    boundary = [w for e, w in zip(f.topology.edges, f.weights) if set(e) & set(space.labels)]
    assert min(boundary) < 0


def test_pendant_interior_vertex_is_unbounded():
    space = PseudometricSpace(["A", "B"], [[0, 1], [1, 0]])
    out = mpf_gen(space, pendant_tree()).outcome
    assert out.status is Status.UNBOUNDED
    path = TreeTopology.build(["A", "B"], [("A", "i0"), ("i0", "B")])
    assert mpf_gen(space, path).value == 1
    with pytest.raises(TopologyError):
        build_lp(space, pendant_tree(), Variant.GENERALIZED)


def test_pendant_ray_really_is_improving():
    # solve the same relaxed problem directly to cross-check the short cut
    from minfill.lp_core import LinearProgram, solve

    space = PseudometricSpace(["A", "B"], [[0, 1], [1, 0]])
    tree = pendant_tree()
    rows = [([1 if e in tree.label_path("A", "B") else 0 for e in tree.edges], 1)]
    lp = LinearProgram([1] * len(tree.edges), rows, [False] * len(tree.edges))
    assert solve(lp).status is Status.UNBOUNDED
    assert check_ray(lp, mpf_gen(space, tree).outcome.ray)


def test_worked_examples_all_pass():
    assert all(line.passed for line in run_examples())
    assert not all(line.passed for line in run_examples(corrupt=True))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=3, max_size=3))
def test_three_points_give_half_the_perimeter(sides):
    p, q, r = sorted(sides)
    r = min(r, p + q)  # keep it metric
    space = PseudometricSpace(list("abc"), [[0, p, q], [p, 0, r], [q, r, 0]])
    rep = solve_space(space)
    assert rep.mf == rep.mf_minus == Fraction(p + q + r, 2)


def test_two_points():
    space = PseudometricSpace(["a", "b"], [[0, "5/2"], ["5/2", 0]])
    rep = solve_space(space)
    assert rep.mf == rep.mf_minus == Fraction(5, 2)


def test_single_point():
    rep = solve_space(PseudometricSpace(["a"], [[0]]))
    assert rep.mf == rep.mf_minus == 0


def test_all_zero_space():
    rep = solve_space(PseudometricSpace(list("abcd"), [[0] * 4] * 4))
    assert rep.mf == rep.mf_minus == 0


@pytest.mark.parametrize("seed", range(6))
def test_solve_order_does_not_change_the_report(seed):
    space = random_space(5, seed)
    a = solve_space(space)
    b = solve_space(space, reverse=True)
    assert (a.mf, a.mf_minus, a.mf_index, a.mf_minus_index) == (b.mf, b.mf_minus, b.mf_index, b.mf_minus_index)
    assert a.mf_filling == b.mf_filling


def test_parallel_solve_matches_serial():
    space = random_space(5, 3)
    a = solve_space(space)
    b = solve_space(space, jobs=2)
    assert a.to_json_obj(per_topology=True) == b.to_json_obj(per_topology=True)


def test_optima_are_valid_fillings():
    rng = random.Random(5)
    for _ in range(10):
        space = random_space(5, rng.randrange(10**6))
        rep = solve_space(space)
        assert is_nonneg_filling(rep.mf_filling, space)
        assert is_generalized_filling(rep.mf_minus_filling, space)
        assert total_weight(rep.mf_filling) == rep.mf


def test_relabelling_does_not_change_the_values():
    space = random_space(5, 8)
    perm = [3, 0, 4, 1, 2]
    relabelled = PseudometricSpace(
        [space.labels[i] for i in perm],
        [[space.dist[i][j] for j in perm] for i in perm],
    )
    a, b = solve_space(space), solve_space(relabelled)
    assert (a.mf, a.mf_minus) == (b.mf, b.mf_minus)


def test_size_limit(monkeypatch):
    space = random_space(4, 1)
    with pytest.raises(SizeLimitError):
        solve_space(space, limit=3)
    monkeypatch.setenv("MINFILL_MAX_N", "3")
    with pytest.raises(SizeLimitError):
        solve_space(space)


def test_verify_theorem():
    assert verify_theorem(four_point_space())
    with pytest.raises(OutOfHypothesisError, match="out of hypothesis"):
        verify_theorem(violating_space())
    assert verify_theorem(random_space(4, 2, SpaceKind.DEGENERATE_PSEUDOMETRIC))
