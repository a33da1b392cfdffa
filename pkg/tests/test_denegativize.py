from fractions import Fraction

import pytest

from minfill.denegativize import DenegativizeError, modify, remove_negative_edges
from minfill.filling import WeightedFilling, is_nonneg_filling, total_weight
from minfill.metric_space import random_space
from minfill.solver import mpf_gen, solve_space
from minfill.topology import TreeTopology
from minfill.worked_examples import four_point_space, four_point_tree, violating_space


def signed_four_point():
    space = four_point_space()
    return space, mpf_gen(space, four_point_tree()).filling


def test_one_step_fixes_the_four_point_example():
    space, f = signed_four_point()
    g, steps = remove_negative_edges(f, space)
    assert len(steps) == 1
    step = steps[0]
    assert step.e == Fraction(1, 2)
    assert step.roles == {"A": "a", "B": "b", "C": "c", "D": "d"}
    assert g.as_dict() == {
        ("a", "u"): Fraction(3, 2),
        ("b", "v"): Fraction(3, 2),
        ("u", "v"): 1,
        ("c", "v"): Fraction(3, 2),
        ("d", "u"): Fraction(3, 2),
    }
    assert total_weight(g) == 7
    assert is_nonneg_filling(g, space)
    assert step.exact_after < step.exact_before


@pytest.mark.parametrize("gamma", [("a", "c"), ("b", "d"), ("a", "d"), ("b", "c")])
def test_any_exact_path_through_the_edge_works(gamma):
    space, f = signed_four_point()
    g, step = modify(f, ("u", "v"), gamma, space)
    assert total_weight(g) == total_weight(f)
    assert not g.negative_edges()
    assert gamma not in {(a, b) for a, b in space.pairs() if g.pair_weight(a, b) == space.d(a, b)}
    for a, b in space.pairs():
        assert g.pair_weight(a, b) >= f.pair_weight(a, b)


def test_modify_preconditions():
    space, f = signed_four_point()
    with pytest.raises(DenegativizeError, match="weight"):
        modify(f, ("a", "u"), ("a", "c"), space)
    with pytest.raises(DenegativizeError, match="not an edge"):
        modify(f, ("a", "v"), ("a", "c"), space)
    with pytest.raises(DenegativizeError, match="does not use"):
        modify(f, ("u", "v"), ("a", "b"), space)
    loose = WeightedFilling(f.topology, [3, 2, -1, 2, 2])
    with pytest.raises(DenegativizeError, match="not exact"):
        modify(loose, ("u", "v"), ("a", "b"), space)


def test_non_negative_input_is_returned_unchanged():
    space = four_point_space()
    f = solve_space(space).mf_filling
    g, steps = remove_negative_edges(f, space)
    assert g == f and steps == []


def test_rejects_triangle_violations():
    space = violating_space()
    with pytest.raises(DenegativizeError, match="triangle"):
        remove_negative_edges(solve_space(space).mf_minus_filling, space)


def test_rejects_non_fillings_and_non_binary_types():
    space, f = signed_four_point()
    short = WeightedFilling(f.topology, [2, 2, -2, 2, 2])
    with pytest.raises(DenegativizeError, match="not a filling"):
        remove_negative_edges(short, space)
    star = TreeTopology.build(list("abcd"), [(x, "m") for x in "abcd"])
    with pytest.raises(DenegativizeError, match="binary"):
        remove_negative_edges(WeightedFilling(star, [2, 2, 2, 2]), space)


def test_random_signed_optima():
    seen = 0
    for seed in range(40):
        space = random_space(5, seed)
        rep = solve_space(space)
        for _, gen in rep.results:
            f = gen.filling
            if gen.value != rep.mf_minus or not f.negative_edges():
                continue
            seen += 1
            g, steps = remove_negative_edges(f, space)
            assert total_weight(g) == total_weight(f)
            assert is_nonneg_filling(g, space)
            counts = [steps[0].exact_before] + [s.exact_after for s in steps]
            assert counts == sorted(set(counts), reverse=True)
    assert seen > 0


def test_step_serialises():
    space, f = signed_four_point()
    _, steps = remove_negative_edges(f, space)
    obj = steps[0].to_json_obj()
    assert obj["e"] == "1/2"
    assert obj["after"]["XY"] == "1"
