from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minfill.filling import (
    FillingError,
    WeightedFilling,
    check_exact_paths,
    dw,
    exact_pairs,
    filling_from_json,
    is_generalized_filling,
    is_nonneg_filling,
    split_filling,
    total_weight,
    tour_lower_bound,
    tour_weight_sum,
)
from minfill.metric_space import PseudometricSpace
from minfill.topology import TreeTopology, binary_trees, planar_order, split_to_binary

FOUR = PseudometricSpace(list("abcd"), [[0, 4, 3, 3], [4, 0, 3, 3], [3, 3, 0, 4], [3, 3, 4, 0]])
H_EDGES = [("a", "u"), ("b", "u"), ("u", "v"), ("c", "v"), ("d", "v")]


def h_filling(uv):
    tree = TreeTopology.build(list("abcd"), H_EDGES)
    return WeightedFilling(tree, {"a-u": 2, "b-u": 2, "u-v": uv, "c-v": 2, "d-v": 2})


def test_weights_by_key_or_sequence():
    f = h_filling(-1)
    g = WeightedFilling(f.topology, [2, 2, -1, 2, 2])
    assert f == g
    assert f.weight("v", "u") == -1
    assert total_weight(f) == 7
    assert f.negative_edges() == [("u", "v")]


def test_weight_errors():
    tree = TreeTopology.build(list("abcd"), H_EDGES)
    with pytest.raises(FillingError, match="unknown edge"):
        WeightedFilling(tree, {"a-b": 1})
    with pytest.raises(FillingError, match="without weight"):
        WeightedFilling(tree, {"a-u": 1})
    with pytest.raises(FillingError, match="5 edges"):
        WeightedFilling(tree, [1, 2])


def test_path_weights():
    f = h_filling(-1)
    assert dw(f, "a", "b") == 4
    assert dw(f, "a", "c") == 3
    assert dw(f, "u", "v") == -1


def test_signed_and_classical_validity():
    assert is_generalized_filling(h_filling(-1), FOUR)
    assert not is_nonneg_filling(h_filling(-1), FOUR)
    assert is_nonneg_filling(h_filling(0), FOUR)
    short = h_filling(-2)
    check = is_generalized_filling(short, FOUR)
    assert not check
    assert check.witness[:2] == ("a", "c")


def test_exact_paths_of_the_signed_optimum():
    f = h_filling(-1)
    assert len(exact_pairs(f, FOUR)) == 6
    assert check_exact_paths(f, FOUR).passed


def test_slack_edge_fails_the_coverage_check():
    # with w(uv) = 1 the middle edge lies on no exact path
    check = check_exact_paths(h_filling(1), FOUR)
    assert check.uncovered_edges == (("u", "v"),)
    assert not check.part_ok(1)
    assert not check.passed


def test_tour_bounds():
    assert tour_lower_bound(FOUR, "abcd") == 7
    assert tour_lower_bound(FOUR, "acbd") == 6
    tri = PseudometricSpace(list("xyz"), [[0, 1, 5], [1, 0, 2], [5, 2, 0]])
    assert tour_lower_bound(tri, "xyz") == 4
    with pytest.raises(FillingError):
        tour_lower_bound(FOUR, "abc")


def test_doubling_identity_on_the_h_tree():
    f = h_filling(-1)
    order = planar_order(f.topology)
    assert tour_weight_sum(f, order) == 2 * total_weight(f)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 6), st.data())
def test_doubling_identity_for_any_weights(n, data):
    labels = tuple(f"p{i}" for i in range(n))
    trees = binary_trees(labels)
    tree = trees[data.draw(st.integers(0, len(trees) - 1))]
    weights = data.draw(st.lists(
        st.fractions(min_value=-10, max_value=10, max_denominator=7),
        min_size=len(tree.edges), max_size=len(tree.edges),
    ))
    f = WeightedFilling(tree, weights)
    assert tour_weight_sum(f, planar_order(tree)) == 2 * total_weight(f)


def test_split_filling_keeps_boundary_distances():
    star = TreeTopology.build(list("abcde"), [(x, "m") for x in "abcde"])
    f = WeightedFilling(star, [1, Fraction(1, 2), 3, 2, 5])
    s = split_to_binary(star)
    g = split_filling(f, s)
    assert g.topology.is_binary
    assert total_weight(g) == total_weight(f)
    for a in "abcde":
        for b in "abcde":
            if a < b:
                assert g.pair_weight(a, b) == f.pair_weight(a, b)


def test_json_round_trip():
    f = h_filling(Fraction(-1, 3))
    tree = binary_trees(tuple("abcd"))[0]
    g = WeightedFilling(tree, [1, 2, Fraction(-1, 3), 4, 5])
    back = filling_from_json(g.to_json_obj(), tree.labels)
    assert back.weights == g.weights
    assert total_weight(f) == 8 - Fraction(1, 3)
