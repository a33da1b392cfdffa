import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minfill.campaign import (
    CHECKS,
    CampaignConfig,
    CampaignReport,
    ConfigError,
    InstanceResult,
    check_space,
    instance_seed,
    run_campaign,
)
from minfill.metric_space import PseudometricSpace, SpaceKind, shortest_path_closure
from minfill.worked_examples import four_point_space, violating_space


def test_small_campaign_passes_and_is_reproducible():
    config = CampaignConfig(sizes=(3, 4), instances_per_size=8, seed=9)
    a = run_campaign(config)
    b = run_campaign(config)
    assert a.ok
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["instances"] == 16
    assert doc["by_size"]["4"]["instances"] == 8


def test_parallel_campaign_is_ordered_like_the_serial_one():
    config = CampaignConfig(sizes=(3, 4), instances_per_size=6, seed=3)
    serial = run_campaign(config)
    parallel = run_campaign(config, jobs=2)
    assert serial.to_json() == parallel.to_json()
    assert [(r.size, r.index) for r in parallel.results] == [(r.size, r.index) for r in serial.results]


def test_violating_class_is_not_held_to_equality():
    config = CampaignConfig(sizes=(3,), instances_per_size=10, seed=1, space_class="violating")
    report = run_campaign(config)
    assert report.ok
    assert all(not r.in_hypothesis for r in report.results)


def test_check_space_on_known_instances():
    assert check_space(four_point_space()).failures == []
    res = check_space(violating_space())
    assert res.failures == []
    assert (res.mf, res.mf_minus) == (5, 4)


def test_failed_instances_carry_the_full_instance():
    space = four_point_space()
    bad = InstanceResult(4, 7, 123, space, SpaceKind.NON_DEGENERATE_METRIC, 7, 7,
                         failures=["theorem: made up"])
    report = CampaignReport(CampaignConfig((4,), 1, 0), [bad])
    doc = report.to_json_obj()
    assert not report.ok
    assert doc["failed_instances"][0]["instance"] == space.to_json_obj()
    assert doc["failed_instances"][0]["messages"] == ["theorem: made up"]


def test_instance_seeds_differ_by_position():
    seeds = {instance_seed(42, n, i) for n in (3, 4) for i in range(50)}
    assert len(seeds) == 100


@pytest.mark.parametrize("kwargs", [
    dict(sizes=()),
    dict(sizes=(1,)),
    dict(sizes=(12,)),
    dict(instances_per_size=0),
    dict(space_class="banana"),
    dict(sizes=(2,), space_class="violating"),
    dict(checks=("nonsense",)),
])
def test_config_validation(kwargs):
    base = dict(sizes=(3,), instances_per_size=1, seed=0)
    base.update(kwargs)
    with pytest.raises(ConfigError):
        CampaignConfig(**base)


def test_checks_can_be_selected():
    config = CampaignConfig(sizes=(4,), instances_per_size=3, seed=0, checks=("theorem",))
    assert run_campaign(config).ok
    assert set(CHECKS) >= {"theorem", "denegativize"}


def _closed_space(n, values):
    raw = [[0] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        for j in range(i + 1, n):
            raw[i][j] = raw[j][i] = next(it)
    return PseudometricSpace([f"p{i}" for i in range(n)], shortest_path_closure(raw))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 30), min_size=n * (n - 1) // 2,
                                              max_size=n * (n - 1) // 2))))
def test_every_check_holds_on_arbitrary_metrics(drawn):
    n, values = drawn
    assert check_space(_closed_space(n, values)).failures == []
