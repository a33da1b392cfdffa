"""Seeded randomized verification campaigns."""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .denegativize import DenegativizeError, remove_negative_edges
from .filling import (
    check_exact_paths,
    is_generalized_filling,
    is_nonneg_filling,
    total_weight,
    tour_lower_bound,
    tour_weight_sum,
)
from .metric_space import PseudometricSpace, SpaceKind, classify, random_space
from .solver import max_n, solve_space
from .topology import planar_order

CHECKS = ("theorem", "tour_bound", "exact_paths", "boundary_edges", "denegativize", "positivity")

CLASS_NAMES = {
    "metric": None,
    "nondegenerate": SpaceKind.NON_DEGENERATE_METRIC,
    "degenerate": SpaceKind.DEGENERATE_PSEUDOMETRIC,
    "violating": SpaceKind.TRIANGLE_VIOLATING,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    sizes: tuple
    instances_per_size: int
    seed: int
    space_class: str = "metric"
    checks: tuple = CHECKS
    limit: Optional[int] = None

    def __post_init__(self):
        limit = max_n() if self.limit is None else self.limit
        if not self.sizes:
            raise ConfigError("no sizes given")
        for n in self.sizes:
            if n < 2 or n > limit:
                raise ConfigError(f"size {n} outside [2, {limit}]")
        if self.instances_per_size < 1:
            raise ConfigError("instances per size must be at least 1")
        if self.space_class not in CLASS_NAMES:
            raise ConfigError(f"unknown class {self.space_class!r}")
        if self.space_class == "violating" and min(self.sizes) < 3:
            raise ConfigError("triangle violations need at least 3 points")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks {sorted(unknown)}")


def instance_seed(seed: int, n: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{n}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class InstanceResult:
    size: int
    index: int
    seed: int
    space: PseudometricSpace
    kind: SpaceKind
    mf: Fraction
    mf_minus: Fraction
    had_negative: bool = False
    steps: int = 0
    failures: list = field(default_factory=list)

    @property
    def in_hypothesis(self) -> bool:
        return self.kind is not SpaceKind.TRIANGLE_VIOLATING


def check_space(space: PseudometricSpace, checks=CHECKS, limit: Optional[int] = None) -> InstanceResult:
    """Solve ``space`` and run the selected checks; failures are collected, not raised."""
    kind = classify(space).kind
    report = solve_space(space, limit=limit)
    res = InstanceResult(len(space), 0, 0, space, kind, report.mf, report.mf_minus)
    fail = res.failures.append
    in_hyp = res.in_hypothesis
    labels = set(space.labels)

    if "theorem" in checks:
        if in_hyp and report.mf != report.mf_minus:
            fail(f"theorem: mf={report.mf} but mf_minus={report.mf_minus}")
        if report.mf_minus > report.mf:
            fail(f"theorem: mf_minus={report.mf_minus} exceeds mf={report.mf}")
        if not is_nonneg_filling(report.mf_filling, space):
            fail("theorem: classical optimum is not a non-negative filling")
        if not is_generalized_filling(report.mf_minus_filling, space):
            fail("theorem: generalized optimum is not a filling")
        for k, (nonneg, gen) in enumerate(report.results):
            if gen.value > nonneg.value:
                fail(f"theorem: type {k} has mpf_minus={gen.value} > mpf={nonneg.value}")

    for k, (_, gen) in enumerate(report.results):
        f = gen.filling
        tree = f.topology
        if "tour_bound" in checks:
            order = planar_order(tree)
            bound = tour_lower_bound(space, order)
            w = total_weight(f)
            if tour_weight_sum(f, order) != 2 * w:
                fail(f"tour_bound: type {k} tour sum differs from twice the weight")
            if w < bound:
                fail(f"tour_bound: type {k} weight {w} below tour bound {bound}")
        if "exact_paths" in checks:
            structure = check_exact_paths(f, space)
            if not structure.passed:
                fail(f"exact_paths: type {k} exact-path structure fails: {structure}")
        if "boundary_edges" in checks and in_hyp:
            for e, wt in zip(tree.edges, f.weights):
                if e[0] in labels or e[1] in labels:
                    if wt < 0:
                        fail(f"boundary_edges: type {k} boundary edge {e} has weight {wt}")
                    elif wt == 0 and kind is SpaceKind.NON_DEGENERATE_METRIC:
                        fail(f"boundary_edges: type {k} boundary edge {e} has weight 0")

    if "positivity" in checks and in_hyp:
        all_zero = all(d == 0 for row in space.dist for d in row)
        if all_zero and report.mf_minus != 0:
            fail(f"positivity: zero space has mf_minus={report.mf_minus}")
        if not all_zero and report.mf_minus <= 0:
            fail(f"positivity: mf_minus={report.mf_minus} is not positive")

    if "denegativize" in checks and in_hyp:
        for k, (_, gen) in enumerate(report.results):
            f = gen.filling
            if gen.value != report.mf_minus or not f.negative_edges():
                continue
            res.had_negative = True
            try:
                g, steps = remove_negative_edges(f, space)
            except (DenegativizeError, AssertionError) as exc:
                fail(f"denegativize: type {k}: {exc}")
                continue
            res.steps += len(steps)
            if total_weight(g) != total_weight(f):
                fail(f"denegativize: type {k} weight changed")
            if not is_nonneg_filling(g, space):
                fail(f"denegativize: type {k} result is not a non-negative filling")
            counts = [steps[0].exact_before] + [s.exact_after for s in steps]
            if any(b >= a for a, b in zip(counts, counts[1:])):
                fail(f"denegativize: type {k} exact-pair counts not decreasing: {counts}")
    return res


def _run_one(args):
    n, index, seed, space_class, checks, limit = args
    s = instance_seed(seed, n, index)
    space = random_space(n, s, CLASS_NAMES[space_class])
    res = check_space(space, checks, limit)
    res.index, res.seed = index, s
    return res


@dataclass
class CampaignReport:
    config: CampaignConfig
    results: list

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.failures]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        by_size = {}
        for r in self.results:
            entry = by_size.setdefault(str(r.size), {
                "instances": 0, "in_hypothesis": 0, "nondegenerate": 0,
                "theorem_holds": 0, "negative_optima": 0, "rewiring_steps": 0, "failures": 0,
            })
            entry["instances"] += 1
            entry["in_hypothesis"] += r.in_hypothesis
            entry["nondegenerate"] += r.kind is SpaceKind.NON_DEGENERATE_METRIC
            entry["theorem_holds"] += r.mf == r.mf_minus
            entry["negative_optima"] += r.had_negative
            entry["rewiring_steps"] += r.steps
            entry["failures"] += bool(r.failures)
        return {
            "config": {
                "sizes": list(self.config.sizes),
                "count": self.config.instances_per_size,
                "seed": self.config.seed,
                "class": self.config.space_class,
                "checks": list(self.config.checks),
            },
            "instances": len(self.results),
            "failures": len(self.failures),
            "by_size": by_size,
            "failed_instances": [
                {
                    "size": r.size,
                    "index": r.index,
                    "seed": r.seed,
                    "mf": str(r.mf),
                    "mf_minus": str(r.mf_minus),
                    "messages": r.failures,
                    "instance": r.space.to_json_obj(),
                }
                for r in self.failures
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def run_campaign(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Results come back ordered by (size, index) whatever the completion order."""
    tasks = [
        (n, i, config.seed, config.space_class, tuple(config.checks), config.limit)
        for n in config.sizes
        for i in range(config.instances_per_size)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=4))
    else:
        results = [_run_one(t) for t in tasks]
    return CampaignReport(config, results)
