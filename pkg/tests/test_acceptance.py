"""The ten acceptance criteria, one test each.

Every test records a ``[PASS]``/``[FAIL]`` line that the conftest prints in
the terminal summary.
"""

import time

import pytest

from spcalc.category import builtin_procedural
from spcalc.config import DEFAULT_BOUNDS
from spcalc.replay import replay_suite, terminal_query
from spcalc.smallness import NOT_SMALL, SMALL

from conftest import ACCEPTANCE_LINES

SEED = 42
_RUNS = {}


def run(name, seed=SEED):
    key = (name, seed)
    if key not in _RUNS:
        start = time.perf_counter()
        report = replay_suite(name, seed, DEFAULT_BOUNDS)
        _RUNS[key] = (report, time.perf_counter() - start)
    return _RUNS[key]


def record(number, title, ok, note=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number} {title}" + (f" ({note})" if note else ""))
    return ok


def suite_criterion(number, title, name, limit, **expect):
    report, elapsed = run(name)
    ok = report.ok and elapsed < limit
    for key, minimum in expect.items():
        ok = ok and report.details.get(key, 0) >= minimum
    note = f"{report.passed}/{report.cases} cases, {elapsed:.1f}s < {limit}s"
    assert record(number, title, ok, note), report.to_json()


def test_1_yoneda():
    report, _ = run("yoneda")
    assert report.cases == 200
    suite_criterion(1, "Yoneda", "yoneda", 10)


def test_2_coend_end_oracles():
    suite_criterion(2, "coend/end oracles", "coend", 60)


def test_3_counterexample_replay():
    start = time.perf_counter()
    v = terminal_query(builtin_procedural("DiscreteNat"), DEFAULT_BOUNDS)
    t1 = time.perf_counter() - start
    start = time.perf_counter()
    w = terminal_query(builtin_procedural("OmegaChain").opposite(), DEFAULT_BOUNDS)
    t2 = time.perf_counter() - start
    ok = (v.kind == NOT_SMALL and v.witness.get("family") == "DiscreteNat"
          and w.kind == SMALL and list(w.certificate.support) == [0] and t1 < 1 and t2 < 1)
    report, _ = run("counterexample")
    ok = ok and report.ok
    assert record(3, "counterexample replay", ok, f"{t1:.3f}s and {t2:.3f}s < 1s")


def test_4_completeness_transfer():
    suite_criterion(4, "completeness transfer", "completeness", 120, lattices=50)


def test_5_restriction_adjoint():
    suite_criterion(5, "restriction adjoint criterion", "restriction", 30, inclusions=20)


def test_6_continuity_transfer():
    suite_criterion(6, "continuity transfer", "continuity", 120, maps=100)


def test_7_convolution():
    report, _ = run("convolution")
    assert report.details["F(x)G"] == [5, 7]
    assert report.details["[G,H]"] == [6, 6]
    assert report.details["min witness"] == [0, 0]
    suite_criterion(7, "convolution", "convolution", 60)


def test_8_isbell_dm():
    report, _ = run("dm")
    assert report.details["antichain"] == 4
    suite_criterion(8, "Isbell/Dedekind-MacNeille", "dm", 120, posets=100)


def test_9_representable_smallness():
    report, _ = run("representable")
    assert report.details["Y(3) on DiscreteNat"][0] == NOT_SMALL
    suite_criterion(9, "representable smallness", "representable", 10)


SUITE_NAMES = ["yoneda", "coend", "counterexample", "completeness", "restriction", "continuity",
               "convolution", "dm", "representable"]


def test_10_determinism():
    differing = []
    for name in SUITE_NAMES:
        first, _ = run(name)
        again = replay_suite(name, SEED, DEFAULT_BOUNDS)
        if first.payload() != again.payload():
            differing.append(name)
    assert record(10, "determinism", not differing, f"{len(SUITE_NAMES)} suites re-run, differing: {differing or 'none'}")


@pytest.mark.parametrize("seed", [7])
def test_dm_suite_other_seed(seed):
    report, _ = run("dm", seed)
    assert report.ok, report.to_json()
