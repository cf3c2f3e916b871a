"""Acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary.  Time
limits and tolerances are pinned here so that a change to the library
defaults cannot loosen them silently.
"""
import pytest

from linlog import acceptance

pytestmark = pytest.mark.acceptance

PINNED_LIMITS = {1: 30, 2: 5, 3: 5, 4: 60, 5: 120, 6: 60, 7: 30, 8: 120, 9: 120, 10: 10, 11: 10, 12: 30}
LINES: list[str] = []


def test_limits_pinned():
    assert acceptance.TIME_LIMITS == PINNED_LIMITS
    assert acceptance.REL_TOL == 1e-9


@pytest.mark.parametrize("number", sorted(PINNED_LIMITS))
def test_criterion(number):
    res = acceptance.run(number)
    LINES.append(res.line())
    for w in res.warnings:
        LINES.append(f"     note: {w}")
    assert res.limit == PINNED_LIMITS[number]
    assert res.ok, res.detail
    assert res.in_time, f"{res.elapsed:.1f}s > {res.limit}s"


def test_fault_injection_is_caught():
    res = acceptance.run(1, tamper_delta=True, quick=True)
    assert not res.passed
    assert res.detail["failures"][0]["witness"].startswith("integrality routes disagree")


def test_radius_shape_tolerances():
    # e* within a factor 4 of e*sqrt(hp); U0* log(hp)/hp within a bracket of width 8
    for row in acceptance.optimal_radius_table(acceptance.OPTIMIZER_WINDOW):
        assert 0.25 <= row["e_ratio"] <= 4
        assert 1 <= row["shape_ratio"] <= 8
