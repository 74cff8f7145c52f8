"""Acceptance battery: one line per criterion, collected into the terminal summary.

Every comparison is exact (integers or exact characters). The only tolerances
are the wall-clock budgets pinned below.
"""
import pytest

from modbgg import verify

TIME_BUDGET = {1: 1.0, 2: 30.0, 9: 10.0}
SCENARIO_BUDGET = 1.0
LINES = {}


def _run(number):
    res = verify.CHECKS[number - 1]()
    budget = TIME_BUDGET.get(number)
    over = budget is not None and res.seconds >= budget
    line = res.line() + (f" [over {budget:.0f}s budget]" if over else "")
    if over:
        line = line.replace("[PASS]", "[FAIL]", 1)
    LINES[number] = line
    return res, over


@pytest.mark.parametrize("number", range(1, 11), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    res, over = _run(number)
    if number == 10:
        assert all(t < SCENARIO_BUDGET for t in res.data["timings"].values())
    assert not over, LINES[number]
    assert res.passed, LINES[number]
