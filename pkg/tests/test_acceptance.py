"""Acceptance suite: one test per numbered criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line with the measured
value, the target and the wall-clock time, then asserts the outcome. The
lines are printed even without ``-s`` so that a plain ``pytest -v`` log
carries the full report.
"""

import pytest

from isotonic_wigner.validation import CRITERIA

# wall-clock budgets (seconds) stated alongside two of the criteria
RUNTIME_LIMITS = {1: 60.0, 2: 120.0}


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1),
                         ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number, capsys):
    result = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
    limit = RUNTIME_LIMITS.get(number)
    if limit is not None:
        assert result.seconds <= limit, f"took {result.seconds:.1f}s (limit {limit:.0f}s)"
