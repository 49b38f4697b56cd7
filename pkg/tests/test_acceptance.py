"""Acceptance gate: every headline property, one test per criterion.

Each test prints its pass/fail line (visible under pytest -s) and fails
if the criterion does not hold exactly.
"""

import pytest

from lietrees.suite import CRITERIA, format_result, run_criterion

SEED = 0


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1),
                         ids=[name for name, _ in CRITERIA])
def test_criterion(index):
    result = run_criterion(index, SEED)
    print(format_result(result))
    assert result.ok, format_result(result)
