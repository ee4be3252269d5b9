"""Exit criteria: one line per criterion, at the stated tolerances and time budgets."""

import pytest

from collapsing_tasep import checks


@pytest.mark.parametrize("check", checks.ALL_CHECKS, ids=lambda c: c.__name__)
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line(), result.detail if not result.passed else "")
    assert result.passed, result.detail
