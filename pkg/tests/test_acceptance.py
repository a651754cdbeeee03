"""Acceptance gate: every numbered criterion must pass at its stated
tolerance.  Each case prints its one-line PASS/FAIL record so the gate
status is readable straight off the pytest output."""

import pytest

from urstates import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys):
    res = acceptance.run([number])[0]
    with capsys.disabled():
        print(res.line())
    assert res.passed, res.detail
