"""Runs the twelve numbered acceptance criteria and prints one line each."""

import pytest

from g2su3 import regression


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number, capsys):
    result = regression.CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.failures
