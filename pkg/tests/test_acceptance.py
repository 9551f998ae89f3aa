"""One line per acceptance criterion; run with ``pytest -s`` to see them."""
import pytest

from raylanding import acceptance

CRITERIA = range(1, 12)


@pytest.fixture(scope="module")
def suite():
    return acceptance.Suite()


@pytest.mark.parametrize("n", CRITERIA)
def test_criterion(suite, n, capsys):
    (result,) = suite.evaluate([n])
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.details
