"""One pass/fail line per acceptance criterion; run directly or under pytest."""

import sys

import pytest

from legdga import corpus
from legdga.acceptance import CRITERIA, EXPECTED, GF5, _elimination_matches, run_all, run_criterion
from legdga.laurent import parse_laurent

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

KNOWN_FAILURES = {
    6: "the second elimination fixture's listed answer g - lambda mu^-1 f differs from g by the "
       "non-unit factor 1 + lambda^2 mu^-2 once d^2 = 0 forces f = -lambda mu^-1 g",
}


def _params():
    for n, title, _ in CRITERIA:
        marks = []
        if n in KNOWN_FAILURES:
            marks.append(pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[n]))
        yield pytest.param(n, id=f"criterion_{n}", marks=marks)


@pytest.mark.parametrize("number", list(_params()))
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    ACCEPTANCE_LINES.append(result.line())
    assert result.seconds < 5.0, f"criterion {number} took {result.seconds:.2f}s"
    assert result.passed, result.detail


def test_criterion_6_passing_parts():
    for name in corpus.TORI:
        dga = corpus.torus_dga(name, GF5)
        good, total = _elimination_matches(dga, parse_laurent(EXPECTED[name], GF5, dga.ring.variables))
        assert total == 3 and good == total
    good, total = _elimination_matches(corpus.elimination_fixture(1, GF5), corpus.fixture_expectation(1, GF5))
    assert total > 0 and good == total


def test_criterion_6_fixture_two_returns_g():
    dga = corpus.elimination_fixture(2, GF5)
    g = corpus.fixture_expectation(1, GF5)
    good, total = _elimination_matches(dga, g)
    assert total > 0 and good == total


if __name__ == "__main__":
    results = run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
