import numpy as np
import pytest

from setpmatch.setstring import Alphabet, SetString, parse_setstring, read_setstrings

S1_DOC = "-\nb\n-\n-\na\n-\n-\na b\n-\n-\n-\n-\na\n"
S2_DOC = "-\nc\n-\n-\nd\n-\n-\nc d\n-\n-\n-\n-\nc\n"


@pytest.fixture
def paper_pair():
    _, (s1, s2) = read_setstrings([S1_DOC, S2_DOC])
    return s1, s2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def ss(*sets):
    """Build a set-string from iterables of small integer ids."""
    return SetString.from_sets(sets)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
