"""Shared diagrams for the whole suite.

Three standing systems exercise every code path: the Pascal diagram (two
variables, degree one), a degree-four polynomial with mixed coefficients,
and a three-variable all-ones quadratic.
"""

import sys

import pytest

from polyadic import Diagram, Ordering, parse_polynomial

PASCAL_TEXT = "x1 + x2"
QUARTIC_TEXT = "x1^4 + 2 x1^3 x2 + x1^2 x2^2 + 3 x1 x2^3 + x2^4"
Q3_TEXT = "x1^2 + x1 x2 + x1 x3 + x2^2 + x2 x3 + x3^2"


@pytest.fixture(scope="session")
def pascal():
    return Diagram(parse_polynomial(PASCAL_TEXT))


@pytest.fixture(scope="session")
def quartic():
    return Diagram(parse_polynomial(QUARTIC_TEXT))


@pytest.fixture(scope="session")
def q3():
    return Diagram(parse_polynomial(Q3_TEXT))


@pytest.fixture(scope="session")
def all_diagrams(pascal, quartic, q3):
    return {"pascal": pascal, "quartic": quartic, "q3": q3}


@pytest.fixture(scope="session")
def pascal_lex(pascal):
    # the left-right ordering: sources ascending lexicographic, then copy
    return Ordering(pascal)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LOG", ()) if mod else ()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
