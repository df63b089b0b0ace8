from __future__ import annotations

import pytest
from hypothesis import strategies as st

from dkp.model import DkpInstance

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def t2() -> DkpInstance:
    return DkpInstance.from_groups([((10, 20, 30), (5, 8, 10)),
                                    ((7, 9, 16), (4, 6, 9))], 12)


@st.composite
def valid_groups(draw, max_weight: int = 60, max_profit: int = 80):
    a0 = draw(st.integers(2, max_weight - 1))
    a1 = draw(st.integers(a0 + 1, max_weight))
    a2 = draw(st.integers(a1 + 1, a0 + a1 - 1))
    c0 = draw(st.integers(1, max_profit - 1))
    c1 = draw(st.integers(c0 + 1, max_profit))
    return (c0, c1, c0 + c1), (a0, a1, a2)


@st.composite
def instances(draw, min_groups: int = 0, max_groups: int = 6):
    groups = draw(st.lists(valid_groups(), min_size=min_groups, max_size=max_groups))
    total = sum(a[2] for _, a in groups)
    b = draw(st.integers(0, total + 10))
    return DkpInstance.from_groups(groups, b)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
