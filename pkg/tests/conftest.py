import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from bvtoeplitz.diagram import new_diagram
from bvtoeplitz.ordering import order_left_right
from bvtoeplitz.realization import odometer_diagram

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture
def d2sym():
    return order_left_right(new_diagram([[[1], [1]]], [[[2, 1], [1, 2]]]))


@pytest.fixture
def odo23():
    return odometer_diagram([], [2, 3])


@st.composite
def ers_matrix(draw, rows, cols, max_sum=4):
    """A ``rows x cols`` matrix with equal row sums and no zero column."""
    r = draw(st.integers(max(1, -(-cols // rows)), max_sum + cols))
    while True:
        m = []
        for _ in range(rows):
            cuts = sorted(draw(st.lists(st.integers(0, r), min_size=cols - 1, max_size=cols - 1)))
            bounds = [0] + cuts + [r]
            m.append([bounds[i + 1] - bounds[i] for i in range(cols)])
        if all(any(row[j] for row in m) for j in range(cols)):
            return m
        # force coverage of empty columns by moving one unit
        for j in range(cols):
            if not any(row[j] for row in m):
                i = draw(st.integers(0, rows - 1))
                k = max(range(cols), key=lambda c: m[i][c])
                m[i][k] -= 1
                m[i][j] += 1
        if all(any(row[j] for row in m) for j in range(cols)) and all(sum(row) == r for row in m):
            return m


@st.composite
def ers_diagram(draw, max_vertices=3, max_prefix=3, max_period=2):
    sizes = draw(st.lists(st.integers(1, max_vertices), min_size=1, max_size=max_prefix))
    period = draw(st.integers(1, max_period))
    tail_sizes = draw(st.lists(st.integers(1, max_vertices), min_size=period, max_size=period))
    levels = [[[1]] * sizes[0]]
    prev = sizes[0]
    for s in sizes[1:]:
        levels.append(draw(ers_matrix(s, prev)))
        prev = s
    tail = []
    # the tail is cyclic: its first column count equals the last prefix size and its
    # last row count must equal that same size again
    chain = tail_sizes[1:] + [prev] if period > 1 else [prev]
    cols = prev
    for s in chain:
        tail.append(draw(ers_matrix(s, cols)))
        cols = s
    return new_diagram(levels, tail)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
