import random

from hypothesis import strategies as st

from evk import hypergraph as hg


@st.composite
def small_hypergraphs(draw, max_space=10**5):
    """Connected uniform hypergraphs with m^n small enough for brute force."""
    m = draw(st.sampled_from([3, 4, 5]))
    n_max = max(k for k in range(m, 12) if m**k <= max_space)
    n = draw(st.integers(m, n_max))
    n_edges = draw(st.integers(1, 2 * n))
    seed = draw(st.integers(0, 2**32 - 1))
    return hg.random_connected(n, m, n_edges, random.Random(seed))


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, lo=-20, hi=20):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
