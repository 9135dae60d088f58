import random

import pytest
from hypothesis import strategies as st

from ordmatch.core import Matching


@st.composite
def matchings(draw, r=st.integers(2, 4), n=st.integers(1, 8)):
    """Uniform-ish random matching built from a drawn permutation."""
    rr, nn = draw(r), draw(n)
    perm = draw(st.permutations(range(1, rr * nn + 1)))
    return Matching.from_edges(rr, [perm[i * rr : (i + 1) * rr] for i in range(nn)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
