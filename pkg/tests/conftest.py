import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from raagsep.graph_product import GraphProduct
from raagsep.graphs import SimpleGraph

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"
NAMES = "abcdefgh"


@st.composite
def graphs(draw, max_vertices=6, min_vertices=0):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = list(NAMES[:n])
    pairs = [(u, w) for i, u in enumerate(vs) for w in vs[i + 1:]]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph(vs, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graph_products(draw, max_vertices=5, max_rank=2):
    g = draw(graphs(max_vertices, min_vertices=1))
    ranks = {v: draw(st.integers(1, max_rank)) for v in g.vertices}
    return GraphProduct(g, ranks)


@st.composite
def letters_over(draw, gp, max_length=12, max_exp=2):
    n = draw(st.integers(0, max_length))
    toks = st.sampled_from(gp.tokens)
    exps = st.integers(-max_exp, max_exp).filter(bool)
    return tuple((draw(toks), draw(exps)) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(20261014)


@pytest.fixture
def f2():
    return GraphProduct(SimpleGraph("ab"))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
