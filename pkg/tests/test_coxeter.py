import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from raagsep.coxeter import CoxeterRep, double_graph, embed_raag_word, tits_matrix
from raagsep.graph_product import GraphProduct
from raagsep.graphs import SimpleGraph, clique_expand
from raagsep.words import parse_word

from conftest import graph_products, graphs, letters_over
from oracles import matrix_product


def test_double_single_vertex():
    assert double_graph(SimpleGraph("a")) == SimpleGraph(["a~0", "a~1"])


def test_double_edge():
    d = double_graph(SimpleGraph("ab", [("a", "b")]))
    assert len(d.edges) == 4
    for i in (0, 1):
        for j in (0, 1):
            assert d.adjacent(f"a~{i}", f"b~{j}")
    assert not d.adjacent("a~0", "a~1") and not d.adjacent("b~0", "b~1")


@given(graphs(max_vertices=7))
def test_double_edge_count(g):
    d = double_graph(g)
    assert len(d) == 2 * len(g)
    assert len(d.edges) == 4 * len(g.edges)


def test_tits_matrix_examples():
    adj = SimpleGraph("st", [("s", "t")])
    assert (tits_matrix(adj, "s") == np.diag([-1, 1])).all()
    assert (tits_matrix(SimpleGraph("st"), "s") == np.array([[-1, 2], [0, 1]])).all()
    with pytest.raises(KeyError):
        tits_matrix(adj, "u")


@given(graphs(max_vertices=6, min_vertices=1))
def test_involutions_and_commutation(g):
    d = double_graph(g)
    n = len(d)
    mats = {s: tits_matrix(d, s) for s in d.vertices}
    for s, m in mats.items():
        assert set(np.unique(m)) <= {-1, 0, 1, 2}
        assert (m @ m == np.eye(n, dtype=np.int64)).all()
    for s, t in d.edge_list():
        assert (mats[s] @ mats[t] == mats[t] @ mats[s]).all()


def test_embedding_examples():
    gp = GraphProduct(SimpleGraph("ab"))
    assert embed_raag_word(gp.from_letters(parse_word("a")), gp) == ["a~0", "a~1"]
    assert embed_raag_word(gp.from_letters(parse_word("a^-1")), gp) == ["a~1", "a~0"]
    assert embed_raag_word((), gp) == []
    with pytest.raises(ValueError):
        embed_raag_word((), GraphProduct(SimpleGraph("a"), {"a": 2}))


@given(graph_products(max_vertices=4, max_rank=1), st.data())
def test_embedding_length(gp, data):
    letters = data.draw(letters_over(gp))
    word = gp.from_letters(letters)
    assert len(embed_raag_word(word, gp)) == 2 * sum(abs(e) for _, e in letters)


def test_rep_basics():
    gp = GraphProduct(SimpleGraph("ab"))
    rep = CoxeterRep(gp)
    eye = np.eye(rep.dimension, dtype=object)
    assert (rep.rep(()) == eye).all()
    a, a_inv = gp.from_letters(parse_word("a")), gp.from_letters(parse_word("a^-1"))
    assert (rep.rep(a).dot(rep.rep(a_inv)) == eye).all()
    assert not rep.is_identity(a)


@given(graph_products(max_vertices=3, max_rank=2), st.data())
def test_rep_is_multiplicative_and_matches_plain_products(gp, data):
    rep = CoxeterRep(gp)
    w1 = gp.from_letters(data.draw(letters_over(gp, 5)))
    w2 = gp.from_letters(data.draw(letters_over(gp, 5)))
    assert (rep.rep(w1 + w2) == rep.rep(w1).dot(rep.rep(w2))).all()
    plain = matrix_product([rep.generator_matrices[s] for s in rep.coxeter_word(w1)], rep.dimension)
    assert rep.rep(w1).tolist() == plain
    for n in (2, 5, 7):
        assert (rep.rep_mod(w1, n) == np.array(plain, dtype=object) % n).all()


@given(graph_products(max_vertices=4, max_rank=2), st.data())
def test_faithful(gp, data):
    word = gp.from_letters(data.draw(letters_over(gp)))
    assert CoxeterRep(gp).is_identity(word) == gp.is_trivial(word)


def test_higher_rank_uses_clique_expansion():
    gp = GraphProduct(SimpleGraph("ab"), {"a": 2})
    rep = CoxeterRep(gp)
    assert rep.raag.graph == clique_expand(gp.graph, gp.ranks)
    assert rep.dimension == 6
    x = gp.from_letters(parse_word("a.1 a.2 a.1^-1 a.2^-1"))
    assert rep.is_identity(x)
