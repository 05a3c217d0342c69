import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from raagsep.graphs import (
    GraphFormatError,
    SimpleGraph,
    chordless_cycle,
    clique_expand,
    complete_graph,
    cycle_graph,
    format_graph,
    full_subgraph,
    is_chordal,
    is_clique,
    is_perfect_elimination_ordering,
    lex_bfs,
    parse_graph,
    path_graph,
    perfect_elimination_ordering,
)
from raagsep.sampling import random_chordal_graph

from conftest import graphs
from oracles import (
    earlier_neighbours_form_cliques,
    has_long_induced_cycle,
    is_induced_cycle,
    orderable_by_brute_force,
)

C4 = cycle_graph("abcd")
P4 = path_graph("abcd")
TRIANGLE = complete_graph("abc")


class TestChordality:
    def test_four_cycle_is_not_chordal(self):
        assert not is_chordal(C4)
        assert perfect_elimination_ordering(C4) is None

    def test_four_vertex_path_is_chordal(self):
        assert is_chordal(P4)

    def test_four_cycle_with_chord(self):
        g = SimpleGraph("abcd", C4.edge_list() + [("a", "c")])
        assert orderable_by_brute_force(g)
        assert is_chordal(g)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_long_cycles(self, n):
        g = cycle_graph("abcdefgh"[:n])
        assert not is_chordal(g)
        assert is_induced_cycle(g, chordless_cycle(g))

    def test_empty_graph(self):
        g = SimpleGraph([])
        assert is_chordal(g)
        assert perfect_elimination_ordering(g) == ()

    def test_cycle_certificate_from_cli_example(self):
        assert chordless_cycle(C4) == ("a", "b", "c", "d")


class TestOrdering:
    def test_single_vertex(self):
        assert perfect_elimination_ordering(SimpleGraph("a")) == ("a",)

    def test_every_ordering_of_a_triangle(self):
        from itertools import permutations

        assert perfect_elimination_ordering(TRIANGLE) is not None
        for order in permutations("abc"):
            assert is_perfect_elimination_ordering(TRIANGLE, order)

    def test_path_ordering_is_valid(self):
        order = perfect_elimination_ordering(P4)
        assert earlier_neighbours_form_cliques(P4, order)

    def test_deterministic(self):
        g = random_chordal_graph(random.Random(3), 7)
        assert perfect_elimination_ordering(g) == perfect_elimination_ordering(g)

    def test_verifier_rejects_bad_orderings(self):
        # the middle of a path placed last sees two non-adjacent earlier neighbours
        assert not is_perfect_elimination_ordering(path_graph("abc"), ("a", "c", "b"))
        assert not is_perfect_elimination_ordering(P4, ("a", "b", "c"))

    def test_lex_bfs_is_a_permutation(self):
        g = random_chordal_graph(random.Random(1), 6)
        assert sorted(lex_bfs(g)) == sorted(g.vertices)


class TestSubgraphs:
    def test_full_subgraph_examples(self):
        assert full_subgraph(P4, {"a", "d"}) == SimpleGraph("ad")
        assert full_subgraph(P4, P4.vertices) == P4
        assert full_subgraph(TRIANGLE, {"a", "b"}) == SimpleGraph("ab", [("a", "b")])

    def test_full_subgraph_keeps_order(self):
        assert full_subgraph(P4, ["d", "b"]).vertices == ("b", "d")

    def test_full_subgraph_unknown_vertex(self):
        with pytest.raises(KeyError):
            full_subgraph(P4, {"z"})

    def test_is_clique_examples(self):
        assert is_clique(P4, set())
        assert is_clique(P4, {"a", "b"})
        assert not is_clique(P4, {"a", "c"})
        with pytest.raises(KeyError):
            is_clique(P4, {"q"})

    def test_clique_expand_single_vertex(self):
        g = clique_expand(SimpleGraph("a"), {"a": 3})
        assert g == complete_graph(["a.1", "a.2", "a.3"])

    def test_clique_expand_identity(self):
        edge = SimpleGraph("ab", [("a", "b")])
        assert clique_expand(edge, {"a": 1, "b": 1}) == edge

    def test_clique_expand_path(self):
        g = clique_expand(path_graph("abc"), {"a": 2, "b": 1, "c": 1})
        assert len(g) == 4
        assert is_clique(g, {"a.1", "a.2", "b"})
        assert g.adjacent("b", "c") and not g.adjacent("a.1", "c")
        assert orderable_by_brute_force(g) and is_chordal(g)

    def test_clique_expand_missing_rank(self):
        with pytest.raises(KeyError):
            clique_expand(P4, {"a": 1})


class TestProperties:
    @given(graphs(max_vertices=8))
    def test_recognizer_matches_brute_force(self, g):
        chordal = is_chordal(g)
        assert chordal == orderable_by_brute_force(g)
        assert chordal == (not has_long_induced_cycle(g))
        assert chordal == (perfect_elimination_ordering(g) is not None)

    @given(graphs(max_vertices=8))
    def test_certificates_check_independently(self, g):
        order = perfect_elimination_ordering(g)
        if order is None:
            assert is_induced_cycle(g, chordless_cycle(g))
        else:
            assert earlier_neighbours_form_cliques(g, order)
            assert chordless_cycle(g) is None

    @given(st.integers(0, 2**32), st.integers(1, 8), st.data())
    def test_clique_expand_preserves_chordality(self, seed, n, data):
        g = random_chordal_graph(random.Random(seed), n)
        ranks = {v: data.draw(st.integers(1, 3)) for v in g.vertices}
        expanded = clique_expand(g, ranks)
        assert len(expanded) == sum(ranks.values())
        assert is_chordal(expanded)

    @given(st.integers(0, 2**32), st.integers(1, 8), st.data())
    def test_induced_subgraphs_stay_chordal(self, seed, n, data):
        g = random_chordal_graph(random.Random(seed), n)
        s = data.draw(st.sets(st.sampled_from(g.vertices)))
        assert is_chordal(full_subgraph(g, s))

    @given(graphs(max_vertices=7))
    def test_text_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g


class TestParser:
    def test_parse_with_comments(self):
        g = parse_graph("# c4\nvertex a\nvertex b  # second\n\nedge a b\n")
        assert g == SimpleGraph("ab", [("a", "b")])

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("vertex a\nvertex a\n", 2, "duplicate vertex"),
            ("vertex a\nedge a b\n", 2, "unknown vertex"),
            ("vertex a\nedge a a\n", 2, "loop"),
            ("vertex a\nvertex b\nedge a b\nedge b a\n", 4, "repeated edge"),
            ("vertex a\nvertex b\nedge a b\nvertex c\n", 4, "after edges"),
            ("vertex 1a\n", 1, "invalid vertex name"),
            ("vertex a b\n", 1, "expected"),
            ("node a\n", 1, "unknown directive"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, fragment):
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text)
        assert info.value.line == line
        assert fragment in str(info.value)
        assert str(info.value).startswith(f"line {line}:")

    def test_graph_is_immutable(self):
        with pytest.raises(AttributeError):
            P4.vertices = ()

    def test_constructor_rejects_loops_and_strays(self):
        with pytest.raises(ValueError):
            SimpleGraph("ab", [("a", "a")])
        with pytest.raises(ValueError):
            SimpleGraph("ab", [("a", "c")])
        with pytest.raises(ValueError):
            SimpleGraph(["a", "a"])
