"""Integral linearization of graph products through right-angled Coxeter groups.

A RAAG on Γ embeds in the right-angled Coxeter group on the doubled graph
(each ``v`` becomes two non-commuting involutions ``v~0``, ``v~1`` and
``v -> v~0 v~1``), and the Tits reflection representation of a right-angled
Coxeter group is faithful with entries in {-1, 0, 1, 2}.  Graph products of
higher-rank free abelian groups are first clique-expanded to a RAAG.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .graph_product import GraphProduct, GPWord, Syllable
from .graphs import SimpleGraph, clique_expand

__all__ = ["double_graph", "double_name", "tits_matrix", "CoxeterRep", "embed_raag_word"]


def double_name(v: str, i: int) -> str:
    return f"{v}~{i}"


def double_graph(g: SimpleGraph) -> SimpleGraph:
    verts = [double_name(v, i) for v in g.vertices for i in (0, 1)]
    edges = [
        (double_name(u, i), double_name(w, j))
        for u, w in g.edge_list() for i in (0, 1) for j in (0, 1)
    ]
    return SimpleGraph(verts, edges)


def tits_matrix(doubled: SimpleGraph, s: str) -> np.ndarray:
    """Reflection in ``e_s``; column ``t`` is the image of ``e_t``."""
    if s not in doubled:
        raise KeyError(f"unknown vertex {s!r}")
    n = len(doubled)
    i = doubled.position(s)
    m = np.eye(n, dtype=np.int64)
    m[i, i] = -1
    for t in doubled.vertices:
        if t != s and not doubled.adjacent(s, t):
            m[i, doubled.position(t)] = 2
    return m


def embed_raag_word(word: Iterable[Syllable], gp: GraphProduct) -> list[str]:
    """Image of a rank-1 word in the doubled Coxeter group, as a list of involutions."""
    if not gp.is_raag:
        raise ValueError("embedding needs a RAAG; clique-expand higher ranks first")
    out = []
    for s in gp.check(word):
        e = s.exponent[0]
        pair = (double_name(s.vertex, 0), double_name(s.vertex, 1))
        if e < 0:
            pair = pair[::-1]
        out.extend(pair * abs(e))
    return out


class CoxeterRep:
    """Faithful integer matrix representation of a graph product."""

    def __init__(self, gp: GraphProduct):
        self.gp = gp
        if gp.is_raag:
            self.raag = gp
        else:
            self.raag = GraphProduct(clique_expand(gp.graph, gp.ranks))
        self.doubled_graph = double_graph(self.raag.graph)
        self.dimension = len(self.doubled_graph)
        self.generator_matrices = {
            s: tits_matrix(self.doubled_graph, s) for s in self.doubled_graph.vertices
        }

    def to_raag_word(self, word: Iterable[Syllable]) -> GPWord:
        if self.raag is self.gp:
            return self.gp.check(word)
        return self.raag.from_letters(self.gp.to_letters(self.gp.check(word)))

    def coxeter_word(self, word: Iterable[Syllable]) -> list[str]:
        return embed_raag_word(self.to_raag_word(word), self.raag)

    def rep(self, word: Iterable[Syllable]) -> np.ndarray:
        """Exact image as an object-dtype integer matrix."""
        m = np.eye(self.dimension, dtype=object)
        for s in self.coxeter_word(word):
            m = m.dot(self.generator_matrices[s].astype(object))
        return m

    def rep_mod(self, word: Iterable[Syllable], modulus: int) -> np.ndarray:
        m = np.eye(self.dimension, dtype=np.int64) % modulus
        for s in self.coxeter_word(word):
            m = (m @ self.generator_matrices[s]) % modulus
        return m

    def is_identity(self, word: Iterable[Syllable]) -> bool:
        return bool((self.rep(word) == np.eye(self.dimension, dtype=object)).all())
