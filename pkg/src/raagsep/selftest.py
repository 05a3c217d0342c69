"""Seeded agreement corpora run by ``raagsep selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coxeter import CoxeterRep
from .graph_product import GraphProduct
from .graphs import SimpleGraph, perfect_elimination_ordering
from .sampling import gp_relators, mixed_letters, random_gp
from .tower import Centraliser, ExtensionLayer, Standard, Tower, TowerSpec
from .words import Letter


@dataclass
class CorpusResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} {'pass' if self.ok else 'FAIL'}"


def faithfulness(seed: int = 0, count: int = 1000) -> CorpusResult:
    """Normal form trivial iff the Coxeter-linearized matrix is the identity."""
    rng = random.Random(seed)
    passed = 0
    for _ in range(count):
        gp = random_gp(rng, 4, 1)
        word = gp.from_letters(mixed_letters(rng, gp.tokens, gp_relators(gp), rng.randint(0, 12)))
        passed += (not gp.normalize(word)) == CoxeterRep(gp).is_identity(word)
    return CorpusResult("faithfulness (normal form vs linearization)", passed, count)


def star_extension(gp: GraphProduct, v: str, name: str = "t") -> tuple[Tower, GraphProduct]:
    """Tower adjoining ``name`` to ``C(v)`` and the RAAG obtained by joining ``name`` to star(v)."""
    tower = Tower(TowerSpec(gp, (ExtensionLayer(1, Centraliser((Letter(v, 1),)), 1, (name,)),)))
    g = gp.graph
    star = {v} | set(g.neighbours(v))
    raag = GraphProduct(
        SimpleGraph(g.vertices + (name,), g.edge_list() + [(w, name) for w in g.sorted_vertices(star)])
    )
    return tower, raag


def peo_chain(gp: GraphProduct) -> Tower:
    """Rebuild a chordal graph product as a chain of standard extensions.

    Along a perfect elimination ordering ``v1, v2, ...`` the base is the vertex
    group of ``v1`` and layer ``i`` adjoins the vertex group of ``v_(i+1)``,
    commuting with the (clique of) earlier neighbours.  Stable letters reuse
    the vertex's own token names, so words of ``gp`` are words of the tower.
    """
    g = gp.graph
    order = perfect_elimination_ordering(g)
    if order is None:
        raise ValueError("graph is not chordal")
    first = order[0]
    base = GraphProduct(SimpleGraph([first]), {first: gp.ranks[first]})

    def tokens(v: str) -> tuple[str, ...]:
        r = gp.ranks[v]
        return (v,) if r == 1 else tuple(f"{v}.{j}" for j in range(1, r + 1))

    layers = []
    for i, v in enumerate(order[1:], start=1):
        gens: set[str] = set()
        for w in order[:i]:
            if g.adjacent(v, w):
                gens |= {w} if w == first else set(tokens(w))
        layers.append(ExtensionLayer(i, Standard(frozenset(gens)), gp.ranks[v], tokens(v)))
    return Tower(TowerSpec(base, tuple(layers)))


def tower_oracle(seed: int = 0, count: int = 1000, length: int = 20) -> CorpusResult:
    """Tower word problem against the RAAG it is isomorphic to (F2 extended along C(a))."""
    rng = random.Random(seed)
    tower, raag = star_extension(GraphProduct(SimpleGraph("ab")), "a")
    rels = gp_relators(raag)
    passed = 0
    for _ in range(count):
        w = mixed_letters(rng, raag.tokens, rels, rng.randint(0, length))
        passed += tower.word_problem(w) == raag.is_trivial(raag.from_letters(w))
    return CorpusResult("tower word problem vs RAAG oracle", passed, count)


def run_all(seed: int = 0, count: int = 1000) -> list[CorpusResult]:
    return [faithfulness(seed, count), tower_oracle(seed, count)]
