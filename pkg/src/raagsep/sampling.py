"""Seeded random graphs, words and towers for self-tests."""

from __future__ import annotations

import random
import string
from collections.abc import Sequence

from .graph_product import GraphProduct, GPWord, Syllable
from .graphs import SimpleGraph
from .tower import Centraliser, ExtensionLayer, Standard, Tower, TowerError, TowerSpec
from .words import Letter, Word, inverse

NAMES = string.ascii_lowercase


def random_graph(rng: random.Random, n: int, p: float = 0.5, names: str = NAMES) -> SimpleGraph:
    vs = list(names[:n])
    edges = [(u, w) for i, u in enumerate(vs) for w in vs[i + 1:] if rng.random() < p]
    return SimpleGraph(vs, edges)


def random_chordal_graph(rng: random.Random, n: int, names: str = NAMES) -> SimpleGraph:
    """Grow a chordal graph by attaching each new vertex to a clique, then shuffle the order."""
    vs = list(names[:n])
    edges: set[frozenset[str]] = set()
    cliques: list[list[str]] = [[]]
    for i, v in enumerate(vs):
        if i:
            base = rng.choice(cliques)
            attach = [w for w in base if rng.random() < 0.7]
            edges.update(frozenset((v, w)) for w in attach)
            cliques.append(attach + [v])
        else:
            cliques.append([v])
    order = vs[:]
    rng.shuffle(order)
    return SimpleGraph(order, (tuple(e) for e in edges))


def random_gp(rng: random.Random, max_vertices: int = 4, max_rank: int = 1, p: float = 0.5) -> GraphProduct:
    g = random_graph(rng, rng.randint(1, max_vertices), p)
    return GraphProduct(g, {v: rng.randint(1, max_rank) for v in g.vertices})


def random_gp_word(rng: random.Random, gp: GraphProduct, length: int, max_exp: int = 2) -> GPWord:
    out = []
    vs = gp.graph.vertices
    for _ in range(length):
        v = rng.choice(vs)
        while True:
            e = tuple(rng.randint(-max_exp, max_exp) for _ in range(gp.ranks[v]))
            if any(e):
                break
        out.append(Syllable(v, e))
    return tuple(out)


def random_letters(rng: random.Random, names: Sequence[str], length: int, max_exp: int = 1) -> Word:
    out = []
    for _ in range(length):
        e = 0
        while e == 0:
            e = rng.randint(-max_exp, max_exp)
        out.append(Letter(rng.choice(names), e))
    return tuple(out)


def random_trivial_letters(
    rng: random.Random, names: Sequence[str], relators: Sequence[Word], length: int
) -> Word:
    """A word equal to 1: random insertions of ``x x^-1`` and conjugated relators."""
    word: list[Letter] = []
    while len(word) < length:
        pos = rng.randint(0, len(word))
        if relators and rng.random() < 0.5:
            r = rng.choice(relators)
            k = rng.randrange(len(r))
            piece = r[k:] + r[:k]
            if rng.random() < 0.5:
                piece = inverse(piece)
        else:
            x = Letter(rng.choice(names), rng.choice((-1, 1)))
            piece = (x, Letter(x.name, -x.exp))
        word[pos:pos] = piece
    return tuple(word)


def gp_relators(gp: GraphProduct) -> list[Word]:
    return Tower(TowerSpec(gp)).relators()


def mixed_letters(
    rng: random.Random, names: Sequence[str], relators: Sequence[Word], length: int
) -> Word:
    """Half trivial words, a quarter one-letter perturbations of them, a quarter random."""
    r = rng.random()
    if r < 0.5:
        return random_trivial_letters(rng, names, relators, length)
    if r < 0.75:
        w = list(random_trivial_letters(rng, names, relators, max(length - 1, 1)))
        w.insert(rng.randint(0, len(w)), Letter(rng.choice(names), rng.choice((-1, 1))))
        return tuple(w)
    return random_letters(rng, names, rng.randint(0, length))


def random_tower(
    rng: random.Random,
    height: int,
    max_vertices: int = 3,
    max_rank: int = 2,
    max_layer_rank: int = 2,
    u_length: int = 3,
) -> Tower:
    """A random tower of centraliser layers (and sometimes a standard first layer)."""
    gp = random_gp(rng, max_vertices, max_rank)
    tower = Tower(TowerSpec(gp))
    counter = 0
    while len(tower.layers) < height:
        level = len(tower.layers) + 1
        rank = rng.randint(1, max_layer_rank)
        names = tuple(f"t{level}_{k}" if rank > 1 else f"t{level}" for k in range(1, rank + 1))
        if level == 1 and rng.random() < 0.25:
            k = rng.randint(1, len(gp.graph.vertices))
            sub = Standard(frozenset(rng.sample(list(gp.graph.vertices), k)))
        else:
            u = random_letters(rng, tower.generators, rng.randint(1, u_length))
            sub = Centraliser(u)
        try:
            tower = Tower(TowerSpec(gp, tower.layers + (ExtensionLayer(level, sub, rank, names),)))
        except TowerError:
            counter += 1
            if counter > 100:
                raise
    return tower
