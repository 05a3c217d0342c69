"""Graph products of finite-rank free abelian groups.

Each vertex ``v`` of the defining graph carries ``Z^rank(v)``; adjacent
vertex groups commute.  With every rank equal to 1 this is the right-angled
Artin group of the graph.  A rank ``r`` vertex models the truncation of a
``Z[t]`` vertex group to the basis ``1, t, ..., t^(r-1)``.

Group elements are words of :class:`Syllable` values.  The normal form is
the reduced word (no two same-vertex syllables can be shuffled together)
that is lexicographically least, by vertex order, among all its shuffles.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .graphs import SimpleGraph, full_subgraph, is_clique
from .words import Letter, Word

__all__ = ["Syllable", "GPWord", "GraphProduct", "syllable_length"]


@dataclass(frozen=True)
class Syllable:
    vertex: str
    exponent: tuple[int, ...]

    def inverse(self) -> Syllable:
        return Syllable(self.vertex, tuple(-e for e in self.exponent))

    def __repr__(self):
        if len(self.exponent) == 1:
            return f"{self.vertex}^{self.exponent[0]}"
        return f"{self.vertex}^{self.exponent}"


GPWord = tuple[Syllable, ...]


def syllable_length(word: Sequence[Syllable]) -> int:
    return len(word)


def _inverse(word: Iterable[Syllable]) -> GPWord:
    return tuple(s.inverse() for s in reversed(tuple(word)))


class GraphProduct:
    """A graph product of free abelian vertex groups ``Z^rank(v)``."""

    def __init__(self, graph: SimpleGraph, ranks: Mapping[str, int] | None = None):
        ranks = dict(ranks or {})
        for v in ranks:
            if v not in graph:
                raise KeyError(f"rank given for unknown vertex {v!r}")
        self.graph = graph
        self.ranks = {v: ranks.get(v, 1) for v in graph.vertices}
        for v, r in self.ranks.items():
            if not isinstance(r, int) or r < 1:
                raise ValueError(f"rank of {v!r} must be a positive integer, got {r!r}")
        self._order = {v: i for i, v in enumerate(graph.vertices)}
        self._adj = {v: graph.neighbours(v) for v in graph.vertices}
        self._tokens: dict[str, tuple[str, int]] = {}
        for v in graph.vertices:
            if self.ranks[v] == 1:
                self._tokens[v] = (v, 0)
            else:
                for j in range(self.ranks[v]):
                    self._tokens[f"{v}.{j + 1}"] = (v, j)

    def __repr__(self):
        return f"GraphProduct({self.graph!r}, {self.ranks!r})"

    @property
    def is_raag(self) -> bool:
        return all(r == 1 for r in self.ranks.values())

    @property
    def tokens(self) -> tuple[str, ...]:
        """Generator names: ``v`` for rank-1 vertices, ``v.1 .. v.r`` otherwise."""
        return tuple(self._tokens)

    def vertex_of(self, token: str) -> str:
        return self._tokens[token][0]

    # -- conversions -----------------------------------------------------

    def syllable(self, vertex: str, *exponent: int) -> Syllable:
        s = Syllable(vertex, tuple(exponent))
        self._check_syllable(s)
        return s

    def word(self, *items) -> GPWord:
        """Build a word from ``(vertex, e)`` / ``(vertex, (e1, ..., er))`` pairs or Syllables."""
        out = []
        for item in items:
            if isinstance(item, Syllable):
                s = item
            else:
                v, e = item
                s = Syllable(v, (e,) if isinstance(e, int) else tuple(e))
            self._check_syllable(s)
            out.append(s)
        return tuple(out)

    def from_letters(self, letters: Iterable[Letter]) -> GPWord:
        out = []
        for name, exp in letters:
            if name not in self._tokens:
                raise KeyError(f"unknown generator {name!r}")
            if exp == 0:
                continue
            v, j = self._tokens[name]
            vec = [0] * self.ranks[v]
            vec[j] = exp
            out.append(Syllable(v, tuple(vec)))
        return tuple(out)

    def to_letters(self, word: Iterable[Syllable]) -> Word:
        out = []
        for s in word:
            if self.ranks[s.vertex] == 1:
                out.append(Letter(s.vertex, s.exponent[0]))
            else:
                out.extend(
                    Letter(f"{s.vertex}.{j + 1}", e) for j, e in enumerate(s.exponent) if e
                )
        return tuple(out)

    def _check_syllable(self, s: Syllable) -> None:
        if s.vertex not in self.ranks:
            raise KeyError(f"unknown vertex {s.vertex!r}")
        if len(s.exponent) != self.ranks[s.vertex]:
            raise ValueError(
                f"exponent of {s.vertex!r} has length {len(s.exponent)}, "
                f"rank is {self.ranks[s.vertex]}"
            )
        if not any(s.exponent):
            raise ValueError(f"zero exponent on {s.vertex!r}")

    def check(self, word: Iterable[Syllable]) -> GPWord:
        word = tuple(word)
        for s in word:
            self._check_syllable(s)
        return word

    # -- normal forms ----------------------------------------------------

    def _reduce(self, word: Iterable[Syllable]) -> list[Syllable]:
        out: list[Syllable] = []
        for s in word:
            v, adj = s.vertex, self._adj[s.vertex]
            j = len(out) - 1
            while j >= 0 and out[j].vertex != v and out[j].vertex in adj:
                j -= 1
            if j >= 0 and out[j].vertex == v:
                e = tuple(a + b for a, b in zip(out[j].exponent, s.exponent))
                if any(e):
                    out[j] = Syllable(v, e)
                else:
                    del out[j]
            else:
                out.append(s)
        return out

    def _lex_least(self, syls: list[Syllable]) -> GPWord:
        # Greedy: repeatedly take the smallest vertex among the syllables that
        # commute with everything still ahead of them.
        remaining = list(syls)
        out = []
        order, adj = self._order, self._adj
        while remaining:
            best = None
            for i, s in enumerate(remaining):
                if best is not None and order[s.vertex] >= order[remaining[best].vertex]:
                    continue
                a = adj[s.vertex]
                if all(r.vertex in a for r in remaining[:i]):
                    best = i
            out.append(remaining.pop(best))
        return tuple(out)

    def normalize(self, word: Iterable[Syllable]) -> GPWord:
        word = self.check(word)
        return self._lex_least(self._reduce(word))

    def is_trivial(self, word: Iterable[Syllable]) -> bool:
        return not self._reduce(self.check(word))

    def equal(self, w1: Iterable[Syllable], w2: Iterable[Syllable]) -> bool:
        return self.is_trivial(tuple(w1) + _inverse(w2))

    def multiply(self, *words: Iterable[Syllable]) -> GPWord:
        return self.normalize(s for w in words for s in w)

    def inverse(self, word: Iterable[Syllable]) -> GPWord:
        return _inverse(word)

    def power(self, word: Iterable[Syllable], k: int) -> GPWord:
        word = tuple(word)
        if k < 0:
            word, k = _inverse(word), -k
        return self.normalize(word * k)

    # -- structure -------------------------------------------------------

    @staticmethod
    def support(word: Iterable[Syllable]) -> frozenset[str]:
        return frozenset(s.vertex for s in word)

    def is_clique_supported(self, word: Iterable[Syllable]) -> bool:
        return is_clique(self.graph, self.support(word))

    def _front_available(self, word: Sequence[Syllable]) -> list[int]:
        return [
            i for i, s in enumerate(word)
            if all(r.vertex in self._adj[s.vertex] for r in word[:i])
        ]

    def _back_available(self, word: Sequence[Syllable]) -> list[int]:
        return [
            i for i, s in enumerate(word)
            if all(r.vertex in self._adj[s.vertex] for r in word[i + 1:])
        ]

    def cyclically_reduce(self, word: Iterable[Syllable]) -> tuple[GPWord, GPWord]:
        """Return ``(c, p)`` with ``word = c p c^-1`` and ``p`` cyclically reduced."""
        core = self.normalize(word)
        conj: list[Syllable] = []
        while True:
            back = self._back_available(core)
            match = None
            for i in self._front_available(core):
                v = core[i].vertex
                j = next((j for j in back if j != i and core[j].vertex == v), None)
                if j is not None:
                    match = i
                    break
            if match is None:
                return self.normalize(conj), core
            x = core[match]
            core = self.normalize((x.inverse(), *core, x))
            conj.append(x)

    def cyclic_member(self, h: Iterable[Syllable], g: Iterable[Syllable]) -> int | None:
        """Some ``k`` with ``g^k = h``, or None if ``h`` is not in ``<g>``."""
        h, g = self.normalize(h), self.normalize(g)
        if not g:
            return 0 if not h else None
        c, p = self.cyclically_reduce(g)
        h = self.normalize(_inverse(c) + h + c)
        if self.is_clique_supported(p):
            return self._abelian_ratio(h, p)
        bound = len(h) + len(p)
        if not h:
            return 0
        inv = _inverse(p)
        pos, neg = (), ()
        for k in range(1, bound + 1):
            pos = self.normalize(pos + p)
            if pos == h:
                return k
            neg = self.normalize(neg + inv)
            if neg == h:
                return -k
        return None

    def _abelian_ratio(self, h: GPWord, p: GPWord) -> int | None:
        # p has clique support, so both p and h (if in <p>) have one syllable
        # per vertex and live in the free abelian group on that clique.
        pv = {s.vertex: s.exponent for s in p}
        hv = {s.vertex: s.exponent for s in h}
        if not set(hv) <= set(pv):
            return None
        k = None
        for v, pe in pv.items():
            he = hv.get(v, (0,) * len(pe))
            for a, b in zip(pe, he):
                if a == 0:
                    if b != 0:
                        return None
                    continue
                if b % a:
                    return None
                if k is None:
                    k = b // a
                elif b != k * a:
                    return None
        return k

    def centraliser_member(self, x: Iterable[Syllable], u: Iterable[Syllable]) -> bool:
        """Whether ``x`` commutes with ``u``."""
        x, u = tuple(x), tuple(u)
        return self.is_trivial(x + u + _inverse(x) + _inverse(u))

    def retract_to_subgraph(self, word: Iterable[Syllable], s: Iterable[str]) -> GPWord:
        """Kill every vertex group outside ``s``."""
        s = set(s)
        self.graph.check_vertices(s)
        return tuple(x for x in self.check(word) if x.vertex in s)

    def subproduct(self, s: Iterable[str]) -> GraphProduct:
        """The graph product on the full subgraph spanned by ``s``."""
        sub = full_subgraph(self.graph, s)
        return GraphProduct(sub, {v: self.ranks[v] for v in sub.vertices})
