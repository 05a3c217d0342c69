"""Finite simple graphs, chordality and perfect elimination orderings.

Vertices are strings and the vertex order given at construction is fixed;
every algorithm here breaks ties by that order, so results are reproducible.

An elimination ordering ``(v1, ..., vn)`` is *perfect* when, for every i,
the neighbours of ``vi`` among ``v1, ..., v(i-1)`` form a clique.
"""

from __future__ import annotations

import re
from collections import deque
from collections.abc import Iterable, Mapping

__all__ = [
    "SimpleGraph",
    "GraphFormatError",
    "is_chordal",
    "perfect_elimination_ordering",
    "is_perfect_elimination_ordering",
    "lex_bfs",
    "chordless_cycle",
    "full_subgraph",
    "is_clique",
    "clique_expand",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "parse_graph",
    "format_graph",
]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_.]*\Z")


class GraphFormatError(ValueError):
    """Malformed graph text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SimpleGraph:
    """Immutable simple graph with an ordered vertex list."""

    __slots__ = ("vertices", "edges", "_adj", "_index")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        verts = tuple(vertices)
        index = {}
        for v in verts:
            if v in index:
                raise ValueError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        adj: dict[str, set[str]] = {v: set() for v in verts}
        edge_set = set()
        for e in edges:
            u, w = tuple(e)
            if u == w:
                raise ValueError(f"loop at {u!r}")
            for x in (u, w):
                if x not in index:
                    raise ValueError(f"edge endpoint {x!r} is not a vertex")
            edge_set.add(frozenset((u, w)))
            adj[u].add(w)
            adj[w].add(u)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        edges = sorted(tuple(sorted(e, key=self._index.__getitem__)) for e in self.edges)
        return f"SimpleGraph({list(self.vertices)!r}, {edges!r})"

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def neighbours(self, v: str) -> frozenset[str]:
        return self._adj[v]

    def adjacent(self, u: str, w: str) -> bool:
        return w in self._adj[u]

    def position(self, v: str) -> int:
        return self._index[v]

    def sorted_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        """``vs`` in the graph's vertex order."""
        return tuple(sorted(vs, key=self._index.__getitem__))

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by vertex order."""
        pairs = (self.sorted_vertices(e) for e in self.edges)
        return sorted(pairs, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def check_vertices(self, vs: Iterable[str]) -> None:
        for v in vs:
            if v not in self._index:
                raise KeyError(f"unknown vertex {v!r}")


def lex_bfs(g: SimpleGraph) -> tuple[str, ...]:
    """Lexicographic breadth-first search visit order.

    For a chordal graph every vertex's previously visited neighbours form a
    clique, so the visit order is itself a perfect elimination ordering.
    """
    n = len(g.vertices)
    labels: dict[str, list[int]] = {v: [] for v in g.vertices}
    order: list[str] = []
    unvisited = list(g.vertices)
    for step in range(n, 0, -1):
        # max() keeps the first maximal element, i.e. the earliest vertex
        v = max(unvisited, key=lambda x: labels[x])
        unvisited.remove(v)
        order.append(v)
        for w in g.neighbours(v):
            if w in labels and w in unvisited:
                labels[w].append(step)
    return tuple(order)


def is_perfect_elimination_ordering(g: SimpleGraph, ordering: Iterable[str]) -> bool:
    ordering = tuple(ordering)
    if sorted(ordering) != sorted(g.vertices) or len(set(ordering)) != len(ordering):
        return False
    seen: set[str] = set()
    for v in ordering:
        earlier = [w for w in g.neighbours(v) if w in seen]
        if not is_clique(g, earlier):
            return False
        seen.add(v)
    return True


def perfect_elimination_ordering(g: SimpleGraph) -> tuple[str, ...] | None:
    """A perfect elimination ordering of ``g``, or None if ``g`` is not chordal."""
    candidate = lex_bfs(g)
    if is_perfect_elimination_ordering(g, candidate):
        return candidate
    return None


def is_chordal(g: SimpleGraph) -> bool:
    return perfect_elimination_ordering(g) is not None


def _shortest_path(g: SimpleGraph, source: str, target: str, allowed: set[str]) -> list[str] | None:
    prev = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        if x == target:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in g.sorted_vertices(g.neighbours(x)):
            if y in allowed and y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def chordless_cycle(g: SimpleGraph) -> tuple[str, ...] | None:
    """An induced cycle on at least four vertices, or None if ``g`` is chordal.

    For each vertex v and each non-adjacent pair x, y of its neighbours, a
    shortest x-y path avoiding v's other closed neighbourhood closes up with
    v into a chordless cycle.
    """
    for v in g.vertices:
        nbrs = g.sorted_vertices(g.neighbours(v))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if g.adjacent(x, y):
                    continue
                allowed = set(g.vertices) - set(nbrs) - {v}
                allowed |= {x, y}
                path = _shortest_path(g, x, y, allowed)
                if path is not None:
                    return (v, *path)
    return None


def full_subgraph(g: SimpleGraph, s: Iterable[str]) -> SimpleGraph:
    """The subgraph induced on ``s``, keeping the vertex order of ``g``."""
    s = set(s)
    g.check_vertices(s)
    verts = [v for v in g.vertices if v in s]
    return SimpleGraph(verts, (e for e in g.edges if e <= s))


def is_clique(g: SimpleGraph, s: Iterable[str]) -> bool:
    s = list(s)
    g.check_vertices(s)
    return all(g.adjacent(u, w) for i, u in enumerate(s) for w in s[i + 1:] if u != w)


def clique_expand(g: SimpleGraph, ranks: Mapping[str, int]) -> SimpleGraph:
    """Blow each vertex ``v`` up into a clique ``v.1, ..., v.r`` on ``r = ranks[v]`` vertices.

    Rank-1 vertices keep their name. Copies of distinct vertices are joined
    exactly when the originals are adjacent, so the graph product of free
    abelian groups Z^ranks[v] over ``g`` is the RAAG on the result.
    """
    copies: dict[str, list[str]] = {}
    for v in g.vertices:
        if v not in ranks:
            raise KeyError(f"missing rank for vertex {v!r}")
        r = ranks[v]
        if r < 1:
            raise ValueError(f"rank of {v!r} must be positive, got {r}")
        copies[v] = [v] if r == 1 else [f"{v}.{j}" for j in range(1, r + 1)]
    verts = [c for v in g.vertices for c in copies[v]]
    edges = []
    for v in g.vertices:
        cs = copies[v]
        edges.extend((x, y) for i, x in enumerate(cs) for y in cs[i + 1:])
    for u, w in g.edge_list():
        edges.extend((x, y) for x in copies[u] for y in copies[w])
    return SimpleGraph(verts, edges)


def path_graph(names: Iterable[str]) -> SimpleGraph:
    names = list(names)
    return SimpleGraph(names, zip(names, names[1:]))


def cycle_graph(names: Iterable[str]) -> SimpleGraph:
    names = list(names)
    return SimpleGraph(names, zip(names, names[1:] + names[:1]))


def complete_graph(names: Iterable[str]) -> SimpleGraph:
    names = list(names)
    return SimpleGraph(names, ((u, w) for i, u in enumerate(names) for w in names[i + 1:]))


def parse_graph(text: str) -> SimpleGraph:
    """Parse the line-oriented graph format.

    ``vertex <name>`` lines declare vertices in order, ``edge <u> <v>`` lines
    add edges, and ``#`` starts a comment.
    """
    vertices: list[str] = []
    declared: set[str] = set()
    edges: list[tuple[str, str]] = []
    seen_edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphFormatError("expected 'vertex <name>'", lineno)
            name = parts[1]
            if not NAME_RE.match(name):
                raise GraphFormatError(f"invalid vertex name {name!r}", lineno)
            if name in declared:
                raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
            if edges:
                raise GraphFormatError("vertex declared after edges", lineno)
            declared.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(parts) != 3:
                raise GraphFormatError("expected 'edge <name> <name>'", lineno)
            u, w = parts[1], parts[2]
            for x in (u, w):
                if x not in declared:
                    raise GraphFormatError(f"unknown vertex {x!r}", lineno)
            if u == w:
                raise GraphFormatError(f"loop at {u!r}", lineno)
            key = frozenset((u, w))
            if key in seen_edges:
                raise GraphFormatError(f"repeated edge {u} {w}", lineno)
            seen_edges.add(key)
            edges.append((u, w))
        else:
            raise GraphFormatError(f"unknown directive {kind!r}", lineno)
    return SimpleGraph(vertices, edges)


def format_graph(g: SimpleGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {w}" for u, w in g.edge_list()]
    return "\n".join(lines) + "\n"
