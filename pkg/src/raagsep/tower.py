"""Towers of centraliser extensions over a graph-product base.

Level 0 is a :class:`~raagsep.graph_product.GraphProduct`.  Each layer adjoins
a free abelian group ``B = Z^rank`` on fresh stable letters together with
the relations ``[C, B] = 1``, where ``C`` is either the centraliser of a word
``u`` of the group below or a *standard* subgroup generated by named
factors.  The new group is the amalgam ``G *_C (C x B)``, so its word
problem reduces to the word problem below plus membership in ``C``.
"""

from __future__ import annotations

import shlex
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .graph_product import GraphProduct
from .graphs import GraphFormatError, SimpleGraph, parse_graph
from .words import Letter, Word, WordSyntaxError, commutator, inverse, parse_word, power

__all__ = [
    "Centraliser",
    "Standard",
    "ExtensionLayer",
    "TowerSpec",
    "Tower",
    "TowerError",
    "TowerFormatError",
    "AlternatingForm",
    "TraceStep",
    "ReductionTrace",
    "MERGE_ZERO",
    "FOLD",
    "BASE",
    "build_tower",
    "parse_tower",
    "load_tower",
]

MERGE_ZERO = "merge-zero-block"
FOLD = "fold-commuting-syllable"
BASE = "base-resolution"


class TowerError(ValueError):
    pass


class TowerFormatError(ValueError):
    """Malformed tower text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)


@dataclass(frozen=True)
class Centraliser:
    """Commuting subgroup ``C(u)`` of the group below the layer."""

    u: Word


@dataclass(frozen=True)
class Standard:
    """Commuting subgroup generated by named factors.

    Names are base vertices (the whole vertex group) or stable letters of
    earlier standard layers.
    """

    generators: frozenset[str]


@dataclass(frozen=True)
class ExtensionLayer:
    level: int
    subgroup: Centraliser | Standard
    rank: int
    stable_names: tuple[str, ...]
    abelian_asserted: bool = False


@dataclass(frozen=True)
class TowerSpec:
    base: GraphProduct
    layers: tuple[ExtensionLayer, ...] = ()


@dataclass(frozen=True)
class AlternatingForm:
    """``a0 t^tau1 a1 ... t^taum am``: pieces below the top layer, top-layer exponents between."""

    pieces: tuple[Word, ...]
    exponents: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    position: int


@dataclass
class ReductionTrace:
    level: int
    initial: AlternatingForm
    steps: list[TraceStep] = field(default_factory=list)

    def replay(self) -> AlternatingForm:
        form = self.initial
        for step in self.steps:
            form = apply_rule(form, step)
        return form


def apply_rule(form: AlternatingForm, step: TraceStep) -> AlternatingForm:
    """Apply one pinch step mechanically (no membership checks)."""
    pieces, taus = list(form.pieces), list(form.exponents)
    j = step.position
    if step.rule == MERGE_ZERO:
        # tau_j is taus[j - 1]; it sits between pieces j-1 and j
        if any(taus[j - 1]):
            raise TowerError(f"tau_{j} is not zero")
        pieces[j - 1:j + 1] = [pieces[j - 1] + pieces[j]]
        del taus[j - 1]
    elif step.rule == FOLD:
        m = len(taus)
        if 1 <= j < m:
            merged = tuple(a + b for a, b in zip(taus[j - 1], taus[j]))
            pieces[j - 1:j + 1] = [pieces[j - 1] + pieces[j]]
            taus[j - 1:j + 1] = [merged]
        elif j == m and m >= 1:
            pieces[m - 1] = pieces[m - 1] + pieces[m]
            pieces[m] = ()
        else:
            raise TowerError(f"fold at invalid position {j}")
    elif step.rule == BASE:
        pass
    else:
        raise TowerError(f"unknown rule {step.rule!r}")
    return AlternatingForm(tuple(pieces), tuple(taus))


class Tower:
    """A validated tower; build with :func:`build_tower`."""

    def __init__(self, spec: TowerSpec):
        self.spec = spec
        self.base = spec.base
        self.layers = spec.layers
        self._letters: dict[str, tuple[int, int]] = {}
        for name in self.base.tokens:
            self._letters[name] = (0, -1)
        self._by_level: dict[int, int] = {}
        self._member_cache: dict[tuple, bool] = {}
        self._validate()

    # -- construction ----------------------------------------------------

    def _validate(self) -> None:
        prev = 0
        seen_centraliser = False
        for pos, layer in enumerate(self.layers):
            if layer.level <= prev:
                raise TowerError(f"layer levels must increase strictly, got {layer.level} after {prev}")
            if layer.rank < 1 or len(layer.stable_names) != layer.rank:
                raise TowerError(
                    f"layer {layer.level}: rank {layer.rank} needs {layer.rank} stable names, "
                    f"got {len(layer.stable_names)}"
                )
            sub = layer.subgroup
            if isinstance(sub, Centraliser):
                self.check(sub.u)
                lvl = self.level(sub.u)
                if lvl >= layer.level:
                    raise TowerError(f"layer {layer.level}: u has level {lvl}")
                if self.word_problem(sub.u):
                    raise TowerError(f"layer {layer.level}: trivial centraliser element u")
                seen_centraliser = True
            elif isinstance(sub, Standard):
                if seen_centraliser:
                    raise TowerError(
                        f"layer {layer.level}: standard layers must precede centraliser layers"
                    )
                for name in sub.generators:
                    if name in self.base.ranks:
                        continue
                    if name not in self._letters or self._letters[name][0] == 0:
                        raise TowerError(f"layer {layer.level}: unknown factor {name!r}")
            else:
                raise TowerError(f"layer {layer.level}: bad subgroup {sub!r}")
            for name in layer.stable_names:
                if name in self._letters or name in self.base.ranks:
                    raise TowerError(f"name clash: {name!r}")
            self._by_level[layer.level] = pos
            for k, name in enumerate(layer.stable_names):
                self._letters[name] = (layer.level, k)
            prev = layer.level

    @property
    def height(self) -> int:
        return self.layers[-1].level if self.layers else 0

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(self._letters)

    def layer(self, level: int) -> ExtensionLayer:
        return self.layers[self._by_level[level]]

    def levels(self) -> list[int]:
        return [layer.level for layer in self.layers]

    def below(self, level: int) -> int:
        """The level of the group a layer at ``level`` extends."""
        pos = self._by_level[level]
        return self.layers[pos - 1].level if pos else 0

    def check(self, word: Iterable[Letter]) -> Word:
        word = tuple(Letter(*x) for x in word)
        for name, _ in word:
            if name not in self._letters:
                raise TowerError(f"undeclared generator {name!r}")
        return word

    def level(self, word: Iterable[Letter]) -> int:
        return max((self._letters[name][0] for name, _ in word), default=0)

    def parse(self, text: str) -> Word:
        return parse_word(text, self._letters)

    def to_base(self, word: Iterable[Letter]):
        word = self.check(word)
        if self.level(word):
            raise TowerError("word is not at level 0")
        return self.base.from_letters(word)

    # -- membership ------------------------------------------------------

    def _key(self, word: Word, level: int):
        if level == 0:
            return self.base.normalize(self.base.from_letters(word))
        return word

    def subgroup_member(self, x: Iterable[Letter], layer: ExtensionLayer | int) -> bool:
        """Whether ``x`` (below the layer) lies in the layer's commuting subgroup."""
        if isinstance(layer, int):
            layer = self.layer(layer)
        x = self.check(x)
        lx = self.level(x)
        if lx >= layer.level:
            raise TowerError(f"word of level {lx} is not below layer {layer.level}")
        key = (layer.level, lx, self._key(x, lx))
        hit = self._member_cache.get(key)
        if hit is not None:
            return hit
        sub = layer.subgroup
        if isinstance(sub, Centraliser):
            xs = self.simplify(x)
            result = self.word_problem(commutator(xs, sub.u))
        elif lx == 0:
            nf = self.base.normalize(self.base.from_letters(x))
            result = self.base.support(nf) <= sub.generators
        else:
            result = self.word_problem(x + inverse(self._kill_outside(x, sub.generators)))
        self._member_cache[key] = result
        return result

    def _kill_outside(self, word: Word, keep: frozenset[str]) -> Word:
        # retraction onto the standard subgroup <keep>; valid while every layer
        # involved is standard
        out = []
        for name, exp in word:
            lvl, _ = self._letters[name]
            if lvl == 0:
                if self.base.vertex_of(name) in keep:
                    out.append(Letter(name, exp))
            elif name in keep:
                out.append(Letter(name, exp))
        return tuple(out)

    # -- pinch reduction -------------------------------------------------

    def alternating_form(self, word: Iterable[Letter], level: int | None = None) -> AlternatingForm:
        word = self.check(word)
        if level is None:
            level = self.level(word)
        layer = self.layer(level)
        pieces: list[list[Letter]] = [[]]
        taus: list[list[int]] = []
        in_run = False
        for letter in word:
            lvl, k = self._letters[letter.name]
            if lvl == level:
                if not in_run:
                    taus.append([0] * layer.rank)
                    pieces.append([])
                    in_run = True
                taus[-1][k] += letter.exp
            elif lvl > level:
                raise TowerError(f"letter {letter.name!r} is above level {level}")
            else:
                pieces[-1].append(letter)
                in_run = False
        return AlternatingForm(tuple(tuple(p) for p in pieces), tuple(tuple(t) for t in taus))

    def pinch_reduce(self, word: Iterable[Letter]) -> tuple[AlternatingForm, ReductionTrace]:
        """Reduce to an alternating form no pinch rule applies to."""
        word = self.check(word)
        level = self.level(word)
        if level == 0:
            raise TowerError("pinch reduction needs a word of level >= 1")
        layer = self.layer(level)
        form = self.alternating_form(word, level)
        trace = ReductionTrace(level, form)
        while True:
            step = self._next_step(form, layer)
            if step is None:
                return form, trace
            trace.steps.append(step)
            form = apply_rule(form, step)

    def _next_step(self, form: AlternatingForm, layer: ExtensionLayer) -> TraceStep | None:
        for j, tau in enumerate(form.exponents, start=1):
            if not any(tau):
                return TraceStep(MERGE_ZERO, j)
        m = form.m
        for j in range(1, m):
            if self.subgroup_member(form.pieces[j], layer):
                return TraceStep(FOLD, j)
        if m >= 1 and form.pieces[m] and self.subgroup_member(form.pieces[m], layer):
            return TraceStep(FOLD, m)
        return None

    def word_problem(self, word: Iterable[Letter]) -> bool:
        """True iff ``word`` is the identity."""
        return self.explain(word)[0]

    def explain(self, word: Iterable[Letter]) -> tuple[bool, list[ReductionTrace]]:
        """Verdict plus the pinch traces of each level visited, top first."""
        word = self.check(word)
        traces = []
        while True:
            level = self.level(word)
            if level == 0:
                nf = self.base.normalize(self.base.from_letters(word))
                if traces:
                    traces[-1].steps.append(TraceStep(BASE, 0))
                return not nf, traces
            form, trace = self.pinch_reduce(word)
            traces.append(trace)
            if form.m:
                return False, traces
            word = form.pieces[0]

    def equal(self, w1: Iterable[Letter], w2: Iterable[Letter]) -> bool:
        return self.word_problem(tuple(self.check(w1)) + inverse(self.check(w2)))

    def simplify(self, word: Iterable[Letter]) -> Word:
        """An equal word: base normal form at level 0, flattened pinch form above."""
        word = self.check(word)
        level = self.level(word)
        if level == 0:
            return self.base.to_letters(self.base.normalize(self.base.from_letters(word)))
        form, _ = self.pinch_reduce(word)
        names = self.layer(level).stable_names
        out: list[Letter] = list(self.simplify(form.pieces[0]))
        for tau, piece in zip(form.exponents, form.pieces[1:]):
            out.extend(Letter(n, e) for n, e in zip(names, tau) if e)
            out.extend(self.simplify(piece))
        return tuple(out)

    # -- retractions -----------------------------------------------------

    def retraction(self, word: Iterable[Letter], target_level: int) -> Word:
        """Push ``word`` down to ``target_level``.

        Each stable letter of a centraliser layer above the target goes to
        that layer's ``u``; stable letters of standard layers go to 1.
        """
        word = self.check(word)
        if target_level < 0 or target_level > self.height:
            raise TowerError(f"target level {target_level} out of range 0..{self.height}")
        images: dict[int, Word] = {}

        def image(lvl: int) -> Word:
            if lvl not in images:
                sub = self.layer(lvl).subgroup
                images[lvl] = sub_retract(sub.u) if isinstance(sub, Centraliser) else ()
            return images[lvl]

        def sub_retract(w: Word) -> Word:
            out: list[Letter] = []
            for letter in w:
                lvl, _ = self._letters[letter.name]
                if lvl <= target_level:
                    out.append(letter)
                else:
                    out.extend(power(image(lvl), letter.exp))
            return tuple(out)

        return sub_retract(word)

    def relators(self) -> list[Word]:
        """Finitely many defining relators: base commutations and ``[c, t]`` for named ``c``."""
        rels = []
        base = self.base
        for u, w in base.graph.edge_list():
            for x in _tokens_of(base, u):
                for y in _tokens_of(base, w):
                    rels.append(commutator(((x, 1),), ((y, 1),)))
        for v in base.graph.vertices:
            toks = _tokens_of(base, v)
            for i, x in enumerate(toks):
                for y in toks[i + 1:]:
                    rels.append(commutator(((x, 1),), ((y, 1),)))
        for layer in self.layers:
            names = layer.stable_names
            for i, x in enumerate(names):
                for y in names[i + 1:]:
                    rels.append(commutator(((x, 1),), ((y, 1),)))
            sub = layer.subgroup
            if isinstance(sub, Centraliser):
                cs = [sub.u]
            else:
                cs = []
                for g in sorted(sub.generators):
                    toks = _tokens_of(base, g) if g in base.ranks else (g,)
                    cs.extend(((x, 1),) for x in toks)
            for c in cs:
                for t in names:
                    rels.append(commutator(tuple(Letter(*x) for x in c), (Letter(t, 1),)))
        return rels

    # -- polynomial exponents --------------------------------------------

    def poly_exponent(self, layer: ExtensionLayer | int, coeffs: Sequence[int]) -> Word:
        """``u^a0 t1^a1 ... td^ad`` for ``p = a0 + a1 t + ... + ad t^d``."""
        if isinstance(layer, int):
            layer = self.layer(layer)
        if not isinstance(layer.subgroup, Centraliser):
            raise TowerError("poly_exponent needs a centraliser layer")
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) - 1 >= layer.rank:
            raise TowerError(f"degree {len(coeffs) - 1} is not below rank {layer.rank}")
        if not coeffs:
            return ()
        out = list(power(layer.subgroup.u, coeffs[0]))
        out.extend(Letter(n, a) for n, a in zip(layer.stable_names, coeffs[1:]) if a)
        return tuple(out)


def _tokens_of(base: GraphProduct, v: str) -> tuple[str, ...]:
    r = base.ranks[v]
    return (v,) if r == 1 else tuple(f"{v}.{j}" for j in range(1, r + 1))


def build_tower(spec: TowerSpec) -> Tower:
    return Tower(spec)


# -- text format ---------------------------------------------------------


def parse_tower(text: str, base_dir: str | Path = ".", graph: SimpleGraph | None = None) -> Tower:
    """Parse the tower format.

    ``base <graph-file>`` (relative to ``base_dir``), then ``rank <vertex> <int>``
    lines, then ``extend centraliser "<word>" rank <r> names ...`` or
    ``extend standard <names ...> rank <r> names ...`` lines.
    """
    ranks: dict[str, int] = {}
    layer_lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            parts = shlex.split(line)
        except ValueError as exc:
            raise TowerFormatError(str(exc), lineno) from None
        kind = parts[0]
        if kind == "base":
            if len(parts) != 2:
                raise TowerFormatError("expected 'base <graph-file>'", lineno)
            if graph is not None:
                raise TowerFormatError("duplicate base line", lineno)
            path = Path(base_dir) / parts[1]
            try:
                graph = parse_graph(path.read_text(encoding="utf-8"))
            except OSError as exc:
                raise TowerFormatError(f"cannot read {path}: {exc.strerror}", lineno) from None
            except GraphFormatError as exc:
                raise TowerFormatError(f"in {path}: {exc}", lineno) from None
        elif kind == "rank":
            if len(parts) != 3:
                raise TowerFormatError("expected 'rank <vertex> <int>'", lineno)
            if layer_lines:
                raise TowerFormatError("rank line after extend lines", lineno)
            try:
                ranks[parts[1]] = int(parts[2])
            except ValueError:
                raise TowerFormatError(f"bad rank {parts[2]!r}", lineno) from None
        elif kind == "extend":
            layer_lines.append((lineno, parts))
        else:
            raise TowerFormatError(f"unknown directive {kind!r}", lineno)
    if graph is None:
        raise TowerFormatError("missing base line")
    try:
        base = GraphProduct(graph, ranks)
    except (KeyError, ValueError) as exc:
        raise TowerFormatError(str(exc)) from None

    tower = Tower(TowerSpec(base))
    for level, (lineno, parts) in enumerate(layer_lines, start=1):
        layer = _parse_layer(tower, level, lineno, parts)
        try:
            tower = Tower(TowerSpec(base, tower.layers + (layer,)))
        except TowerError as exc:
            raise TowerFormatError(str(exc), lineno) from None
    return tower


def _parse_layer(tower: Tower, level: int, lineno: int, parts: list[str]) -> ExtensionLayer:
    if len(parts) < 2 or parts[1] not in ("centraliser", "standard"):
        raise TowerFormatError("expected 'extend centraliser' or 'extend standard'", lineno)
    try:
        r = parts.index("rank")
        n = parts.index("names")
    except ValueError:
        raise TowerFormatError("extend line needs 'rank' and 'names'", lineno) from None
    if n != r + 2:
        raise TowerFormatError("expected 'rank <int> names ...'", lineno)
    try:
        rank = int(parts[r + 1])
    except ValueError:
        raise TowerFormatError(f"bad rank {parts[r + 1]!r}", lineno) from None
    names = tuple(parts[n + 1:])
    args = parts[2:r]
    if parts[1] == "centraliser":
        if len(args) != 1:
            raise TowerFormatError("centraliser needs exactly one quoted word", lineno)
        try:
            u = tower.parse(args[0])
        except WordSyntaxError as exc:
            raise TowerFormatError(f"in word: {exc}", lineno) from None
        sub: Centraliser | Standard = Centraliser(u)
    else:
        if not args:
            raise TowerFormatError("standard needs at least one generator", lineno)
        sub = Standard(frozenset(args))
    return ExtensionLayer(level, sub, rank, names)


def load_tower(path: str | Path) -> Tower:
    path = Path(path)
    return parse_tower(path.read_text(encoding="utf-8"), path.parent)
