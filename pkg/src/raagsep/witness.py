"""Finite-quotient certificates that ``h`` is not in the cyclic subgroup ``<g>``.

The search runs a fixed ladder and returns the first success:

S0. at level 0, decide membership outright (:class:`InSubgroup`);
S1. abelianization onto ``(Z/m)^n`` for ``m = 2, 3, ...``;
S2. retraction onto a proper full subgraph, then a congruence quotient there;
S3. the Tits representation reduced mod ``N`` for ``N = 2, 3, ...``.

When ``g`` is nontrivial a quotient only counts if it keeps ``q(g)``
nontrivial, so the witness exhibits a genuine finite image of ``<g>``.

Tower words are first pushed down to the base by the tower retraction, and
every witness records the whole composite quotient so that
:func:`verify_witness` can rebuild it independently.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from typing import Union

import numpy as np

from .coxeter import CoxeterRep, double_graph, double_name, tits_matrix
from .graph_product import GraphProduct
from .graphs import clique_expand, full_subgraph
from .tower import Centraliser, Tower, TowerSpec
from .words import Letter, Word, format_word, power

__all__ = [
    "Abelianization",
    "Congruence",
    "SubgraphRetraction",
    "TowerRetraction",
    "SeparationWitness",
    "InSubgroup",
    "Undecided",
    "separate_from_cyclic",
    "verify_witness",
    "format_certificate",
    "MAX_ENUMERATION",
]

MAX_ENUMERATION = 10**6


@dataclass(frozen=True)
class Abelianization:
    modulus: int


@dataclass(frozen=True)
class Congruence:
    modulus: int


@dataclass(frozen=True)
class SubgraphRetraction:
    vertices: tuple[str, ...]
    inner: Strategy


@dataclass(frozen=True)
class TowerRetraction:
    target_level: int
    inner: Strategy


Strategy = Union[Abelianization, Congruence, SubgraphRetraction, TowerRetraction]


@dataclass(frozen=True)
class SeparationWitness:
    """``image_g``/``image_h`` are vectors (abelianization) or row tuples (congruence)."""

    strategy: Strategy
    image_g: tuple
    image_h: tuple
    cyclic_order: int
    certificate_ok: bool


@dataclass(frozen=True)
class InSubgroup:
    k: int


@dataclass(frozen=True)
class Undecided:
    budget: int
    attempts: int
    reason: str = "budget exhausted"


Outcome = Union[SeparationWitness, InSubgroup, Undecided]


def _as_tower(group: Tower | GraphProduct) -> Tower:
    return group if isinstance(group, Tower) else Tower(TowerSpec(group))


def _innermost(strategy: Strategy) -> Strategy:
    while isinstance(strategy, (SubgraphRetraction, TowerRetraction)):
        strategy = strategy.inner
    return strategy


# -- search ----------------------------------------------------------------


def _abelian_image(gp: GraphProduct, word: Word, m: int) -> tuple[int, ...]:
    coords = {t: i for i, t in enumerate(gp.tokens)}
    vec = [0] * len(coords)
    for name, exp in word:
        vec[coords[name]] += exp
    return tuple(x % m for x in vec)


def _try_abelian(gp: GraphProduct, g: Word, h: Word, m: int, strict: bool):
    vg, vh = _abelian_image(gp, g, m), _abelian_image(gp, h, m)
    if strict and not any(vg):
        return None
    cur = (0,) * len(vg)
    order = 0
    while True:
        if cur == vh:
            return None
        cur = tuple((a + b) % m for a, b in zip(cur, vg))
        order += 1
        if not any(cur):
            return vg, vh, order


class _Congruences:
    """Congruence images of one graph product, with the representation cached."""

    def __init__(self, gp: GraphProduct):
        self.gp = gp
        self.rep = CoxeterRep(gp)

    def attempt(self, g: Word, h: Word, n: int, strict: bool):
        gw, hw = self.gp.from_letters(g), self.gp.from_letters(h)
        a = self.rep.rep_mod(gw, n)
        target = self.rep.rep_mod(hw, n)
        ident = np.eye(self.rep.dimension, dtype=np.int64) % n
        if strict and np.array_equal(a, ident):
            return None
        cur = ident
        order = 0
        while True:
            if np.array_equal(cur, target):
                return None
            cur = (cur @ a) % n
            order += 1
            if np.array_equal(cur, ident):
                return _rows(a), _rows(target), order
            if order >= MAX_ENUMERATION:
                return None


def _rows(m: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def _ladder(gp: GraphProduct, g: Word, h: Word, budget: int) -> tuple[Strategy, tuple] | int:
    """First ladder success as ``(strategy, (img_g, img_h, order))``, else attempt count."""
    attempts = 0
    moduli = range(2, budget + 1)
    strict = not gp.is_trivial(gp.from_letters(g))
    for m in moduli:
        attempts += 1
        found = _try_abelian(gp, g, h, m, strict)
        if found:
            return Abelianization(m), found

    keep = gp.support(gp.from_letters(g)) | gp.support(gp.from_letters(h))
    ordered = [v for v in gp.graph.vertices if v in keep]
    for size in range(len(ordered), 0, -1):
        for subset in combinations(ordered, size):
            if len(subset) == len(gp.graph.vertices):
                continue
            sub = gp.subproduct(subset)
            s = set(subset)
            gs = tuple(x for x in g if gp.vertex_of(x.name) in s)
            hs = tuple(x for x in h if gp.vertex_of(x.name) in s)
            if sub.cyclic_member(sub.from_letters(hs), sub.from_letters(gs)) is not None:
                continue
            cong = _Congruences(sub)
            sub_strict = not sub.is_trivial(sub.from_letters(gs))
            for n in moduli:
                attempts += 1
                found = cong.attempt(gs, hs, n, sub_strict)
                if found:
                    return SubgraphRetraction(subset, Congruence(n)), found

    cong = _Congruences(gp)
    for n in moduli:
        attempts += 1
        found = cong.attempt(g, h, n, strict)
        if found:
            return Congruence(n), found
    return attempts


def separate_from_cyclic(
    g: Iterable[Letter], h: Iterable[Letter], group: Tower | GraphProduct, budget: int = 64
) -> Outcome:
    """Search for a finite quotient ``q`` with ``q(h)`` outside ``<q(g)>``.

    ``budget`` is the largest modulus tried by every strategy.
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    tower = _as_tower(group)
    g, h = tower.check(g), tower.check(h)
    base = tower.base
    level = max(tower.level(g), tower.level(h))
    if level == 0:
        k = base.cyclic_member(base.from_letters(h), base.from_letters(g))
        if k is not None:
            return InSubgroup(k)
        g0, h0 = g, h
    else:
        g0, h0 = tower.retraction(g, 0), tower.retraction(h, 0)
        if base.cyclic_member(base.from_letters(h0), base.from_letters(g0)) is not None:
            # no quotient of the base can separate the retracted pair
            return Undecided(budget, 0, "retraction puts h in <g>")
    result = _ladder(base, g0, h0, budget)
    if isinstance(result, int):
        return Undecided(budget, result)
    strategy, (img_g, img_h, order) = result
    if level:
        strategy = TowerRetraction(0, strategy)
    return SeparationWitness(strategy, img_g, img_h, order, True)


# -- verification ------------------------------------------------------------
# Rebuilt from the tower data and the generator matrices alone; nothing
# below calls the search code or the tower's own retraction.


def _retract_letters(tower: Tower, word: Word, target: int) -> Word:
    level_of = {}
    for layer in tower.layers:
        for name in layer.stable_names:
            level_of[name] = layer
    out: list[Letter] = []
    stack = list(reversed(word))
    while stack:
        name, exp = stack.pop()
        layer = level_of.get(name)
        if layer is None or layer.level <= target:
            out.append(Letter(name, exp))
            continue
        if isinstance(layer.subgroup, Centraliser):
            stack.extend(reversed(power(layer.subgroup.u, exp)))
    return tuple(out)


def _powers_exclude(target, step, is_identity) -> int | None:
    cur = step(None)
    count = 0
    while True:
        if cur == target:
            return None
        cur = step(cur)
        count += 1
        if is_identity(cur):
            return count
        if count >= MAX_ENUMERATION:
            return None


def verify_witness(
    witness: SeparationWitness | InSubgroup,
    g: Iterable[Letter],
    h: Iterable[Letter],
    group: Tower | GraphProduct,
) -> bool:
    """Independently recompute a certificate; True iff it is valid for ``g``, ``h``."""
    tower = _as_tower(group)
    g, h = tower.check(g), tower.check(h)
    if isinstance(witness, InSubgroup):
        return tower.equal(power(g, witness.k), h)
    if not isinstance(witness, SeparationWitness):
        raise ValueError(f"not a witness: {witness!r}")
    if not witness.certificate_ok:
        return False

    gp = tower.base
    strategy = witness.strategy
    if isinstance(strategy, TowerRetraction):
        if strategy.target_level != 0:
            raise ValueError("tower retraction must target level 0")
        g = _retract_letters(tower, g, 0)
        h = _retract_letters(tower, h, 0)
        strategy = strategy.inner
    elif max(tower.level(g), tower.level(h)):
        return False
    graph, ranks = gp.graph, gp.ranks
    if isinstance(strategy, SubgraphRetraction):
        keep = set(strategy.vertices)
        if not keep <= set(graph.vertices):
            raise ValueError(f"unknown vertices in {strategy.vertices!r}")
        owner = {t: gp.vertex_of(t) for t in gp.tokens}
        g = tuple(x for x in g if owner[x.name] in keep)
        h = tuple(x for x in h if owner[x.name] in keep)
        graph = full_subgraph(graph, keep)
        ranks = {v: ranks[v] for v in graph.vertices}
        strategy = strategy.inner
    if any(t.name not in _token_names(graph, ranks) for t in g + h):
        return False

    if isinstance(strategy, Abelianization):
        m = strategy.modulus
        if not isinstance(m, int) or m < 2:
            raise ValueError(f"bad modulus {m!r}")
        names = _token_names(graph, ranks)

        def vec(word):
            v = dict.fromkeys(names, 0)
            for name, exp in word:
                v[name] += exp
            return tuple(v[n] % m for n in names)

        vg, vh = vec(g), vec(h)
        zero = (0,) * len(names)

        def step(cur):
            return zero if cur is None else tuple((a + b) % m for a, b in zip(cur, vg))

        order = _powers_exclude(vh, step, lambda c: c == zero)
        images = (vg, vh)
    elif isinstance(strategy, Congruence):
        n = strategy.modulus
        if not isinstance(n, int) or n < 2:
            raise ValueError(f"bad modulus {n!r}")
        doubled = double_graph(clique_expand(graph, ranks))
        mats = {s: tits_matrix(doubled, s) for s in doubled.vertices}
        dim = len(doubled)

        def image(word):
            acc = np.eye(dim, dtype=np.int64)
            for name, exp in word:
                first, second = double_name(name, 0), double_name(name, 1)
                if exp < 0:
                    first, second = second, first
                for _ in range(abs(exp)):
                    acc = (acc @ mats[first] @ mats[second]) % n
            return tuple(tuple(int(x) % n for x in row) for row in acc)

        mg, mh = image(g), image(h)
        ident = tuple(tuple(int(i == j) % n for j in range(dim)) for i in range(dim))
        a = np.array(mg, dtype=np.int64)

        def step(cur):
            if cur is None:
                return ident
            return tuple(tuple(int(x) for x in row) for row in (np.array(cur) @ a) % n)

        order = _powers_exclude(mh, step, lambda c: c == ident)
        images = (mg, mh)
    else:
        raise ValueError(f"malformed strategy {witness.strategy!r}")

    if order is None:
        return False
    return images == (witness.image_g, witness.image_h) and order == witness.cyclic_order


def _token_names(graph, ranks) -> list[str]:
    out = []
    for v in graph.vertices:
        r = ranks[v]
        out.extend([v] if r == 1 else [f"{v}.{j}" for j in range(1, r + 1)])
    return out


# -- certificate text --------------------------------------------------------


def _strategy_chain(strategy: Strategy) -> list[str]:
    parts = []
    while True:
        if isinstance(strategy, TowerRetraction):
            parts.append(f"TowerRetraction(level={strategy.target_level})")
            strategy = strategy.inner
        elif isinstance(strategy, SubgraphRetraction):
            parts.append(f"SubgraphRetraction(vertices={' '.join(strategy.vertices)})")
            strategy = strategy.inner
        elif isinstance(strategy, Abelianization):
            parts.append(f"Abelianization(modulus={strategy.modulus})")
            return parts
        elif isinstance(strategy, Congruence):
            parts.append(f"Congruence(modulus={strategy.modulus})")
            return parts
        else:
            raise ValueError(f"malformed strategy {strategy!r}")


def _format_image(img: tuple) -> str:
    if img and isinstance(img[0], tuple):
        return "; ".join(" ".join(str(x) for x in row) for row in img)
    return " ".join(str(x) for x in img)


def format_certificate(outcome: Outcome, g: Iterable[Letter], h: Iterable[Letter]) -> str:
    lines = [
        "certificate: cyclic-subgroup separation",
        f"g: {format_word(g)}",
        f"h: {format_word(h)}",
    ]
    if isinstance(outcome, SeparationWitness):
        inner = _innermost(outcome.strategy)
        kind = "abelianization" if isinstance(inner, Abelianization) else "congruence"
        lines += [
            f"strategy: {' > '.join(_strategy_chain(outcome.strategy))}",
            f"quotient: {kind} modulus={inner.modulus}",
            f"image g: {_format_image(outcome.image_g)}",
            f"image h: {_format_image(outcome.image_h)}",
            f"subgroup size: {outcome.cyclic_order}",
            f"certificate ok: {'yes' if outcome.certificate_ok else 'no'}",
            "verdict: SEPARATED",
        ]
    elif isinstance(outcome, InSubgroup):
        lines.append(f"verdict: IN_SUBGROUP k={outcome.k}")
    elif isinstance(outcome, Undecided):
        lines += [
            f"attempts: {outcome.attempts}",
            f"reason: {outcome.reason}",
            f"verdict: UNDECIDED budget={outcome.budget}",
        ]
    else:
        raise ValueError(f"unknown outcome {outcome!r}")
    return "\n".join(lines) + "\n"
