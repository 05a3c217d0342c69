"""Decision procedures for graph products of free abelian groups and towers of
centraliser extensions over them: normal forms, word problems, retractions,
cyclic-subgroup membership and finite-quotient separation certificates."""

from .graph_product import GPWord, GraphProduct, Syllable
from .graphs import (
    SimpleGraph,
    clique_expand,
    full_subgraph,
    is_chordal,
    is_clique,
    parse_graph,
    perfect_elimination_ordering,
)
from .tower import (
    Centraliser,
    ExtensionLayer,
    Standard,
    Tower,
    TowerSpec,
    build_tower,
    load_tower,
    parse_tower,
)
from .witness import (
    InSubgroup,
    SeparationWitness,
    Undecided,
    separate_from_cyclic,
    verify_witness,
)
from .words import Letter, format_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "GPWord",
    "GraphProduct",
    "Syllable",
    "SimpleGraph",
    "clique_expand",
    "full_subgraph",
    "is_chordal",
    "is_clique",
    "parse_graph",
    "perfect_elimination_ordering",
    "Centraliser",
    "ExtensionLayer",
    "Standard",
    "Tower",
    "TowerSpec",
    "build_tower",
    "load_tower",
    "parse_tower",
    "InSubgroup",
    "SeparationWitness",
    "Undecided",
    "separate_from_cyclic",
    "verify_witness",
    "Letter",
    "format_word",
    "parse_word",
]
