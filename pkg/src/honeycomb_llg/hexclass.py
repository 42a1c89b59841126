"""Hexagon words, their 13 dihedral classes and the transition graph between them."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple

import networkx as nx

from .config import Configuration
from .errors import InternalError
from .lattice import DIRECTIONS, RING_OFFSETS, external_direction, opposite

ALL_WORDS = tuple(itertools.product((-1, 1), repeat=6))
ALL_RIGHT_WORD = (1,) * 6
ALL_LEFT_WORD = (-1,) * 6
TRANSITION_GUARD = 1 << 16


class ClassId(NamedTuple):
    label: int
    canonical: tuple


class Passage(NamedTuple):
    word: tuple
    exit: int
    steps: int


def dihedral_images(w) -> list[tuple]:
    """The 12 images of w: 6 rotations of w and 6 of its reversal."""
    w = tuple(w)
    r = w[::-1]
    return [w[i:] + w[:i] for i in range(6)] + [r[i:] + r[:i] for i in range(6)]


def canonical_word(w) -> tuple:
    return min(dihedral_images(w))


@lru_cache(maxsize=None)
def _canon_labels() -> dict:
    canon = sorted({canonical_word(w) for w in ALL_WORDS})
    return {c: i + 1 for i, c in enumerate(canon)}


def canonicalize(w) -> ClassId:
    c = canonical_word(w)
    return ClassId(_canon_labels()[c], c)


def class_by_label(label: int) -> ClassId:
    for c, i in _canon_labels().items():
        if i == label:
            return ClassId(i, c)
    raise KeyError(label)


def all_classes() -> list[ClassId]:
    return [ClassId(i, c) for c, i in sorted(_canon_labels().items(), key=lambda x: x[1])]


def burnside_count(n: int = 6) -> int:
    """Number of binary bracelets of length n by the Cauchy-Frobenius formula."""
    phi = lambda d: sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)
    rot = sum(phi(d) * 2 ** (n // d) for d in range(1, n + 1) if n % d == 0)
    if n % 2:
        refl = n * 2 ** ((n + 1) // 2)
    else:
        refl = (n // 2) * (2 ** (n // 2 + 1) + 2 ** (n // 2))
    return (rot + refl) // (2 * n)


def orbit_count() -> int:
    """Direct enumeration of orbits of {-1,+1}^6 under the 12 symmetries."""
    seen, orbits = set(), 0
    for w in ALL_WORDS:
        if w not in seen:
            orbits += 1
            seen.update(dihedral_images(w))
    return orbits


# reference face used for transition simulations
_CENTER = (1, -1)
_RING = tuple((_CENTER[0] + a, _CENTER[1] + b) for a, b in RING_OFFSETS)
_INDEX = {s: i for i, s in enumerate(_RING)}


def hexagon_passage(w, entry: int) -> Passage:
    """Send the particle into ring vertex `entry` along its external bond until it leaves."""
    if not 0 <= entry < 6:
        raise ValueError("entry must be a ring vertex index 0..5")
    w = list(w)
    s = _RING[entry]
    k = opposite(external_direction(entry))
    for n in range(1, TRANSITION_GUARD + 1):
        i = _INDEX[s]
        z = w[i]
        k = (k - z) % 6
        w[i] = -z
        nxt = (s[0] + DIRECTIONS[k][0], s[1] + DIRECTIONS[k][1])
        if nxt not in _INDEX:
            return Passage(tuple(w), i, n)
        s = nxt
    raise InternalError(f"passage through {tuple(w)} from entry {entry} did not terminate")


def hexagon_transition(w, entry: int) -> tuple:
    return hexagon_passage(w, entry).word


@dataclass
class TransitionGraph:
    nodes: list[ClassId]
    edges: list[tuple[int, int, int]]  # (from label, to label, entry)
    components: list[frozenset[int]]
    simulations: int

    def component_of(self, label: int) -> frozenset[int]:
        for comp in self.components:
            if label in comp:
                return comp
        raise KeyError(label)

    @property
    def admissible(self) -> frozenset[int]:
        return self.component_of(canonicalize(ALL_RIGHT_WORD).label)

    def to_dict(self) -> dict:
        lab = {c.label: list(c.canonical) for c in self.nodes}
        return {
            "nodes": [list(c.canonical) for c in self.nodes],
            "edges": [[lab[a], lab[b], e] for a, b, e in self.edges],
            "components": [sorted(lab[i] for i in comp) for comp in self.components],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _word_out_classes(w) -> frozenset[int]:
    return frozenset(canonicalize(hexagon_transition(w, e)).label for e in range(6))


def build_transition_graph() -> TransitionGraph:
    nodes = all_classes()
    edges = []
    sims = 0
    for c in nodes:
        for e in range(6):
            edges.append((c.label, canonicalize(hexagon_transition(c.canonical, e)).label, e))
            sims += 1
    # collapsing words to classes must not depend on the chosen representative
    for c in nodes:
        ref = _word_out_classes(c.canonical)
        for img in set(dihedral_images(c.canonical)):
            if _word_out_classes(img) != ref:
                raise InternalError(f"class {c.label}: representative {img} has a different out-class set")
    g = nx.DiGraph()
    g.add_nodes_from(c.label for c in nodes)
    g.add_edges_from((a, b) for a, b, _ in edges)
    comps = sorted((frozenset(x) for x in nx.weakly_connected_components(g)), key=lambda s: (-len(s), min(s)))
    return TransitionGraph(nodes, edges, comps, sims)


@lru_cache(maxsize=None)
def transition_graph() -> TransitionGraph:
    return build_transition_graph()


@lru_cache(maxsize=None)
def admissible_words() -> frozenset[tuple]:
    a = transition_graph().admissible
    return frozenset(w for w in ALL_WORDS if canonicalize(w).label in a)


def is_admissible_word(w) -> bool:
    return tuple(w) in admissible_words()


def is_admissible(C: Configuration, region: Iterable) -> bool:
    region = list(region)
    if not region:
        raise ValueError("region must be nonempty")
    ok = admissible_words()
    return all(C.hexagon_word(h) in ok for h in region)


def inadmissible_hexagons(C: Configuration, region: Iterable) -> list:
    ok = admissible_words()
    return [h for h in region if C.hexagon_word(h) not in ok]
