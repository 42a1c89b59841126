import json
import itertools

import pytest

from honeycomb_llg import hexclass as hc
from honeycomb_llg.config import Configuration, PatternA, PatternB, all_right
from honeycomb_llg.dynamics import ROTATOR, ParticleState, step
from honeycomb_llg.lattice import (
    RING_OFFSETS,
    Site,
    external_direction,
    hex_disc,
    hexagons_containing,
    neighbor,
    opposite,
    ring,
)

H = (1, -1)


def lattice_passage(w, entry):
    """Drive the full-lattice stepper from outside the face through vertex `entry` until it leaves."""
    ring_sites = ring(H)
    C = Configuration(all_right(), dict(zip(ring_sites, w)))
    start = neighbor(ring_sites[entry], external_direction(entry))
    st = ParticleState(start, opposite(external_direction(entry)), 0)
    st, C = step(ROTATOR, st, C)
    assert st.site == ring_sites[entry]
    entries = 1
    while True:
        st, C = step(ROTATOR, st, C)
        if st.site not in ring_sites:
            break
    exits = 1
    return C.hexagon_word(H), entries, exits, st.time - 1


def test_thirteen_classes():
    labels = {hc.canonicalize(w) for w in hc.ALL_WORDS}
    assert len(labels) == 13
    assert {c.label for c in labels} == set(range(1, 14))
    r, l = hc.canonicalize(hc.ALL_RIGHT_WORD), hc.canonicalize(hc.ALL_LEFT_WORD)
    assert r.canonical == hc.ALL_RIGHT_WORD and l.canonical == hc.ALL_LEFT_WORD and r != l
    for w in hc.ALL_WORDS:
        assert len({hc.canonicalize(g) for g in hc.dihedral_images(w)}) == 1


def test_burnside_agrees_with_enumeration():
    assert hc.burnside_count(6) == hc.orbit_count() == 13
    # known bracelet counts for other lengths
    assert [hc.burnside_count(n) for n in range(1, 9)] == [2, 3, 4, 6, 8, 13, 18, 30]


@pytest.mark.parametrize("entry", range(6))
def test_transition_matches_lattice_stepper(entry):
    for w in hc.ALL_WORDS:
        got = hc.hexagon_passage(w, entry)
        word, entries, exits, steps = lattice_passage(w, entry)
        assert got.word == word and got.steps == steps
        assert entries == exits == 1


def test_transitions_stay_in_component():
    g = hc.build_transition_graph()
    for w, e in itertools.product(hc.ALL_WORDS, range(6)):
        a = hc.canonicalize(w).label
        b = hc.canonicalize(hc.hexagon_transition(w, e)).label
        assert g.component_of(a) == g.component_of(b)


def test_graph_structure():
    g = hc.build_transition_graph()
    assert g.simulations == 78 and len(g.edges) == 78
    assert sorted(len(c) for c in g.components) == [6, 7]
    right = hc.canonicalize(hc.ALL_RIGHT_WORD).label
    left = hc.canonicalize(hc.ALL_LEFT_WORD).label
    assert len(g.component_of(right)) == 7 and left in g.component_of(right)
    pairs = {(a, b) for a, b, _ in g.edges}
    assert all((b, a) in pairs for a, b in pairs)
    out = {}
    for a, b, _ in g.edges:
        out.setdefault(a, set()).add(b)
    assert all(len(v) <= 6 for v in out.values())
    # every all-right entry leads to the class with two adjacent lefts
    assert {b for a, b, _ in g.edges if a == right} == {hc.canonicalize((-1, -1, 1, 1, 1, 1)).label}


def test_admissible_component_members():
    assert len(hc.admissible_words()) == 22
    a = {hc.class_by_label(i).canonical for i in hc.transition_graph().admissible}
    assert a == {
        (-1, -1, -1, -1, -1, -1),
        (-1, -1, -1, -1, 1, 1),
        (-1, -1, 1, -1, -1, 1),
        (-1, -1, 1, 1, 1, 1),
        (-1, 1, -1, 1, -1, 1),
        (-1, 1, 1, -1, 1, 1),
        (1, 1, 1, 1, 1, 1),
    }


def test_is_admissible_patterns():
    region = hex_disc(H, 3)
    assert hc.is_admissible(Configuration(all_right()), region)
    assert hc.is_admissible(Configuration(PatternA()), region)
    assert hc.is_admissible(Configuration(PatternB()), region)
    bad = Configuration(all_right(), {(3, -1): -1})
    assert not hc.is_admissible(bad, [H])
    assert hc.inadmissible_hexagons(bad, region) == [h for h in region if (3, -1) in ring(h)]
    with pytest.raises(ValueError):
        hc.is_admissible(bad, [])


def test_exited_hexagons_are_admissible_during_run():
    C = Configuration(all_right())
    st = ParticleState(Site(0, 0), 0, 0)
    ok = hc.admissible_words()
    exits = 0
    inside = set()  # faces currently occupied after being entered from outside
    # faces around the start are left half-scattered by the first step and are exempt
    home = hexagons_containing((0, 0))
    for _ in range(100_000):
        before = hexagons_containing(st.site)
        st, C = step(ROTATOR, st, C)
        after = hexagons_containing(st.site)
        inside |= after - before
        for h in before - after:
            if h in inside and h not in home:
                inside.discard(h)
                exits += 1
                assert C.hexagon_word(h) in ok
    assert exits > 10_000


def test_home_faces_can_leave_component_between_returns():
    # the start site is never scattered at t = 0, so its faces are not covered by the partition rule
    C = Configuration(all_right())
    st = ParticleState(Site(0, 0), 0, 0)
    for _ in range(9):
        st, C = step(ROTATOR, st, C)
    assert not hc.is_admissible_word(C.hexagon_word((1, 1)))


def test_json_export():
    d = json.loads(hc.transition_graph().to_json())
    assert len(d["nodes"]) == 13 and len(d["edges"]) == 78
    assert sorted(len(c) for c in d["components"]) == [6, 7]
    assert all(len(e) == 3 and len(e[0]) == 6 for e in d["edges"])
