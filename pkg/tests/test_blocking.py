import json
import random

import pytest
from sims import all_right_run, pattern_a_run

from honeycomb_llg.blocking import (
    blocking_time,
    first_return_path,
    first_return_time,
    recurrence_probe,
    shape_key,
)
from honeycomb_llg.config import Configuration, PatternA, PatternB, RandomPattern, all_left, all_right
from honeycomb_llg.cycles import cycle_lengths, longest_new_site_run
from honeycomb_llg.dynamics import InitialCondition, initial_condition
from honeycomb_llg.errors import BudgetExceeded, ContractError
from honeycomb_llg.lattice import allowed_directions, is_site, rotate_site60

I0 = InitialCondition()


def sample_states(n, seed=0, r=40):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = (rng.randint(-r, r), rng.randint(-r, r))
        if is_site(*s):
            for d in allowed_directions(s):
                out.append(InitialCondition(s, d))
    return out


def test_uniform_first_return_six():
    for I in sample_states(50):
        assert first_return_time(I, Configuration(all_right()), 100) == 6
        assert first_return_time(I, Configuration(all_left()), 100) == 6


def test_probe_is_pure():
    C = Configuration(PatternA())
    first_return_time(I0, C, 1000)
    blocking_time(C)
    assert C.overrides == {} and C.flip_count == 0


def test_pattern_b_escapes():
    assert first_return_time(I0, Configuration(PatternB()), 100_000) is None
    rep = blocking_time(Configuration(PatternB()), 10_000)
    assert not rep.blocking and rep.blocking_time is None
    assert first_return_time(rep.witness, Configuration(PatternB()), 10_000) is None


def test_blocking_all_right():
    rep = blocking_time(Configuration(all_right()))
    assert rep.blocking_time == 6 and rep.probes == 6 and len(rep.shapes) == 1


def test_fundamental_domain_agrees_with_wider_enumeration():
    C = Configuration(PatternA())
    rep = blocking_time(C)
    worst, shapes = 0, set()
    for p in range(-20, 21):
        for q in range(-8, 9):
            if is_site(p, q):
                for d in allowed_directions((p, q)):
                    I = InitialCondition((p, q), d)
                    path = first_return_path(I, C, 1000)
                    worst = max(worst, len(path) - 1)
                    shapes.add(shape_key(path))
    assert rep.blocking_time == worst
    assert {s.key for s in rep.shapes} == shapes
    assert sum(rep.lengths.values()) == rep.probes == 3 * 18


def test_contract_errors():
    with pytest.raises(ContractError):
        blocking_time(Configuration(all_right(), {(0, 0): -1}))
    with pytest.raises(ContractError):
        blocking_time(Configuration(RandomPattern(1)))
    with pytest.raises(ContractError):
        first_return_time(I0, Configuration(all_right()), 0)


def test_shape_key_invariance():
    path = first_return_path(InitialCondition((0, 0), 0), Configuration(PatternA()), 100)
    rot = [rotate_site60(*s) for s in path]
    moved = [(p + 9, q - 3) for p, q in rot]
    mirrored = [(p, -q) for p, q in path]
    assert shape_key(path) == shape_key(moved) == shape_key(mirrored)
    hexagon = first_return_path(I0, Configuration(all_right()), 10)
    assert shape_key(path) != shape_key(hexagon)


def test_recurrence_probe():
    _, d = all_right_run()
    times = recurrence_probe(I0, Configuration(all_right()), 180, 10**6)
    assert times == d.return_times[1:181]
    assert len(recurrence_probe(I0, Configuration(PatternA()), 380, 10**6)) == 380
    with pytest.raises(BudgetExceeded) as e:
        recurrence_probe(I0, Configuration(PatternB()), 1, 100_000)
    assert e.value.partial == []


def test_new_site_runs_bounded_by_blocking_time():
    for (tr, _), pat in ((all_right_run(), all_right()), (pattern_a_run(), PatternA())):
        tau_b = blocking_time(Configuration(pat)).blocking_time
        assert longest_new_site_run(tr) <= tau_b - 1


def test_report_json():
    d = json.loads(blocking_time(Configuration(PatternA())).to_json())
    assert set(d) >= {"tau_b", "witness", "cycles_by_shape"}
    assert set(d["witness"]) == {"p", "q", "k"}
    assert sum(s["count"] for s in d["cycles_by_shape"]) == d["probes"]
    d = json.loads(blocking_time(Configuration(PatternB())).to_json())
    assert d["tau_b"] is None and d["not_blocking_within"] == 10_000
