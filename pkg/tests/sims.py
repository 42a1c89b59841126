"""Long shared runs, computed once per process."""
from functools import lru_cache

from honeycomb_llg.config import Configuration, PatternA, PatternB, all_right
from honeycomb_llg.cycles import decompose
from honeycomb_llg.dynamics import ROTATOR, InitialCondition, run

HORIZON = 1_000_000


@lru_cache(maxsize=None)
def all_right_run(T=HORIZON):
    tr = run(ROTATOR, InitialCondition(), Configuration(all_right()), T)
    return tr, decompose(tr)


@lru_cache(maxsize=None)
def pattern_a_run(T=HORIZON):
    tr = run(ROTATOR, InitialCondition(), Configuration(PatternA()), T)
    return tr, decompose(tr)


@lru_cache(maxsize=None)
def pattern_b_run(T=100_000):
    tr = run(ROTATOR, InitialCondition(), Configuration(PatternB()), T)
    return tr, decompose(tr)
