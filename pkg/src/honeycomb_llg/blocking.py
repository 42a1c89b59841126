"""Worst-case first-return times of periodic configurations and the recurrence probe."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .config import Configuration, fundamental_sites
from .dynamics import InitialCondition, initial_condition
from .errors import BudgetExceeded, ContractError
from .lattice import DIRECTIONS, MINUS_DIRS, PLUS_DIRS, Site, rotate_site60


def _walk(I, C: Configuration, bound: int, keep_path: bool):
    (p, q), k = I
    p0, q0 = p, q
    over = dict(C.overrides)  # probe works on a private copy
    bg = C.background.value
    path = [(p, q)] if keep_path else None
    for t in range(1, bound + 1):
        dp, dq = DIRECTIONS[k]
        p += dp
        q += dq
        s = (p, q)
        z = over.get(s)
        if z is None:
            z = bg(p, q)
        over[s] = -z
        k = (k - z) % 6
        if keep_path:
            path.append(s)
        if p == p0 and q == q0:
            return t, path
    return None, path


def first_return_time(I, C: Configuration, bound: int) -> int | None:
    """Smallest t >= 1 with r(t) = r(0), or None if it exceeds `bound`. C is not modified."""
    if bound < 1:
        raise ContractError("bound must be at least 1")
    initial_condition(I[0][0], I[0][1], I[1])
    return _walk(I, C, bound, False)[0]


def first_return_path(I, C: Configuration, bound: int) -> list | None:
    t, path = _walk(I, C, bound, True)
    return None if t is None else path


def shape_key(sites) -> tuple:
    """Canonical form of a site set under the 12 point symmetries and translation."""
    pts = {(s[0], s[1]) for s in sites}
    best = None
    for refl in (False, True):
        cur = [(p, -q) for p, q in pts] if refl else list(pts)
        for _ in range(6):
            cur = [rotate_site60(p, q) for p, q in cur]
            mp = min(cur)
            key = tuple(sorted((p - mp[0], q - mp[1]) for p, q in cur))
            if best is None or key < best:
                best = key
    return best


@dataclass
class ShapeClass:
    key: tuple
    length: int
    count: int
    example: InitialCondition
    sites: list


@dataclass
class BlockingReport:
    blocking_time: int | None
    bound: int
    witness: InitialCondition
    probes: int
    lengths: Counter = field(default_factory=Counter)
    shapes: list = field(default_factory=list)

    @property
    def blocking(self) -> bool:
        return self.blocking_time is not None

    def to_dict(self) -> dict:
        return {
            "tau_b": self.blocking_time,
            "not_blocking_within": None if self.blocking else self.bound,
            "witness": {"p": self.witness.site[0], "q": self.witness.site[1], "k": self.witness.dir},
            "probes": self.probes,
            "lengths": {str(k): v for k, v in sorted(self.lengths.items())},
            "cycles_by_shape": [
                {
                    "length": sh.length,
                    "count": sh.count,
                    "example": {"p": sh.example.site[0], "q": sh.example.site[1], "k": sh.example.dir},
                    "sites": [list(s) for s in sh.sites],
                }
                for sh in self.shapes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def blocking_time(C: Configuration, bound: int = 10_000) -> BlockingReport:
    """Maximise the first-return time over one period of sites times their 3 directions."""
    if C.overrides:
        raise ContractError("blocking_time needs an untouched periodic configuration")
    period = C.background.period
    if period is None:
        raise ContractError(f"{C.background!r} has no declared period")
    worst, witness, probes = 0, None, 0
    lengths = Counter()
    shapes = {}
    for s in fundamental_sites(*period):
        for d in MINUS_DIRS if s[0] % 3 == 0 else PLUS_DIRS:
            I = InitialCondition(s, d)
            t, path = _walk(I, C, bound, True)
            probes += 1
            if t is None:
                return BlockingReport(None, bound, I, probes, lengths, [])
            lengths[t] += 1
            key = shape_key(path)
            if key in shapes:
                shapes[key].count += 1
            else:
                shapes[key] = ShapeClass(key, t, 1, I, [Site(*x) for x in path])
            if t > worst:
                worst, witness = t, I
    return BlockingReport(worst, bound, witness, probes, lengths, sorted(shapes.values(), key=lambda x: (x.length, x.key)))


def recurrence_probe(I, C: Configuration, n_returns: int, step_budget: int) -> list[int]:
    """Return times tau_1..tau_n of a run on a copy of C; BudgetExceeded carries the partial list."""
    (p, q), k = I
    initial_condition(p, q, k)
    p0, q0 = p, q
    over = dict(C.overrides)
    bg = C.background.value
    found = []
    if n_returns <= 0:
        return found
    for t in range(1, step_budget + 1):
        dp, dq = DIRECTIONS[k]
        p += dp
        q += dq
        s = (p, q)
        z = over.get(s)
        if z is None:
            z = bg(p, q)
        over[s] = -z
        k = (k - z) % 6
        if p == p0 and q == q0:
            found.append(t)
            if len(found) == n_returns:
                return found
    raise BudgetExceeded(f"only {len(found)} of {n_returns} returns within {step_budget} steps", partial=found)
