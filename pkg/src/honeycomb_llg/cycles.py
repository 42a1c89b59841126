"""Return times, cycle decomposition and the geometric cycle predicates."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import Trajectory
from .lattice import Site


@dataclass
class Cycle:
    index: int
    base: Site
    t_start: int
    t_end: int
    p: np.ndarray
    q: np.ndarray

    @property
    def length(self) -> int:
        return self.t_end - self.t_start

    @property
    def sites(self) -> list[Site]:
        return [Site(a, b) for a, b in zip(self.p.tolist(), self.q.tolist())]


@dataclass
class Segment:
    """Open stretch after the last observed return."""

    t_start: int
    t_end: int

    @property
    def length(self) -> int:
        return self.t_end - self.t_start


@dataclass
class CycleDecomposition:
    return_times: list[int]
    cycles: list[Cycle]
    trailing: Segment
    horizon: int


def return_times(traj: Trajectory) -> list[int]:
    hits = np.flatnonzero((traj.p == traj.p[0]) & (traj.q == traj.q[0]))
    return hits.tolist()


def decompose(traj: Trajectory) -> CycleDecomposition:
    rt = return_times(traj)
    base = traj.site(0)
    cycles = [
        Cycle(i + 1, base, a, b, traj.p[a : b + 1], traj.q[a : b + 1])
        for i, (a, b) in enumerate(zip(rt, rt[1:]))
    ]
    return CycleDecomposition(rt, cycles, Segment(rt[-1], traj.T), traj.T)


def cycle_lengths(d: CycleDecomposition) -> list[int]:
    return [c.length for c in d.cycles]


def is_self_avoiding(segment: Sequence, half_open: bool = False) -> bool:
    """Pairwise distinct sites; with half_open the last entry may repeat the first."""
    pts = [tuple(s) for s in segment]
    if half_open and len(pts) > 1 and pts[-1] == pts[0]:
        pts = pts[:-1]
    return len(set(pts)) == len(pts)


def cycle_is_self_avoiding(c: Cycle) -> bool:
    if c.length == 0:
        return True
    key = c.p[:-1] * (1 << 32) + c.q[:-1]
    return len(np.unique(key)) == c.length and c.p[-1] == c.p[0] and c.q[-1] == c.q[0]


def is_local_cycle(c: Cycle, dirs) -> bool:
    return int(dirs[c.t_start]) == int(dirs[c.t_end])


def is_symmetric_x_half(c: Cycle) -> bool:
    pts = set(zip(c.p.tolist(), c.q.tolist()))
    return pts == {(2 - a, b) for a, b in pts}


def first_crossing_time(traj: Trajectory, start: int = 0) -> int | None:
    """First t > start at which the particle revisits a site seen in [start, t)."""
    seen = set()
    for t, s in enumerate(zip(traj.p[start:].tolist(), traj.q[start:].tolist()), start):
        if s in seen:
            return t
        seen.add(s)
    return None


def longest_new_site_run(traj: Trajectory) -> int:
    """Longest run of consecutive steps that land on never-visited sites."""
    ps, qs = traj.p.tolist(), traj.q.tolist()
    seen = {(ps[0], qs[0])}
    best = run = 0
    for s in zip(ps[1:], qs[1:]):
        if s in seen:
            run = 0
        else:
            seen.add(s)
            run += 1
            best = max(best, run)
    return best


def cycle_report_rows(d: CycleDecomposition, dirs=None) -> list[tuple]:
    rows = []
    for c in d.cycles:
        local = "" if dirs is None else int(is_local_cycle(c, dirs))
        rows.append((c.index, c.t_start, c.t_end, c.length, local, int(is_symmetric_x_half(c))))
    return rows


def write_cycle_csv(d: CycleDecomposition, path, dirs=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "tau_start", "tau_end", "L", "local", "symmetric"])
        w.writerows(cycle_report_rows(d, dirs))
