"""Flipping-rotator and flipping-mirror steppers and trajectory recording."""
from __future__ import annotations

import csv
from array import array
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .config import Configuration
from .errors import BudgetExceeded, CoordinateError, GeometryError
from .lattice import DIRECTIONS, MINUS_DIRS, PLUS_DIRS, Site, is_site

# a run longer than this must be requested explicitly through `budget`
DEFAULT_STEP_BUDGET = 50_000_000


class SystemKind(Enum):
    ROTATOR = "rotator"
    MIRROR = "mirror"


ROTATOR = SystemKind.ROTATOR
MIRROR = SystemKind.MIRROR


class InitialCondition(NamedTuple):
    site: Site = Site(0, 0)
    dir: int = 0


class ParticleState(NamedTuple):
    site: Site
    dir: int
    time: int = 0


def _validate(s, d):
    if not is_site(s[0], s[1]):
        raise CoordinateError(f"{tuple(s)} is not a honeycomb site")
    if d not in (MINUS_DIRS if s[0] % 3 == 0 else PLUS_DIRS):
        raise GeometryError(f"direction d{d} is not a bond at {tuple(s)}")


def initial_condition(p: int = 0, q: int = 0, k: int = 0) -> InitialCondition:
    _validate((p, q), k)
    return InitialCondition(Site(p, q), k)


@dataclass
class Trajectory:
    """Recorded positions (and optionally directions) for t = 0..T."""

    p: np.ndarray
    q: np.ndarray
    k: np.ndarray | None
    kind: SystemKind = ROTATOR
    final_dir: int = 0
    _sites: list | None = field(default=None, repr=False)

    @property
    def T(self) -> int:
        return len(self.p) - 1

    def __len__(self):
        return len(self.p)

    def site(self, t: int) -> Site:
        return Site(int(self.p[t]), int(self.q[t]))

    @property
    def positions(self) -> list[Site]:
        if self._sites is None:
            self._sites = [Site(a, b) for a, b in zip(self.p.tolist(), self.q.tolist())]
        return self._sites

    @property
    def dirs(self) -> np.ndarray:
        if self.k is None:
            raise ValueError("trajectory was recorded without directions")
        return self.k

    def state(self, t: int) -> ParticleState:
        return ParticleState(self.site(t), int(self.dirs[t]), t)


def step(kind: SystemKind, st: ParticleState, C: Configuration) -> tuple[ParticleState, Configuration]:
    """Move, scatter with the pre-flip orientation, then flip the arrival site."""
    dp, dq = DIRECTIONS[st.dir]
    s = Site(st.site[0] + dp, st.site[1] + dq)
    z = C.orientation(s)
    if kind is MIRROR and s[0] % 3 == 0:
        z = -z
    C.flip(s)
    return ParticleState(s, (st.dir - z) % 6, st.time + 1), C


def run(
    kind: SystemKind,
    I: InitialCondition,
    C: Configuration,
    T: int,
    record_dirs: bool = True,
    budget: int = DEFAULT_STEP_BUDGET,
) -> Trajectory:
    """Run T steps, mutating C into C(T)."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    if T > budget:
        raise BudgetExceeded(f"{T} steps requested, budget is {budget}")
    (p, q), k = I
    _validate((p, q), k)
    ps = array("i", [p]) * (T + 1)
    qs = array("i", [q]) * (T + 1)
    ks = array("b", [k]) * (T + 1) if record_dirs else None
    over = C.overrides
    bg = C.background.value
    mirror = kind is MIRROR
    D = DIRECTIONS
    for t in range(1, T + 1):
        dp, dq = D[k]
        p += dp
        q += dq
        s = (p, q)
        z = over.get(s)
        if z is None:
            z = bg(p, q)
        over[s] = -z
        if mirror and p % 3 == 0:
            z = -z
        k = (k - z) % 6
        ps[t] = p
        qs[t] = q
        if ks is not None:
            ks[t] = k
    C.flip_count += T
    return Trajectory(
        np.frombuffer(ps, dtype=np.int32).astype(np.int64),
        np.frombuffer(qs, dtype=np.int32).astype(np.int64),
        None if ks is None else np.frombuffer(ks, dtype=np.int8).astype(np.int64),
        kind,
        k,
    )


def check_equivalence(I: InitialCondition, C: Configuration, T: int) -> bool:
    """Both directions of the rotator/mirror correspondence under phi."""
    a = run(ROTATOR, I, C.copy(), T, record_dirs=False)
    b = run(MIRROR, I, C.phi(), T, record_dirs=False)
    if not (np.array_equal(a.p, b.p) and np.array_equal(a.q, b.q)):
        return False
    a = run(MIRROR, I, C.copy(), T, record_dirs=False)
    b = run(ROTATOR, I, C.phi(), T, record_dirs=False)
    return bool(np.array_equal(a.p, b.p) and np.array_equal(a.q, b.q))


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "p", "q", "k"])
        ks = traj.k.tolist() if traj.k is not None else [""] * len(traj)
        for t, (a, b, c) in enumerate(zip(traj.p.tolist(), traj.q.tolist(), ks)):
            w.writerow([t, a, b, c])


def bonds_valid(traj: Trajectory) -> bool:
    """Every consecutive pair of positions is a lattice bond leaving the right sublattice."""
    dp = np.diff(traj.p)
    dq = np.diff(traj.q)
    ok = ((np.abs(dp) == 2) & (dq == 0)) | ((np.abs(dp) == 1) & (np.abs(dq) == 1))
    if not ok.all():
        return False
    # a Minus site may only be left along d0, d2, d4, i.e. with dp in {2, -1}
    minus = traj.p[:-1] % 3 == 0
    return bool(np.all(np.where(minus, (dp == 2) | (dp == -1), (dp == -2) | (dp == 1))))
