"""Local crossings and local cycles on unions of hexagons, and triperfect partitions."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .config import Configuration
from .errors import BudgetExceeded, InternalError
from .lattice import DIRECTIONS, MINUS_DIRS, PLUS_DIRS, HexId, Site, hexagons_containing, opposite, ring

STEP_GUARD = 1_000_000
CROSSING = "crossing"
LOCAL_CYCLE = "cycle"


def _dirs(s):
    return MINUS_DIRS if s[0] % 3 == 0 else PLUS_DIRS


def _nb(s, k):
    return (s[0] + DIRECTIONS[k][0], s[1] + DIRECTIONS[k][1])


@dataclass(frozen=True)
class Region:
    hexes: tuple
    sites: frozenset
    ports: tuple  # (site, outward direction)

    def __len__(self):
        return len(self.hexes)

    def hex_rank(self) -> dict:
        """Site -> index of the first hexagon (in region order) that contains it."""
        rank = {}
        for i, h in enumerate(self.hexes):
            for s in ring(h):
                rank.setdefault(s, i)
        return rank


def make_region(hexes: Iterable) -> Region:
    hs = []
    for h in hexes:
        h = HexId(*h)
        if h not in hs:
            hs.append(h)
    sites = frozenset(s for h in hs for s in ring(h))
    ports = tuple(sorted((s, d) for s in sites for d in _dirs(s) if _nb(s, d) not in sites))
    return Region(tuple(hs), sites, ports)


def _normalize_cycle(states) -> tuple:
    i = min(range(len(states)), key=lambda j: states[j])
    return tuple(states[i:] + states[:i])


@dataclass(frozen=True)
class LocalTrajectory:
    kind: str
    states: tuple  # ((p, q), outgoing direction) per visited site

    @property
    def sites(self) -> list:
        return [s for s, _ in self.states]

    @property
    def site_set(self) -> frozenset:
        return frozenset(self.sites)

    def is_self_avoiding(self) -> bool:
        return len(self.site_set) == len(self.states)


def _orient(C, overlay, s):
    z = overlay.get(s)
    return C.orientation(s) if z is None else z


def trace_crossing(region: Region, C: Configuration, port) -> LocalTrajectory:
    """Enter through `port` (arriving against its outward direction) and run until exit."""
    s, d = port
    k = opposite(d)
    overlay, states = {}, []
    for _ in range(STEP_GUARD):
        z = _orient(C, overlay, s)
        k = (k - z) % 6
        overlay[s] = -z
        states.append((s, k))
        n = _nb(s, k)
        if n not in region.sites:
            return LocalTrajectory(CROSSING, tuple(states))
        s = n
    raise InternalError(f"crossing from {port} exceeded the step guard")


def trace_from_state(region: Region, C: Configuration, state):
    """Run from an interior (site, outgoing direction) with the base scatterer untouched.

    Returns a LocalTrajectory if the particle comes back to the base with the same
    outgoing direction, else None when it leaves the region.
    """
    s0, d0 = state
    overlay = {}
    s, k = s0, d0
    states = [(s0, d0)]
    for _ in range(STEP_GUARD):
        s = _nb(s, k)
        if s not in region.sites:
            return None
        z = _orient(C, overlay, s)
        k = (k - z) % 6
        overlay[s] = -z
        if (s, k) == (s0, d0):
            return LocalTrajectory(LOCAL_CYCLE, _normalize_cycle(states))
        states.append((s, k))
    raise InternalError(f"seed {state} exceeded the step guard")


@dataclass
class LocalTrajectorySet:
    region: Region
    trajectories: list
    cover: dict = field(default_factory=dict)  # site -> number of trajectories through it

    def __iter__(self):
        return iter(self.trajectories)

    def __len__(self):
        return len(self.trajectories)

    @property
    def crossings(self):
        return [t for t in self.trajectories if t.kind == CROSSING]

    @property
    def cycles(self):
        return [t for t in self.trajectories if t.kind == LOCAL_CYCLE]

    def cover_violations(self) -> dict:
        return {s: n for s, n in self.cover.items() if n != 3}


def enumerate_local_trajectories(region: Region, C: Configuration) -> LocalTrajectorySet:
    trajs = [trace_crossing(region, C, port) for port in region.ports]
    seen_cycles = set()
    explained = set()
    for s in sorted(region.sites):
        for d in _dirs(s):
            if _nb(s, d) not in region.sites or (s, d) in explained:
                continue
            explained.add((s, d))
            lt = trace_from_state(region, C, (s, d))
            if lt is not None and lt.states not in seen_cycles:
                seen_cycles.add(lt.states)
                explained.update(lt.states)
                trajs.append(lt)
    cover = {s: 0 for s in region.sites}
    for t in trajs:
        for s in t.site_set:
            cover[s] += 1
    return LocalTrajectorySet(region, trajs, cover)


@dataclass
class TriperfectPartition:
    region: Region
    trajectories: list
    parts: list  # parts[i] in {0, 1, 2}

    def assignment(self) -> dict:
        return dict(zip(self.trajectories, self.parts))

    def to_dict(self) -> dict:
        return {
            "hexes": [list(h) for h in self.region.hexes],
            "trajectories": [
                {
                    "index": i,
                    "kind": t.kind,
                    "part": p,
                    "sites": [list(s) for s in t.sites],
                    "dirs": [k for _, k in t.states],
                }
                for i, (t, p) in enumerate(zip(self.trajectories, self.parts))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def verify_triperfect(region: Region, C: Configuration, assignment: Mapping) -> bool:
    """Crossings self-avoiding and every site on exactly one trajectory of each part."""
    if isinstance(assignment, TriperfectPartition):
        assignment = assignment.assignment()
    trajs = enumerate_local_trajectories(region, C).trajectories
    if set(trajs) != set(assignment) or any(p not in (0, 1, 2) for p in assignment.values()):
        return False
    if not all(t.is_self_avoiding() for t in trajs if t.kind == CROSSING):
        return False
    by_site = {s: [] for s in region.sites}
    for t in trajs:
        for s in t.site_set:
            by_site[s].append(assignment[t])
    return all(sorted(v) == [0, 1, 2] for v in by_site.values())


def find_triperfect(region: Region, C: Configuration, budget: int = 1_000_000) -> TriperfectPartition | None:
    """Exact 3-colouring of the site-sharing graph of local trajectories.

    Returns None when a crossing is not self-avoiding, a site is not on exactly
    three trajectories, or no colouring exists.
    """
    lts = enumerate_local_trajectories(region, C)
    trajs = lts.trajectories
    if not trajs:
        return TriperfectPartition(region, [], [])
    if lts.cover_violations() or not all(t.is_self_avoiding() for t in lts.crossings):
        return None
    by_site = {s: [] for s in region.sites}
    for i, t in enumerate(trajs):
        for s in t.site_set:
            by_site[s].append(i)
    adj = [set() for _ in trajs]
    for ids in by_site.values():
        for a, b in itertools.combinations(ids, 2):
            adj[a].add(b)
            adj[b].add(a)
    # grow the colouring outward hexagon by hexagon
    rank = region.hex_rank()
    order = sorted(range(len(trajs)), key=lambda i: (min(rank[s] for s in trajs[i].site_set), i))
    pos = {v: n for n, v in enumerate(order)}
    colour = [-1] * len(trajs)
    nodes = 0

    def pick():
        best, key = None, None
        for v in order:
            if colour[v] >= 0:
                continue
            used = {colour[u] for u in adj[v] if colour[u] >= 0}
            k = (-len(used), pos[v])
            if key is None or k < key:
                best, key = v, k
        return best

    def solve() -> bool:
        nonlocal nodes
        v = pick()
        if v is None:
            return True
        used = {colour[u] for u in adj[v] if colour[u] >= 0}
        for c in (0, 1, 2):
            if c in used:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"triperfect search exceeded {budget} nodes")
            colour[v] = c
            if solve():
                return True
            colour[v] = -1
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(trajs) + 100))
    try:
        ok = solve()
    finally:
        sys.setrecursionlimit(limit)
    return TriperfectPartition(region, trajs, colour) if ok else None


def _runs_inside(states, sites):
    """Maximal consecutive pieces of `states` whose sites lie in `sites`."""
    runs, cur = [], []
    for st in states:
        if st[0] in sites:
            cur.append(st)
        elif cur:
            runs.append(tuple(cur))
            cur = []
    if cur:
        runs.append(tuple(cur))
    return runs


def _piece_keys(t: LocalTrajectory, sites) -> list:
    if t.kind == LOCAL_CYCLE and t.site_set <= sites:
        return [(LOCAL_CYCLE, t.states)]
    st = list(t.states)
    if t.kind == LOCAL_CYCLE:
        # rotate so the cycle starts just after leaving `sites`, keeping runs unbroken
        i = next(j for j, x in enumerate(st) if x[0] not in sites)
        st = st[i:] + st[:i]
    return [(CROSSING, r) for r in _runs_inside(st, sites)]


def merge_partitions(a: TriperfectPartition, b: TriperfectPartition, C: Configuration) -> TriperfectPartition | None:
    """Glue partitions of two regions into one on their union, relabelling b's parts.

    Each local trajectory of the union splits into alternating pieces that are local
    trajectories of a or of b; a relabelling is accepted when every union trajectory
    receives a single part from all of its pieces.
    """
    union = make_region(list(a.region.hexes) + list(b.region.hexes))
    trajs = enumerate_local_trajectories(union, C).trajectories
    maps = []
    for part in (a, b):
        m = {}
        for t, p in zip(part.trajectories, part.parts):
            m[(t.kind, t.states)] = p
        maps.append(m)
    pieces = []
    for t in trajs:
        pa = [maps[0].get(k) for k in _piece_keys(t, a.region.sites)]
        pb = [maps[1].get(k) for k in _piece_keys(t, b.region.sites)]
        if None in pa or None in pb:
            return None
        pieces.append((pa, pb))
    for perm in itertools.permutations((0, 1, 2)):
        parts = []
        for pa, pb in pieces:
            labels = set(pa) | {perm[x] for x in pb}
            if len(labels) != 1:
                break
            parts.append(labels.pop())
        else:
            res = TriperfectPartition(union, trajs, parts)
            if verify_triperfect(union, C, res):
                return res
    return None


def hexagons_touching(sites: Iterable) -> set:
    out = set()
    for s in sites:
        out |= hexagons_containing(s)
    return out
