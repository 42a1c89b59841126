"""Integer geometry of the honeycomb lattice.

A site is stored as (p, q) with Euclidean position x = p/2, y = q*sqrt(3)/2.
Hexagon faces are named by their centers, which live on p = 1 (mod 3) and
so never collide with site coordinates.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

from .errors import CoordinateError, GeometryError

SQRT3 = math.sqrt(3.0)

# displacement of direction k (angle 60k degrees) in (p, q) units
DIRECTIONS = ((2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1))

MINUS_DIRS = (0, 2, 4)
PLUS_DIRS = (1, 3, 5)

# ring vertices of a hexagon relative to its center, clockwise from east
RING_OFFSETS = ((2, 0), (1, -1), (-1, -1), (-2, 0), (-1, 1), (1, 1))

# centers of the three faces touching a site, relative to the site
_FACES_OF_MINUS = ((1, -1), (1, 1), (-2, 0))
_FACES_OF_PLUS = ((-1, -1), (-1, 1), (2, 0))

HEX_NEIGHBOR_OFFSETS = ((3, 1), (0, 2), (-3, 1), (-3, -1), (0, -2), (3, -1))


class Site(NamedTuple):
    p: int
    q: int


class HexId(NamedTuple):
    p: int
    q: int


class Sublattice(Enum):
    PLUS = "plus"
    MINUS = "minus"


def is_site(p: int, q: int) -> bool:
    return (p + q) % 2 == 0 and p % 3 != 1


def is_hex_center(p: int, q: int) -> bool:
    return (p + q) % 2 == 0 and p % 3 == 1


def site(p: int, q: int) -> Site:
    """Validated constructor."""
    if not is_site(p, q):
        raise CoordinateError(f"({p},{q}) is not a honeycomb site")
    return Site(p, q)


def hex_id(p: int, q: int) -> HexId:
    if not is_hex_center(p, q):
        raise CoordinateError(f"({p},{q}) is not a hexagon center")
    return HexId(p, q)


def _check(s) -> None:
    if not is_site(s[0], s[1]):
        raise CoordinateError(f"{tuple(s)} is not a honeycomb site")


def sublattice(s) -> Sublattice:
    _check(s)
    return Sublattice.MINUS if s[0] % 3 == 0 else Sublattice.PLUS


def is_minus(s) -> bool:
    """Fast unchecked sublattice test."""
    return s[0] % 3 == 0


def allowed_directions(s) -> frozenset[int]:
    _check(s)
    return frozenset(MINUS_DIRS if s[0] % 3 == 0 else PLUS_DIRS)


def neighbor(s, d: int) -> Site:
    _check(s)
    if d not in (MINUS_DIRS if s[0] % 3 == 0 else PLUS_DIRS):
        raise GeometryError(f"direction d{d} is not a bond at {tuple(s)}")
    dp, dq = DIRECTIONS[d]
    return Site(s[0] + dp, s[1] + dq)


def opposite(d: int) -> int:
    return (d + 3) % 6


def rotate(d: int, z: int) -> int:
    """Right scatterer (z=+1) turns by -60 degrees, left by +60."""
    if z not in (1, -1):
        raise ValueError(f"orientation must be +1 or -1, got {z}")
    return (d - z) % 6


def rotation_matrix(z: int) -> tuple[tuple[float, float], tuple[float, float]]:
    """Euclidean rotation by -z*60 degrees."""
    a = -z * math.pi / 3
    return ((math.cos(a), -math.sin(a)), (math.sin(a), math.cos(a)))


def direction_vector(d: int) -> tuple[float, float]:
    dp, dq = DIRECTIONS[d]
    return (dp / 2, dq * SQRT3 / 2)


def euclidean(s) -> tuple[float, float]:
    _check(s)
    return (s[0] / 2, s[1] * SQRT3 / 2)


def norm4(dp: int, dq: int) -> int:
    """Four times the squared Euclidean length of a (p, q) displacement."""
    return dp * dp + 3 * dq * dq


def squared_distance(a, b=(0, 0)) -> float:
    return norm4(a[0] - b[0], a[1] - b[1]) / 4


def hexagons_containing(s) -> frozenset[HexId]:
    _check(s)
    offs = _FACES_OF_MINUS if s[0] % 3 == 0 else _FACES_OF_PLUS
    return frozenset(HexId(s[0] + a, s[1] + b) for a, b in offs)


def ring(h) -> tuple[Site, ...]:
    """The six boundary sites of a hexagon, clockwise from its east vertex."""
    if not is_hex_center(h[0], h[1]):
        raise CoordinateError(f"{tuple(h)} is not a hexagon center")
    return tuple(Site(h[0] + a, h[1] + b) for a, b in RING_OFFSETS)


def ring_direction(k: int) -> int:
    """Direction from ring vertex k to vertex k+1 (clockwise travel)."""
    a, b = RING_OFFSETS[k]
    c, d = RING_OFFSETS[(k + 1) % 6]
    return DIRECTIONS.index((c - a, d - b))


def external_direction(k: int) -> int:
    """Direction of the bond leaving ring vertex k away from the center."""
    return DIRECTIONS.index(RING_OFFSETS[k])


def hex_neighbors(h) -> tuple[HexId, ...]:
    if not is_hex_center(h[0], h[1]):
        raise CoordinateError(f"{tuple(h)} is not a hexagon center")
    return tuple(HexId(h[0] + a, h[1] + b) for a, b in HEX_NEIGHBOR_OFFSETS)


def hex_disc(center, radius: int) -> list[HexId]:
    """Hexagons within `radius` face-steps of `center`, ordered ring by ring.

    Radii 0, 1, 2 give 1, 7 and 19 faces.
    """
    c = HexId(*center)
    seen = {c}
    out = [c]
    frontier = [c]
    for _ in range(radius):
        nxt = []
        for h in frontier:
            for n in hex_neighbors(h):
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
        nxt.sort()
        out.extend(nxt)
        frontier = nxt
    return out


def reflect_q(s) -> Site:
    """Mirror through the horizontal axis y = 0."""
    return Site(s[0], -s[1])


def reflect_x_half(s) -> Site:
    """Mirror through the vertical line x = 1/2."""
    return Site(2 - s[0], s[1])


def reflect_direction_q(d: int) -> int:
    return (-d) % 6


def rotate_site60(p: int, q: int) -> tuple[int, int]:
    """Rotate a (p, q) vector by +60 degrees about the origin."""
    return ((p - 3 * q) // 2, (p + q) // 2)


def bravais_cell(s) -> tuple[int, int, int]:
    """Split a site into (i, j, basis) with s = i*(3,1) + j*(3,-1) + (0|2, 0)."""
    _check(s)
    bp = 0 if s[0] % 3 == 0 else 2
    total = (s[0] - bp) // 3
    return ((total + s[1]) // 2, (total - s[1]) // 2, bp)
