"""Scatterer configurations: an immutable background pattern plus sparse overrides."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ContractError, CoordinateError
from .lattice import RING_OFFSETS, Site, is_hex_center, is_site

RIGHT = 1
LEFT = -1

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 output for state x (the state is advanced first)."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def site_key(seed: int, p: int, q: int) -> int:
    return (seed ^ (((p & 0xFFFFFFFF) << 32) | (q & 0xFFFFFFFF))) & MASK64


def is_translation(v) -> bool:
    """True if v is a Bravais vector, i.e. an integer combination of (3,1), (3,-1)."""
    p, q = v
    return p % 3 == 0 and (p // 3 - q) % 2 == 0


class Pattern:
    """Background orientation field. Subclasses implement `value`."""

    kind = "pattern"

    def value(self, p: int, q: int) -> int:
        raise NotImplementedError

    def __call__(self, s) -> int:
        return self.value(s[0], s[1])

    @property
    def period(self):
        """Two independent translation vectors, or None for aperiodic patterns."""
        return None

    def params(self) -> dict:
        return {}

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params()}

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))

    def __repr__(self):
        return f"{type(self).__name__}({self.params()})"


class Uniform(Pattern):
    def __init__(self, value: int):
        if value not in (1, -1):
            raise ContractError("uniform orientation must be +1 or -1")
        self._v = value
        self.kind = "all-right" if value == 1 else "all-left"

    def value(self, p, q):
        return self._v

    @property
    def period(self):
        return ((3, 1), (3, -1))


def _det(v1, v2) -> int:
    return v1[0] * v2[1] - v1[1] * v2[0]


def reduce_site(p: int, q: int, v1, v2) -> tuple[int, int]:
    """Translate (p, q) into the half-open parallelogram spanned by v1, v2."""
    det = _det(v1, v2)
    i = (p * v2[1] - q * v2[0]) // det
    j = (v1[0] * q - v1[1] * p) // det
    return (p - i * v1[0] - j * v2[0], q - i * v1[1] - j * v2[1])


def fundamental_sites(v1, v2) -> list[Site]:
    """All sites s with reduce_site(s) == s, sorted."""
    corners = [(0, 0), v1, v2, (v1[0] + v2[0], v1[1] + v2[1])]
    pmin = min(c[0] for c in corners)
    pmax = max(c[0] for c in corners)
    qmin = min(c[1] for c in corners)
    qmax = max(c[1] for c in corners)
    out = []
    for p in range(pmin, pmax + 1):
        for q in range(qmin, qmax + 1):
            if is_site(p, q) and reduce_site(p, q, v1, v2) == (p, q):
                out.append(Site(p, q))
    return out


class PeriodicTile(Pattern):
    """Periodic pattern: explicit orientations for the sites of one cell, `default` elsewhere."""

    kind = "tile"

    def __init__(self, v1, v2, cells: dict | None = None, default: int = RIGHT):
        v1 = (int(v1[0]), int(v1[1]))
        v2 = (int(v2[0]), int(v2[1]))
        if not (is_translation(v1) and is_translation(v2)):
            raise ContractError(f"period vectors {v1}, {v2} do not map sites to sites")
        if _det(v1, v2) == 0:
            raise ContractError("period vectors are linearly dependent")
        if default not in (1, -1):
            raise ContractError("default orientation must be +1 or -1")
        self.v1, self.v2, self.default = v1, v2, default
        self.cells = {}
        for s, z in (cells or {}).items():
            if not is_site(s[0], s[1]):
                raise CoordinateError(f"{tuple(s)} is not a site")
            if z not in (1, -1):
                raise ContractError(f"orientation {z} at {tuple(s)}")
            self.cells[reduce_site(s[0], s[1], v1, v2)] = z

    def value(self, p, q):
        return self.cells.get(reduce_site(p, q, self.v1, self.v2), self.default)

    @property
    def period(self):
        return (self.v1, self.v2)

    def params(self):
        return {
            "v1": list(self.v1),
            "v2": list(self.v2),
            "default": self.default,
            "cells": sorted([p, q, z] for (p, q), z in self.cells.items()),
        }


class PatternA(PeriodicTile):
    """All right scatterers with periodically repeated all-left hexagons."""

    kind = "a"

    def __init__(self, v1=(9, 3), v2=(9, -3), anchors=((1, -1),)):
        cells = {}
        for h in anchors:
            if not is_hex_center(h[0], h[1]):
                raise CoordinateError(f"anchor {tuple(h)} is not a hexagon center")
            for a, b in RING_OFFSETS:
                cells[(h[0] + a, h[1] + b)] = LEFT
        super().__init__(v1, v2, cells, RIGHT)
        self.anchors = tuple((int(h[0]), int(h[1])) for h in anchors)

    def params(self):
        return {"v1": list(self.v1), "v2": list(self.v2), "anchors": [list(h) for h in self.anchors]}


class PatternB(Pattern):
    """Horizontal layers of `thickness` rows, alternating right and left.

    Rows with floor((q - phase) / thickness) even are right.
    """

    kind = "b"

    def __init__(self, thickness: int = 3, phase: int = 0):
        if thickness < 1:
            raise ContractError("layer thickness must be positive")
        self.thickness, self.phase = int(thickness), int(phase)

    def value(self, p, q):
        return RIGHT if ((q - self.phase) // self.thickness) % 2 == 0 else LEFT

    @property
    def period(self):
        return ((6, 0), (0, 2 * self.thickness))

    def params(self):
        return {"thickness": self.thickness, "phase": self.phase}


class RandomPattern(Pattern):
    """Independent orientations from a stateless splitmix64 hash of (seed, p, q)."""

    kind = "random"

    def __init__(self, seed: int = 0, prob_right: float = 0.5):
        if not 0.0 <= prob_right <= 1.0:
            raise ContractError("probability must lie in [0, 1]")
        self.seed, self.prob_right = int(seed) & MASK64, float(prob_right)

    def value(self, p, q):
        u = (splitmix64(site_key(self.seed, p, q)) >> 11) * (1.0 / (1 << 53))
        return RIGHT if u < self.prob_right else LEFT

    def params(self):
        return {"seed": self.seed, "prob_right": self.prob_right}


class PhiPattern(Pattern):
    """Background with Minus-sublattice orientations negated."""

    kind = "phi"

    def __init__(self, inner: Pattern):
        self.inner = inner

    def value(self, p, q):
        v = self.inner.value(p, q)
        return -v if p % 3 == 0 else v

    @property
    def period(self):
        return self.inner.period

    def params(self):
        return {"inner": self.inner.to_dict()}


def phi_pattern(pat: Pattern) -> Pattern:
    if isinstance(pat, PhiPattern):
        return pat.inner
    return PhiPattern(pat)


def all_right() -> Pattern:
    return Uniform(RIGHT)


def all_left() -> Pattern:
    return Uniform(LEFT)


def pattern_from_dict(d: dict) -> Pattern:
    kind = d.get("kind")
    params = d.get("params") or {}
    try:
        if kind == "all-right":
            return all_right()
        if kind == "all-left":
            return all_left()
        if kind == "a":
            return PatternA(**{k: (tuple(map(tuple, v)) if k == "anchors" else tuple(v)) for k, v in params.items()})
        if kind == "b":
            return PatternB(**params)
        if kind == "tile":
            cells = {(c[0], c[1]): c[2] for c in params.get("cells", [])}
            return PeriodicTile(params["v1"], params["v2"], cells, params.get("default", RIGHT))
        if kind == "random":
            return RandomPattern(**params)
        if kind == "phi":
            return PhiPattern(pattern_from_dict(params["inner"]))
    except (KeyError, TypeError) as e:
        raise ContractError(f"bad parameters for pattern {kind!r}: {e}") from None
    raise ContractError(f"unknown pattern kind {kind!r}")


class Configuration:
    """Orientation field C. `overrides` holds every site that has ever been flipped."""

    __slots__ = ("background", "overrides", "flip_count")

    def __init__(self, background: Pattern, overrides: dict | None = None, flip_count: int = 0):
        self.background = background
        self.overrides = {}
        for s, z in (overrides or {}).items():
            if not is_site(s[0], s[1]):
                raise CoordinateError(f"{tuple(s)} is not a site")
            if z not in (1, -1):
                raise ContractError(f"orientation {z} at {tuple(s)}")
            self.overrides[(s[0], s[1])] = z
        self.flip_count = flip_count

    def orientation(self, s) -> int:
        z = self.overrides.get((s[0], s[1]))
        return self.background.value(s[0], s[1]) if z is None else z

    def flip(self, s) -> "Configuration":
        key = (s[0], s[1])
        self.overrides[key] = -self.orientation(key)
        self.flip_count += 1
        return self

    def copy(self) -> "Configuration":
        return Configuration(self.background, dict(self.overrides), self.flip_count)

    def phi(self) -> "Configuration":
        ov = {s: (-z if s[0] % 3 == 0 else z) for s, z in self.overrides.items()}
        return Configuration(phi_pattern(self.background), ov, self.flip_count)

    def hexagon_word(self, h) -> tuple[int, ...]:
        if not is_hex_center(h[0], h[1]):
            raise CoordinateError(f"{tuple(h)} is not a hexagon center")
        return tuple(self.orientation((h[0] + a, h[1] + b)) for a, b in RING_OFFSETS)

    def changed_sites(self) -> Iterator[Site]:
        """Sites whose current orientation differs from the background."""
        for s, z in self.overrides.items():
            if z != self.background.value(*s):
                yield Site(*s)

    def to_dict(self) -> dict:
        d = self.background.to_dict()
        d["overrides"] = sorted([p, q, z] for (p, q), z in self.overrides.items())
        return d

    def __repr__(self):
        return f"Configuration({self.background!r}, {len(self.overrides)} overrides, flips={self.flip_count})"


def orientation(C: Configuration, s) -> int:
    return C.orientation(s)


def flip(C: Configuration, s) -> Configuration:
    return C.flip(s)


def phi(C: Configuration) -> Configuration:
    return C.phi()


def hexagon_word(C: Configuration, h) -> tuple[int, ...]:
    return C.hexagon_word(h)


def configuration_from_dict(d: dict) -> Configuration:
    pat = pattern_from_dict(d)
    ov = {}
    for item in d.get("overrides") or []:
        if len(item) != 3:
            raise ContractError(f"override entry {item!r} is not [p, q, z]")
        ov[(int(item[0]), int(item[1]))] = int(item[2])
    return Configuration(pat, ov)


def load_configuration(path: str | Path) -> Configuration:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as e:
            raise ContractError(f"{path}: {e}") from None
    if not isinstance(d, dict):
        raise ContractError(f"{path}: expected a JSON object")
    return configuration_from_dict(d)


def with_overrides(pat: Pattern, items: Iterable) -> Configuration:
    return Configuration(pat, {(p, q): z for p, q, z in items})
