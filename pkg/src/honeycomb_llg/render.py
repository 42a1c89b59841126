"""Minimal SVG output for cycles, trajectories and triperfect partitions."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .lattice import SQRT3

SCALE = 20.0  # pixels per unit bond length
MARGIN = 20.0
STROKE = 1.5
BASE_RADIUS = 4.0
PART_STYLES = ("", "6,3", "1.5,3")  # solid, dashed, dotted
PART_COLORS = ("#1f4e9c", "#b2361f", "#2b7a2b")


def _xy(p, q):
    return p / 2, q * SQRT3 / 2


class _Canvas:
    def __init__(self, points):
        xs = [x for x, _ in points] or [0.0]
        ys = [y for _, y in points] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        self.w = (max(xs) - self.x0) * SCALE + 2 * MARGIN
        self.h = (self.y1 - min(ys)) * SCALE + 2 * MARGIN
        self.items = []

    def px(self, x, y):
        return (MARGIN + (x - self.x0) * SCALE, MARGIN + (self.y1 - y) * SCALE)

    def polyline(self, pts, color="#000", dash="", closed=False, offset=(0.0, 0.0)):
        coords = " ".join(f"{a + offset[0]:.2f},{b + offset[1]:.2f}" for a, b in (self.px(*p) for p in pts))
        tag = "polygon" if closed else "polyline"
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{STROKE}"{extra}/>')

    def dot(self, x, y, color="#d00", title=None):
        a, b = self.px(x, y)
        t = f"<title>{escape(title)}</title>" if title else ""
        self.items.append(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="{BASE_RADIUS}" fill="{color}">{t}</circle>')

    def svg(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w:.0f}" height="{self.h:.0f}" '
            f'viewBox="0 0 {self.w:.2f} {self.h:.2f}">'
        )
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def path_svg(sites, base=None, closed=False) -> str:
    pts = [_xy(*s) for s in sites]
    cv = _Canvas(pts)
    cv.polyline(pts, closed=closed)
    if base is not None:
        cv.dot(*_xy(*base), title=f"base {tuple(base)}")
    return cv.svg()


def cycle_svg(cycle) -> str:
    return path_svg(cycle.sites, base=cycle.base)


def partition_svg(partition) -> str:
    allpts = [_xy(*s) for s in partition.region.sites]
    cv = _Canvas(allpts)
    for h in partition.region.hexes:
        ring = [_xy(h[0] + a, h[1] + b) for a, b in ((2, 0), (1, -1), (-1, -1), (-2, 0), (-1, 1), (1, 1))]
        cv.polyline(ring, color="#ccc", closed=True)
    # small per-part offsets keep overlapping trajectories distinguishable
    shift = ((0.0, 0.0), (2.0, 2.0), (-2.0, -2.0))
    for t, part in zip(partition.trajectories, partition.parts):
        pts = [_xy(*s) for s in t.sites]
        cv.polyline(pts, PART_COLORS[part], PART_STYLES[part], closed=t.kind == "cycle", offset=shift[part])
    return cv.svg()
