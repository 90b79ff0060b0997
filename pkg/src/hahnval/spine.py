"""The ordered index set of the lexicographic sum, with labels and cuts.

Points come in two regions.  Region ``G2`` holds blocks of natural numbers
in *reverse* order, each block carrying an ``x`` position followed by a
``y`` position; ascending it reads ``..., G2.1.x, G2.1.y, G2.0.x, G2.0.y``.
Region ``G1`` follows entirely after ``G2``: blocks 0, 1, 2, ... in the
usual order, each holding infinitely many ``y`` positions ``y0 < y1 < ...``
and then one ``x`` position.  Ascending order means decreasing
significance for the group elements built on top of this set.

Every point has an immediate successor (the set has no last element), and
labels assign each point the coefficient ring used there: ``x`` positions
get X, ``y`` positions get Y.

A cut names a final segment of the point set: everything above a point,
the whole set, or nothing.  Final segments are what convex subgroups of
the group layer look like.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

from .coefficients import Tag

G2 = "G2"
G1 = "G1"


@total_ordering
@dataclass(frozen=True)
class Point:
    """One position of the index set.  Build via g2x/g2y/g1y/g1x."""

    region: str
    block: int
    axis: str
    yidx: int = 0

    def __post_init__(self) -> None:
        if self.region not in (G2, G1):
            raise ValueError(f"bad region {self.region!r}")
        if self.axis not in ("x", "y"):
            raise ValueError(f"bad axis {self.axis!r}")
        if self.block < 0 or self.yidx < 0:
            raise ValueError("block and yidx must be naturals")
        if self.yidx and (self.region == G2 or self.axis == "x"):
            raise ValueError("only G1 y positions carry a y index")

    def sort_key(self) -> tuple:
        if self.region == G2:
            # blocks in reverse order; x before y inside a block
            return (0, -self.block, 0 if self.axis == "x" else 1, 0)
        # G1: blocks ascending; y0 < y1 < ... < x inside a block
        return (1, self.block, 0 if self.axis == "y" else 1, self.yidx)

    def __lt__(self, other: "Point") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_point(self)


def g2x(block: int) -> Point:
    return Point(G2, block, "x")


def g2y(block: int) -> Point:
    return Point(G2, block, "y")


def g1y(block: int, yidx: int) -> Point:
    return Point(G1, block, "y", yidx)


def g1x(block: int) -> Point:
    return Point(G1, block, "x")


def point_cmp(p: Point, q: Point) -> int:
    """-1, 0 or 1 as p < q, p = q, p > q."""
    kp, kq = p.sort_key(), q.sort_key()
    return (kp > kq) - (kp < kq)


def label(p: Point) -> str:
    """The coefficient-ring label of a point: "X" or "Y"."""
    return "X" if p.axis == "x" else "Y"


def tag_of(p: Point) -> Tag:
    return Tag.X2 if p.axis == "x" else Tag.Y3


def successor(p: Point) -> Point:
    """The immediate successor; total because every point has one."""
    if p.region == G2:
        if p.axis == "x":
            return g2y(p.block)
        if p.block > 0:
            return g2x(p.block - 1)
        return g1y(0, 0)
    if p.axis == "y":
        return g1y(p.block, p.yidx + 1)
    return g1y(p.block + 1, 0)


def definable_k() -> Point:
    """The least point whose label and successor's label are both Y.

    Inside G2 the labels alternate x, y, so the only candidate there is
    the very last G2 point, G2.0.y, whose successor is the first G1 point
    (a y).  All further candidates are G1 y positions and lie above it.
    The point set has no least element, so this is fixed here rather than
    found by a scan; the characterizing property is enumeration-tested.
    """
    return g2y(0)


@dataclass(frozen=True)
class Cut:
    """A final segment of the point set: above(p), everything, or nothing."""

    kind: str
    point: Point | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("above", "all", "none"):
            raise ValueError(f"bad cut kind {self.kind!r}")
        if (self.kind == "above") != (self.point is not None):
            raise ValueError("exactly the 'above' cuts carry a point")

    def __str__(self) -> str:
        return format_cut(self)


EVERYTHING = Cut("all")
NOTHING = Cut("none")


def above(p: Point) -> Cut:
    return Cut("above", p)


def cut_member(p: Point, c: Cut) -> bool:
    if c.kind == "above":
        return p > c.point
    return c.kind == "all"


def cut_cmp(c1: Cut, c2: Cut) -> int:
    """Containment order on final segments: -1 when c1 is strictly smaller."""
    rank = {"none": 0, "above": 1, "all": 2}
    r1, r2 = rank[c1.kind], rank[c2.kind]
    if r1 != r2:
        return -1 if r1 < r2 else 1
    if c1.kind != "above":
        return 0
    # above(p) is contained in above(q) iff p >= q
    return -point_cmp(c1.point, c2.point)


_POINT_RE = re.compile(r"^(G[12])\.(\d+)\.(x|y)(\d*)$")


def parse_point(text: str) -> Point:
    """Parse ``G2.<n>.x``, ``G2.<n>.y``, ``G1.<m>.y<i>`` or ``G1.<m>.x``."""
    m = _POINT_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad point literal {text!r}")
    region, block, axis, yidx = m.group(1), int(m.group(2)), m.group(3), m.group(4)
    if region == G2:
        if yidx:
            raise ValueError(f"G2 y positions carry no index: {text!r}")
        return g2x(block) if axis == "x" else g2y(block)
    if axis == "x":
        if yidx:
            raise ValueError(f"x positions carry no index: {text!r}")
        return g1x(block)
    if not yidx:
        raise ValueError(f"G1 y positions need an index: {text!r}")
    return g1y(block, int(yidx))


def format_point(p: Point) -> str:
    if p.region == G2 or p.axis == "x":
        return f"{p.region}.{p.block}.{p.axis}"
    return f"{p.region}.{p.block}.y{p.yidx}"


def parse_cut(text: str) -> Cut:
    body = text.strip()
    if body == "all":
        return EVERYTHING
    if body == "none":
        return NOTHING
    if body.startswith("above(") and body.endswith(")"):
        return above(parse_point(body[len("above(") : -1]))
    raise ValueError(f"bad cut literal {text!r}")


def format_cut(c: Cut) -> str:
    if c.kind == "above":
        return f"above({format_point(c.point)})"
    return c.kind


def enumerate_points(max_block: int, max_yidx: int) -> list[Point]:
    """All points with block <= max_block and y index <= max_yidx, ascending.

    A finite window of the point set; used by enumeration oracles.  Order
    comparisons between two window points agree with the full set.
    """
    pts: list[Point] = []
    for n in range(max_block, -1, -1):
        pts.append(g2x(n))
        pts.append(g2y(n))
    for m in range(max_block + 1):
        for i in range(max_yidx + 1):
            pts.append(g1y(m, i))
        pts.append(g1x(m))
    return pts
