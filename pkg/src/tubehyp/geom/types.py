"""Planar CSG domain types: convex base minus closed obstacles.

Only real parts are ever stored; the tube directions are implicit
(every predicate is invariant under imaginary translations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple, Union

from .scalars import ScalarLike, as_frac

Vec2 = Tuple[Fraction, Fraction]


class GeometryError(ValueError):
    """Invalid geometric construction."""


@dataclass(frozen=True)
class Point2:
    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", as_frac(self.x1))
        object.__setattr__(self, "x2", as_frac(self.x2))

    def __iter__(self):
        yield self.x1
        yield self.x2


@dataclass(frozen=True)
class Segment2:
    """Straight segment from p to q; closed by default, degenerate allowed.

    An open segment excludes both endpoints; a degenerate segment (p == q)
    is treated as the single point either way.
    """

    p: Point2
    q: Point2
    closed: bool = True

    @property
    def degenerate(self) -> bool:
        return self.p == self.q

    def midpoint(self) -> Point2:
        return Point2((self.p.x1 + self.q.x1) / 2, (self.p.x2 + self.q.x2) / 2)

    def at(self, t: Fraction) -> Point2:
        return Point2(
            self.p.x1 + t * (self.q.x1 - self.p.x1),
            self.p.x2 + t * (self.q.x2 - self.p.x2),
        )


def _as_vec(v) -> Vec2:
    a, b = v
    return (as_frac(a), as_frac(b))


@dataclass(frozen=True)
class Ellipse2:
    """Open set {center + x*u + y*v : x^2 + y^2 < 1}.

    u = v = (0,0) degenerates to a point; v = (0,0) to the open segment
    with endpoints center +- u.
    """

    center: Point2
    u: Vec2
    v: Vec2

    def __post_init__(self):
        object.__setattr__(self, "u", _as_vec(self.u))
        object.__setattr__(self, "v", _as_vec(self.v))

    @property
    def is_point(self) -> bool:
        return self.u == (0, 0) and self.v == (0, 0)


# --- obstacles (closed sets removed from the open base) ---


@dataclass(frozen=True)
class SlitV:
    """Vertical closed segment {x1} x [lo, hi]."""

    x1: Fraction
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", as_frac(self.x1))
        object.__setattr__(self, "lo", as_frac(self.lo))
        object.__setattr__(self, "hi", as_frac(self.hi))
        if not self.lo < self.hi:
            raise GeometryError("slit requires lo < hi")

    def x1_extent(self) -> Tuple[Fraction, Fraction]:
        return (self.x1, self.x1)


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1)


def _segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    # proper or touching intersection of closed segments ab, cd
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True

    def on(p: Point2, q: Point2, r: Point2) -> bool:
        if _cross(p, q, r) != 0:
            return False
        return min(p.x1, q.x1) <= r.x1 <= max(p.x1, q.x1) and min(
            p.x2, q.x2
        ) <= r.x2 <= max(p.x2, q.x2)

    return on(a, b, c) or on(a, b, d) or on(c, d, a) or on(c, d, b)


@dataclass(frozen=True)
class PolyObstacle:
    """Closed simple polygon."""

    vertices: Tuple[Point2, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise GeometryError("polygon has repeated vertices")
        n = len(verts)
        area2 = sum(
            verts[i].x1 * verts[(i + 1) % n].x2 - verts[(i + 1) % n].x1 * verts[i].x2
            for i in range(n)
        )
        if area2 == 0:
            raise GeometryError("polygon is degenerate")
        # simplicity: non-adjacent edges must not meet
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                c, d = verts[j], verts[(j + 1) % n]
                if _segments_cross(a, b, c, d):
                    raise GeometryError("polygon is not simple")

    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def x1_extent(self) -> Tuple[Fraction, Fraction]:
        xs = [v.x1 for v in self.vertices]
        return (min(xs), max(xs))


@dataclass(frozen=True)
class Bump:
    """Closed region between a strip boundary line and a C-infinity bump graph.

    side "top" hangs from the upper boundary, "bottom" rises from the lower
    one.  The graph is x -> h * exp(1 - 1/(1 - s^2)) with s = (x - x0)/w,
    supported on [x0 - w, x0 + w] and peaking at h.
    """

    side: str
    x0: Fraction
    w: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x0", as_frac(self.x0))
        object.__setattr__(self, "w", as_frac(self.w))
        object.__setattr__(self, "h", as_frac(self.h))
        if self.side not in ("top", "bottom"):
            raise GeometryError("bump side must be 'top' or 'bottom'")
        if not self.w > 0:
            raise GeometryError("bump requires w > 0")
        if not self.h > 0:
            raise GeometryError("bump requires h > 0")

    def x1_extent(self) -> Tuple[Fraction, Fraction]:
        return (self.x0 - self.w, self.x0 + self.w)

    def height(self, x: float) -> float:
        """Bump graph value at x (float evaluation)."""
        s = (x - float(self.x0)) / float(self.w)
        if abs(s) >= 1.0:
            return 0.0
        return float(self.h) * math.exp(1.0 - 1.0 / (1.0 - s * s))


Obstacle = Union[SlitV, PolyObstacle, Bump]


# --- convex bases ---


@dataclass(frozen=True)
class Strip:
    """Open horizontal strip {lo < x2 < hi}."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_frac(self.lo))
        object.__setattr__(self, "hi", as_frac(self.hi))
        if not self.lo < self.hi:
            raise GeometryError("strip requires lo < hi")


@dataclass(frozen=True)
class HalfPlane:
    """Open upper half-plane {x2 > lo}."""

    lo: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_frac(self.lo))


@dataclass(frozen=True)
class BoxPoly:
    """Open bounded convex polygon, stored counterclockwise."""

    vertices: Tuple[Point2, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(verts) < 3:
            raise GeometryError("polybase needs at least 3 vertices")
        n = len(verts)
        area2 = sum(
            verts[i].x1 * verts[(i + 1) % n].x2 - verts[(i + 1) % n].x1 * verts[i].x2
            for i in range(n)
        )
        if area2 == 0:
            raise GeometryError("polybase is degenerate")
        if area2 < 0:
            verts = tuple(reversed(verts))
        for i in range(n):
            o = verts[i]
            a = verts[(i + 1) % n]
            b = verts[(i + 2) % n]
            if _cross(o, a, b) <= 0:
                raise GeometryError("polybase must be strictly convex")
        object.__setattr__(self, "vertices", verts)

    def edges(self):
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def x1_extent(self) -> Tuple[Fraction, Fraction]:
        xs = [v.x1 for v in self.vertices]
        return (min(xs), max(xs))

    def x2_extent(self) -> Tuple[Fraction, Fraction]:
        ys = [v.x2 for v in self.vertices]
        return (min(ys), max(ys))


ConvexBase = Union[Strip, HalfPlane, BoxPoly]


@dataclass(frozen=True)
class Domain:
    """Open base region minus a finite list of closed obstacles."""

    base: ConvexBase
    obstacles: Tuple[Obstacle, ...] = field(default_factory=tuple)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        for ob in self.obstacles:
            _check_obstacle_in_base(self.base, ob)

    def is_loeb_normalized(self) -> bool:
        """True when the base lies in the half-plane {x2 > 0}."""
        if isinstance(self.base, Strip):
            return self.base.lo >= 0
        if isinstance(self.base, HalfPlane):
            return self.base.lo >= 0
        return self.base.x2_extent()[0] >= 0


def _check_obstacle_in_base(base: ConvexBase, ob: Obstacle) -> None:
    if isinstance(ob, SlitV):
        pts = [Point2(ob.x1, ob.lo), Point2(ob.x1, ob.hi)]
        for p in pts:
            if not _in_base_closure(base, p):
                raise GeometryError("slit endpoint outside base closure")
    elif isinstance(ob, PolyObstacle):
        for p in ob.vertices:
            if not _in_base_closure(base, p):
                raise GeometryError("polygon vertex outside base closure")
    elif isinstance(ob, Bump):
        if isinstance(base, Strip):
            # depth bound: the bump must not cross the opposite strip boundary
            if ob.h > base.hi - base.lo:
                raise GeometryError("bump deeper than the strip")
        elif isinstance(base, HalfPlane):
            if ob.side != "bottom":
                raise GeometryError("half-plane base only carries bottom bumps")
        else:
            raise GeometryError("bump obstacles need a strip or half-plane base")
    else:
        raise GeometryError(f"unknown obstacle type {type(ob).__name__}")


def _in_base_closure(base: ConvexBase, p: Point2) -> bool:
    if isinstance(base, Strip):
        return base.lo <= p.x2 <= base.hi
    if isinstance(base, HalfPlane):
        return p.x2 >= base.lo
    for a, b in base.edges():
        if _cross(a, b, p) < 0:
            return False
    return True
