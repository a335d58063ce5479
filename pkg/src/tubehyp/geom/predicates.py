"""Membership and segment-containment predicates.

Slit and polygon obstacles are decided exactly in rational arithmetic.
Bump obstacles are decided in floating point with a safety margin: a
claim that something lies inside the domain always has clearance at
least BUMP_MARGIN from the bump region, so `inside` answers stay sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .types import (
    BoxPoly,
    Bump,
    ConvexBase,
    Domain,
    GeometryError,
    HalfPlane,
    Point2,
    PolyObstacle,
    Segment2,
    SlitV,
    Strip,
    _cross,
)

BUMP_MARGIN = 1e-9
_BUMP_MAX_DEPTH = 48


@dataclass(frozen=True)
class SegmentCheck:
    inside: bool
    witness: Optional[Point2] = None

    def __bool__(self) -> bool:
        return self.inside


class HullUndecidable(GeometryError):
    """Raised when the convex-hull classification cannot be certified."""


@dataclass(frozen=True)
class HullReport:
    case: str  # "I" or "II"
    hull: Optional[ConvexBase]


def bump_height(bump: Bump, x) -> float:
    """Graph of the bump at abscissa x; zero outside the open support."""
    return bump.height(float(x))


def _bump_line(base: ConvexBase, bump: Bump) -> float:
    if bump.side == "top":
        assert isinstance(base, Strip)
        return float(base.hi)
    if isinstance(base, Strip):
        return float(base.lo)
    assert isinstance(base, HalfPlane)
    return float(base.lo)


def _in_base(base: ConvexBase, p: Point2) -> bool:
    if isinstance(base, Strip):
        return base.lo < p.x2 < base.hi
    if isinstance(base, HalfPlane):
        return p.x2 > base.lo
    return all(_cross(a, b, p) > 0 for a, b in base.edges())


def _on_poly_boundary(poly: PolyObstacle, p: Point2) -> bool:
    for a, b in poly.edges():
        if _cross(a, b, p) != 0:
            continue
        if min(a.x1, b.x1) <= p.x1 <= max(a.x1, b.x1) and min(
            a.x2, b.x2
        ) <= p.x2 <= max(a.x2, b.x2):
            return True
    return False


def _in_poly_closed(poly: PolyObstacle, p: Point2) -> bool:
    if _on_poly_boundary(poly, p):
        return True
    inside = False
    for a, b in poly.edges():
        if (a.x2 > p.x2) != (b.x2 > p.x2):
            x_int = a.x1 + (p.x2 - a.x2) * (b.x1 - a.x1) / (b.x2 - a.x2)
            if x_int > p.x1:
                inside = not inside
    return inside


def _in_bump(base: ConvexBase, bump: Bump, p: Point2) -> bool:
    """Margin-conservative: True also inside the uncertainty band."""
    lo_x, hi_x = bump.x1_extent()
    if p.x1 <= lo_x or p.x1 >= hi_x:
        return False
    g = bump.height(float(p.x1))
    line = _bump_line(base, bump)
    if bump.side == "top":
        clearance = (line - g) - float(p.x2)
    else:
        clearance = float(p.x2) - (line + g)
    return clearance < BUMP_MARGIN


def _in_obstacle(base: ConvexBase, ob, p: Point2) -> bool:
    if isinstance(ob, SlitV):
        return p.x1 == ob.x1 and ob.lo <= p.x2 <= ob.hi
    if isinstance(ob, PolyObstacle):
        return _in_poly_closed(ob, p)
    return _in_bump(base, ob, p)


def contains(domain: Domain, p: Point2) -> bool:
    """Exact on the slit/polygon class; conservative near bump boundaries."""
    if not _in_base(domain.base, p):
        return False
    return not any(_in_obstacle(domain.base, ob, p) for ob in domain.obstacles)


# --- segment containment ---


def _segment_base_check(base: ConvexBase, s: Segment2) -> SegmentCheck:
    if s.degenerate:
        if _in_base(base, s.p):
            return SegmentCheck(True)
        return SegmentCheck(False, s.p)

    if isinstance(base, (Strip, HalfPlane)):
        lo = base.lo
        hi = base.hi if isinstance(base, Strip) else None
        ylo, yhi = min(s.p.x2, s.q.x2), max(s.p.x2, s.q.x2)
        lo_pt = s.p if s.p.x2 <= s.q.x2 else s.q
        hi_pt = s.q if lo_pt is s.p else s.p
        if s.closed:
            if ylo <= lo:
                return SegmentCheck(False, lo_pt)
            if hi is not None and yhi >= hi:
                return SegmentCheck(False, hi_pt)
            return SegmentCheck(True)
        # open segment: boundary contact only matters when the whole
        # segment lies on the boundary line
        if ylo < lo or (ylo == lo == yhi):
            return SegmentCheck(False, s.midpoint() if ylo == yhi else lo_pt)
        if hi is not None and (yhi > hi or (ylo == hi == yhi)):
            return SegmentCheck(False, s.midpoint() if ylo == yhi else hi_pt)
        return SegmentCheck(True)

    assert isinstance(base, BoxPoly)
    if s.closed:
        for pt in (s.p, s.q):
            if not _in_base(base, pt):
                return SegmentCheck(False, pt)
        return SegmentCheck(True)
    from .types import _in_base_closure

    for pt in (s.p, s.q):
        if not _in_base_closure(base, pt):
            return SegmentCheck(False, pt)
    mid = s.midpoint()
    if not _in_base(base, mid):
        return SegmentCheck(False, mid)
    return SegmentCheck(True)


def _segment_hits_slit(s: Segment2, slit: SlitV) -> Optional[Point2]:
    dx = s.q.x1 - s.p.x1
    if dx == 0:
        if s.p.x1 != slit.x1:
            return None
        ylo, yhi = min(s.p.x2, s.q.x2), max(s.p.x2, s.q.x2)
        a, b = max(ylo, slit.lo), min(yhi, slit.hi)
        if s.closed or s.degenerate:
            if a > b:
                return None
            return Point2(slit.x1, (a + b) / 2)
        # open: overlap must contain an interior point of the segment
        if a > b or (a == b and (a == ylo or a == yhi)):
            return None
        return Point2(slit.x1, (a + b) / 2)
    t = (slit.x1 - s.p.x1) / dx
    if s.closed or s.degenerate:
        if not 0 <= t <= 1:
            return None
    elif not 0 < t < 1:
        return None
    y = s.p.x2 + t * (s.q.x2 - s.p.x2)
    if slit.lo <= y <= slit.hi:
        return Point2(slit.x1, y)
    return None


def _edge_intersection_point(
    s: Segment2, a: Point2, b: Point2
) -> Optional[Point2]:
    """A point common to segment s and closed edge ab, honoring s's openness."""
    rx, ry = s.q.x1 - s.p.x1, s.q.x2 - s.p.x2
    ex, ey = b.x1 - a.x1, b.x2 - a.x2
    if s.degenerate:
        on_line = _cross(a, b, s.p) == 0
        if on_line and min(a.x1, b.x1) <= s.p.x1 <= max(a.x1, b.x1) and min(
            a.x2, b.x2
        ) <= s.p.x2 <= max(a.x2, b.x2):
            return s.p
        return None
    denom = rx * ey - ry * ex
    wx, wy = a.x1 - s.p.x1, a.x2 - s.p.x2
    if denom != 0:
        t = (wx * ey - wy * ex) / denom
        u = (wx * ry - wy * rx) / denom
        if not 0 <= u <= 1:
            return None
        if s.closed:
            if not 0 <= t <= 1:
                return None
        elif not 0 < t < 1:
            return None
        return s.at(t)
    # parallel
    if wx * ry - wy * rx != 0:
        return None
    # collinear: overlap in the segment's parameter
    rr = rx * rx + ry * ry
    ta = (wx * rx + wy * ry) / rr
    tb = ((b.x1 - s.p.x1) * rx + (b.x2 - s.p.x2) * ry) / rr
    o_lo, o_hi = min(ta, tb), max(ta, tb)
    lo = max(o_lo, Fraction(0))
    hi = min(o_hi, Fraction(1))
    if lo > hi:
        return None
    if not s.closed and lo == hi and (lo == 0 or hi == 1):
        return None
    return s.at((lo + hi) / 2)


def _segment_hits_poly(s: Segment2, poly: PolyObstacle) -> Optional[Point2]:
    for a, b in poly.edges():
        pt = _edge_intersection_point(s, a, b)
        if pt is not None:
            return pt
    probe = s.p if s.degenerate else s.midpoint()
    if _in_poly_closed(poly, probe):
        return probe
    return None


def _bump_range(bump: Bump, xa: float, xb: float) -> Tuple[float, float]:
    """Exact range of the unimodal bump graph over [xa, xb] (floats)."""
    x0 = float(bump.x0)
    va, vb = bump.height(xa), bump.height(xb)
    if xa <= x0 <= xb:
        return (min(va, vb), float(bump.h))
    return (min(va, vb), max(va, vb))


def _segment_hits_bump(
    base: ConvexBase, bump: Bump, s: Segment2
) -> Optional[SegmentCheck]:
    """None = definitely clear; SegmentCheck(False, w) = hit (conservative)."""
    lo_x, hi_x = bump.x1_extent()
    smin, smax = min(s.p.x1, s.q.x1), max(s.p.x1, s.q.x1)
    if smax <= lo_x or smin >= hi_x:
        return None  # exact: outside the bump's x-range

    line = _bump_line(base, bump)
    top = bump.side == "top"
    px, py = float(s.p.x1), float(s.p.x2)
    dx, dy = float(s.q.x1 - s.p.x1), float(s.q.x2 - s.p.x2)
    sup_lo, sup_hi = float(lo_x), float(hi_x)

    def point_at(t: float) -> Tuple[float, float]:
        return (px + t * dx, py + t * dy)

    def classify(t0: float, t1: float, depth: int) -> Optional[Point2]:
        xa, ya = point_at(t0)
        xb, yb = point_at(t1)
        x_lo, x_hi = min(xa, xb), max(xa, xb)
        y_lo, y_hi = min(ya, yb), max(ya, yb)
        cx_lo, cx_hi = max(x_lo, sup_lo), min(x_hi, sup_hi)
        if cx_lo >= cx_hi:
            return None
        bmin, bmax = _bump_range(bump, cx_lo, cx_hi)
        if top:
            if y_hi <= line - bmax - BUMP_MARGIN:
                return None
        else:
            if y_lo >= line + bmax + BUMP_MARGIN:
                return None
        tm = 0.5 * (t0 + t1)
        xm, ym = point_at(tm)
        if sup_lo < xm < sup_hi:
            g = bump.height(xm)
            inside = ym >= line - g + BUMP_MARGIN if top else ym <= line + g - BUMP_MARGIN
            if inside or depth <= 0:
                return Point2(Fraction(xm), Fraction(ym))
        elif depth <= 0:
            return Point2(Fraction(xm), Fraction(ym))
        w = classify(t0, tm, depth - 1)
        if w is not None:
            return w
        return classify(tm, t1, depth - 1)

    witness = classify(0.0, 1.0, _BUMP_MAX_DEPTH)
    if witness is None:
        return None
    return SegmentCheck(False, witness)


def segment_in_domain(domain: Domain, s: Segment2) -> SegmentCheck:
    """Whether every point of s lies in the domain.

    Exact for slit/polygon obstacles over any base; conservative adaptive
    subdivision for bumps (an `inside` answer is guaranteed).
    """
    base_check = _segment_base_check(domain.base, s)
    if not base_check.inside:
        return base_check
    for ob in domain.obstacles:
        if isinstance(ob, SlitV):
            w = _segment_hits_slit(s, ob)
            if w is not None:
                return SegmentCheck(False, w)
        elif isinstance(ob, PolyObstacle):
            w = _segment_hits_poly(s, ob)
            if w is not None:
                return SegmentCheck(False, w)
        else:
            hit = _segment_hits_bump(domain.base, ob, s)
            if hit is not None:
                return hit
    return SegmentCheck(True)


# --- convex hull classification ---


def hull_classify(domain: Domain) -> HullReport:
    """Case (i) report: the hull of the domain equals its convex base.

    The v1 obstacle classes all have bounded x1-extent, so the tube over
    the hull is a proper subset of C^2 and the hull is the base itself.
    Case (ii) is reserved and never produced here.
    """
    ext_lo, ext_hi = Fraction(0), Fraction(0)
    for ob in domain.obstacles:
        lo, hi = ob.x1_extent()
        ext_lo, ext_hi = min(ext_lo, lo), max(ext_hi, hi)

    base = domain.base
    probes = []
    if isinstance(base, Strip):
        mid = (base.lo + base.hi) / 2
        quarter = (base.hi - base.lo) / 4
        for x in (ext_lo - 1, ext_hi + 1):
            probes.append(Point2(x, mid - quarter))
            probes.append(Point2(x, mid + quarter))
    elif isinstance(base, HalfPlane):
        for x in (ext_lo - 1, ext_hi + 1):
            probes.append(Point2(x, base.lo + 1))
            probes.append(Point2(x, base.lo + 2))
    else:
        n = len(base.vertices)
        cx = sum(v.x1 for v in base.vertices) / n
        cy = sum(v.x2 for v in base.vertices) / n
        centroid = Point2(cx, cy)
        for v in base.vertices:
            for shrink in (Fraction(1, 8), Fraction(1, 64), Fraction(1, 512)):
                p = Point2(
                    v.x1 + (centroid.x1 - v.x1) * shrink,
                    v.x2 + (centroid.x2 - v.x2) * shrink,
                )
                if contains(domain, p):
                    break
            else:
                raise HullUndecidable(
                    "sampled probes near a base vertex all fall in obstacles"
                )

    for p in probes:
        if not contains(domain, p):
            raise HullUndecidable("sampled probe beyond obstacle extent not in domain")
    return HullReport(case="I", hull=base)
