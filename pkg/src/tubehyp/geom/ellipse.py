"""Containment of open ellipse footprints in CSG domains.

An affine holomorphic disk's real-part image is the open set
{center + x*u + y*v : x^2 + y^2 < 1}.  Its slice at abscissa
X = center.x1 + t is the open x2-interval

    m(t) +- sqrt(G^2 (A - t^2)) / A,   m(t) = cy + t*B/A,

with A = u1^2+v1^2, B = u1*u2+v1*v2, G = u1*v2 - v1*u2, valid for
t^2 < A.  Every slit/strip/convex-base comparison reduces to the sign
of rational +- sqrt(rational) and stays exact; collinear (degenerate)
axes are just the G = 0 case of the same formulas.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .predicates import (
    BUMP_MARGIN,
    _bump_line,
    _in_poly_closed,
    contains,
    segment_in_domain,
)
from .scalars import cmp_sqrt
from .types import (
    BoxPoly,
    Bump,
    ConvexBase,
    Domain,
    Ellipse2,
    HalfPlane,
    Point2,
    PolyObstacle,
    Segment2,
    SlitV,
    Strip,
)

_ELLIPSE_BUMP_DEPTH = 40


def _coeffs(e: Ellipse2):
    u1, u2 = e.u
    v1, v2 = e.v
    a = u1 * u1 + v1 * v1
    b = u1 * u2 + v1 * v2
    c = u2 * u2 + v2 * v2
    g = u1 * v2 - v1 * u2
    return a, b, c, g


def _ellipse_in_base(base: ConvexBase, e: Ellipse2) -> bool:
    cx, cy = e.center.x1, e.center.x2
    _, _, c, _ = _coeffs(e)
    if isinstance(base, Strip):
        return cmp_sqrt(c, cy - base.lo) <= 0 and cmp_sqrt(c, base.hi - cy) <= 0
    if isinstance(base, HalfPlane):
        return cmp_sqrt(c, cy - base.lo) <= 0
    u1, u2 = e.u
    v1, v2 = e.v
    for a, b in base.edges():
        ex, ey = b.x1 - a.x1, b.x2 - a.x2
        mu0 = ex * (cy - a.x2) - ey * (cx - a.x1)
        cu = ex * u2 - ey * u1
        cv = ex * v2 - ey * v1
        if mu0 <= 0:
            return False
        if cmp_sqrt(cu * cu + cv * cv, mu0) > 0:
            return False
    return True


def _ellipse_hits_slit(e: Ellipse2, slit: SlitV) -> bool:
    cx, cy = e.center.x1, e.center.x2
    a, b, c, g = _coeffs(e)
    if a == 0:
        if cx != slit.x1:
            return False
        if c == 0:
            return slit.lo <= cy <= slit.hi
        # open interval (cy - sqrt(c), cy + sqrt(c)) vs [lo, hi]
        return cmp_sqrt(c, slit.lo - cy) > 0 and cmp_sqrt(c, cy - slit.hi) > 0
    t = slit.x1 - cx
    rem = a - t * t
    if rem <= 0:
        return False
    m = cy + t * b / a
    s_sq = g * g * rem
    if s_sq == 0:
        return slit.lo <= m <= slit.hi
    return (
        cmp_sqrt(s_sq, a * (slit.lo - m)) > 0
        and cmp_sqrt(s_sq, a * (m - slit.hi)) > 0
    )


def _min_quadratic_on_unit(q0: Fraction, qd: Fraction, r0: Fraction, rd: Fraction):
    """Minimum of (q0+t*qd)^2 + (r0+t*rd)^2 over t in [0, 1] (convex)."""
    denom = qd * qd + rd * rd
    def val(t: Fraction) -> Fraction:
        x = q0 + t * qd
        y = r0 + t * rd
        return x * x + y * y
    if denom == 0:
        return val(Fraction(0))
    t_star = -(q0 * qd + r0 * rd) / denom
    if t_star < 0:
        t_star = Fraction(0)
    elif t_star > 1:
        t_star = Fraction(1)
    return val(t_star)


def _ellipse_hits_edge(e: Ellipse2, a: Point2, b: Point2) -> bool:
    """Open ellipse vs closed segment ab."""
    cx, cy = e.center.x1, e.center.x2
    u1, u2 = e.u
    v1, v2 = e.v
    _, _, _, g = _coeffs(e)
    ex, ey = b.x1 - a.x1, b.x2 - a.x2
    rx0, ry0 = a.x1 - cx, a.x2 - cy
    if g != 0:
        # invert (x, y) -> x*u + y*v and minimize |(x, y)| along the edge
        x0 = (v2 * rx0 - v1 * ry0) / g
        xd = (v2 * ex - v1 * ey) / g
        y0 = (u1 * ry0 - u2 * rx0) / g
        yd = (u1 * ey - u2 * ex) / g
        return _min_quadratic_on_unit(x0, xd, y0, yd) < 1
    # collinear axes: footprint is {center + mu*d : mu^2 < h_sq}
    if e.u != (0, 0):
        d1, d2 = e.u
        dd = d1 * d1 + d2 * d2
        lam = (v1 * d1 + v2 * d2) / dd
        h_sq = 1 + lam * lam
    else:
        d1, d2 = e.v
        dd = d1 * d1 + d2 * d2
        h_sq = Fraction(1)
    w0 = rx0 * d2 - ry0 * d1
    w1 = ex * d2 - ey * d1
    if w1 != 0:
        tau = -w0 / w1
        if not 0 <= tau <= 1:
            return False
        px = rx0 + tau * ex
        py = ry0 + tau * ey
        mu = (px * d1 + py * d2) / dd
        return mu * mu < h_sq
    if w0 != 0:
        return False
    # edge lies on the footprint line
    mu0 = (rx0 * d1 + ry0 * d2) / dd
    mud = (ex * d1 + ey * d2) / dd
    return _min_quadratic_on_unit(mu0, mud, Fraction(0), Fraction(0)) < h_sq


def _ellipse_hits_poly(e: Ellipse2, poly: PolyObstacle) -> bool:
    for a, b in poly.edges():
        if _ellipse_hits_edge(e, a, b):
            return True
    return _in_poly_closed(poly, e.center)


def _slice_bounds(
    cy: float, a: float, b: float, g: float, t: float
) -> Tuple[float, float]:
    """Closed bounds for the ellipse slice x2-interval at offset t (floats)."""
    rem = a - t * t
    if rem < 0.0:
        rem = 0.0
    m = cy + t * b / a
    import math

    s = math.sqrt(g * g * rem) / a
    return (m - s, m + s)


def _ellipse_hits_bump(base: ConvexBase, bump: Bump, e: Ellipse2) -> bool:
    """Conservative: False only when clearance >= BUMP_MARGIN everywhere."""
    cx, cy = e.center.x1, e.center.x2
    a, b, c, g = _coeffs(e)
    lo_x, hi_x = bump.x1_extent()
    line = _bump_line(base, bump)
    top = bump.side == "top"

    if a == 0:
        if cx <= lo_x or cx >= hi_x:
            return False
        import math

        gx = bump.height(float(cx))
        half = math.sqrt(float(c))
        if top:
            return float(cy) + half > line - gx - BUMP_MARGIN
        return float(cy) - half < line + gx + BUMP_MARGIN

    # exact prefilter on the x-extent
    if cmp_sqrt(a, lo_x - cx) <= 0 or cmp_sqrt(a, cx - hi_x) <= 0:
        return False

    import math

    af, bf, gf, cyf = float(a), float(b), float(g), float(cy)
    cxf = float(cx)
    half_a = math.sqrt(af)
    xa = max(cxf - half_a, float(lo_x))
    xb = min(cxf + half_a, float(hi_x))
    if xa >= xb:
        return False

    from .predicates import _bump_range

    def hit(x_lo: float, x_hi: float, depth: int) -> bool:
        t_lo, t_hi = x_lo - cxf, x_hi - cxf
        m_vals = (cyf + t_lo * bf / af, cyf + t_hi * bf / af)
        t_near = 0.0 if t_lo <= 0.0 <= t_hi else min(abs(t_lo), abs(t_hi))
        rem = af - t_near * t_near
        if rem < 0.0:
            rem = 0.0
        s_max = math.sqrt(gf * gf * rem) / af
        bmin, bmax = _bump_range(bump, x_lo, x_hi)
        if top:
            if max(m_vals) + s_max <= line - bmax - BUMP_MARGIN:
                return False
        else:
            if min(m_vals) - s_max >= line + bmax + BUMP_MARGIN:
                return False
        xm = 0.5 * (x_lo + x_hi)
        tm = xm - cxf
        if tm * tm < af:
            lo_s, hi_s = _slice_bounds(cyf, af, bf, gf, tm)
            gx = bump.height(xm)
            if top and hi_s > line - gx + BUMP_MARGIN:
                return True
            if not top and lo_s < line + gx - BUMP_MARGIN:
                return True
        if depth <= 0:
            return True  # undecided: refuse to certify containment
        return hit(x_lo, xm, depth - 1) or hit(xm, x_hi, depth - 1)

    return hit(xa, xb, _ELLIPSE_BUMP_DEPTH)


def ellipse_in_domain(domain: Domain, e: Ellipse2) -> bool:
    """True iff the open footprint e lies inside the domain.

    Point and segment degenerations delegate to the point/segment
    predicates; otherwise slit/polygon obstacles are decided exactly and
    bumps conservatively.
    """
    if e.is_point:
        return contains(domain, e.center)
    if e.v == (0, 0) or e.u == (0, 0):
        u = e.u if e.v == (0, 0) else e.v
        p = Point2(e.center.x1 - u[0], e.center.x2 - u[1])
        q = Point2(e.center.x1 + u[0], e.center.x2 + u[1])
        return segment_in_domain(domain, Segment2(p, q, closed=False)).inside

    if not _ellipse_in_base(domain.base, e):
        return False
    for ob in domain.obstacles:
        if isinstance(ob, SlitV):
            if _ellipse_hits_slit(e, ob):
                return False
        elif isinstance(ob, PolyObstacle):
            if _ellipse_hits_poly(e, ob):
                return False
        else:
            if _ellipse_hits_bump(domain.base, ob, e):
                return False
    return True
