import math
import random
from fractions import Fraction as Q

import pytest

from tubehyp.dsl import builtin
from tubehyp.geom import (
    BoxPoly,
    Bump,
    Domain,
    Ellipse2,
    GeometryError,
    HalfPlane,
    Point2,
    PolyObstacle,
    Segment2,
    SlitV,
    Strip,
    bump_height,
    cmp_lin_sqrt,
    cmp_sqrt,
    contains,
    ellipse_in_domain,
    hull_classify,
    segment_in_domain,
)

FIG1 = builtin("fig1")
STRIP = builtin("strip")
SQUARE = builtin("square")


def seg(p, q, closed=True):
    return Segment2(Point2(*p), Point2(*q), closed=closed)


class TestScalars:
    def test_cmp_sqrt_matches_float(self):
        rng = random.Random(7)
        for _ in range(500):
            s = Q(rng.randrange(0, 400), rng.randrange(1, 40))
            r = Q(rng.randrange(-200, 200), rng.randrange(1, 40))
            want = (math.sqrt(s) > float(r)) - (math.sqrt(s) < float(r))
            if abs(math.sqrt(s) - float(r)) > 1e-9:
                assert cmp_sqrt(s, r) == want

    def test_cmp_sqrt_exact_ties(self):
        assert cmp_sqrt(Q(4), Q(2)) == 0
        assert cmp_sqrt(Q(9, 4), Q(3, 2)) == 0
        assert cmp_sqrt(Q(2), Q(3, 2)) < 0
        assert cmp_sqrt(Q(0), Q(0)) == 0
        assert cmp_sqrt(Q(1, 100), Q(-5)) > 0

    def test_cmp_lin_sqrt_matches_float(self):
        rng = random.Random(8)
        for _ in range(800):
            a = Q(rng.randrange(-60, 60), rng.randrange(1, 12))
            b = Q(rng.randrange(-60, 60), rng.randrange(1, 12))
            s = Q(rng.randrange(0, 120), rng.randrange(1, 12))
            r = Q(rng.randrange(-60, 60), rng.randrange(1, 12))
            lhs = float(a) + float(b) * math.sqrt(s)
            if abs(lhs - float(r)) > 1e-9:
                want = (lhs > float(r)) - (lhs < float(r))
                assert cmp_lin_sqrt(a, b, s, r) == want


class TestContains:
    def test_fig1_base_point(self):
        assert contains(FIG1, Point2(0, 1))

    def test_fig1_point_on_slit(self):
        assert not contains(FIG1, Point2(-1, Q(3, 2)))

    def test_fig1_below_strip(self):
        assert not contains(FIG1, Point2(0, -1))

    def test_slit_endpoints_excluded(self):
        assert not contains(FIG1, Point2(-1, 1))
        assert not contains(FIG1, Point2(-1, 2))
        assert not contains(FIG1, Point2(1, 0))
        assert not contains(FIG1, Point2(1, 1))
        # just off the slit is inside again
        assert contains(FIG1, Point2(Q(-999, 1000), Q(3, 2)))

    def test_strip_boundary_open(self):
        assert not contains(STRIP, Point2(0, 0))
        assert not contains(STRIP, Point2(0, 2))
        assert contains(STRIP, Point2(10**6, Q(1, 10**6)))

    def test_square(self):
        assert contains(SQUARE, Point2(Q(1, 2), Q(1, 2)))
        assert not contains(SQUARE, Point2(0, Q(1, 2)))
        assert not contains(SQUARE, Point2(Q(1, 2), 1))

    def test_poly_obstacle_closed(self):
        dom = Domain(
            base=Strip(0, 2),
            obstacles=(
                PolyObstacle((Point2(0, 1), Point2(1, 1), Point2(1, 2), Point2(0, 2))),
            ),
        )
        assert not contains(dom, Point2(Q(1, 2), Q(3, 2)))  # interior
        assert not contains(dom, Point2(Q(1, 2), 1))  # boundary edge
        assert not contains(dom, Point2(0, 1))  # vertex
        assert contains(dom, Point2(Q(1, 2), Q(1, 2)))

    def test_bump_membership_margin(self):
        dom = builtin("fig2-smooth")
        # peak of the top bump touches (−1, 1): just below is inside
        assert not contains(dom, Point2(-1, Q(3, 2)))
        assert contains(dom, Point2(-1, Q(1, 2)))
        # outside the supports everything but the slits-free strip is inside
        assert contains(dom, Point2(0, 1))
        assert contains(dom, Point2(-3, Q(3, 2)))


class TestSegmentInDomain:
    def test_fig1_horizontal_hit_at_slit(self):
        r = segment_in_domain(FIG1, seg((-1, 1), (1, 1)))
        assert not r.inside
        assert r.witness == Point2(-1, 1)

    def test_fig1_remark1_segment_inside(self):
        assert segment_in_domain(FIG1, seg((-2, Q(3, 4)), (2, Q(5, 4)))).inside

    def test_degenerate_point_segment(self):
        assert segment_in_domain(FIG1, seg((0, 1), (0, 1))).inside
        r = segment_in_domain(FIG1, seg((1, Q(1, 2)), (1, Q(1, 2))))
        assert not r.inside and r.witness == Point2(1, Q(1, 2))

    def test_witness_is_outside_domain(self):
        cases = [
            seg((-1, 1), (1, 1)),
            seg((0, -1), (0, 1)),
            seg((-5, Q(3, 2)), (5, Q(3, 2))),
            seg((0, 0), (4, 2)),
        ]
        for s in cases:
            r = segment_in_domain(FIG1, s)
            if not r.inside:
                assert not contains(FIG1, r.witness)

    def test_inside_implies_contains_on_dense_grid(self):
        s = seg((-2, Q(3, 4)), (2, Q(5, 4)))
        assert segment_in_domain(FIG1, s).inside
        n = 10**4
        for i in range(n + 1):
            t = Q(i, n)
            assert contains(FIG1, s.at(t))

    def test_monotonicity_subsegments(self):
        s = seg((-3, Q(5, 8)), (3, Q(11, 8)))
        assert segment_in_domain(FIG1, s).inside
        rng = random.Random(5)
        for _ in range(50):
            a = Q(rng.randrange(0, 1000), 1000)
            b = Q(rng.randrange(0, 1000), 1000)
            if a > b:
                a, b = b, a
            sub = Segment2(s.at(a), s.at(b))
            assert segment_in_domain(FIG1, sub).inside

    def test_obstacle_additivity(self):
        rng = random.Random(11)
        extra = SlitV(Q(1, 2), Q(1, 4), Q(7, 4))
        harder = Domain(base=FIG1.base, obstacles=FIG1.obstacles + (extra,))
        for _ in range(200):
            p = (Q(rng.randrange(-40, 40), 10), Q(rng.randrange(1, 20), 10))
            q = (Q(rng.randrange(-40, 40), 10), Q(rng.randrange(1, 20), 10))
            r1 = segment_in_domain(FIG1, seg(p, q))
            r2 = segment_in_domain(harder, seg(p, q))
            if not r1.inside:
                assert not r2.inside

    def test_open_segment_endpoint_on_boundary(self):
        # open segment may touch the strip boundary at its endpoints only
        assert segment_in_domain(STRIP, seg((0, 0), (0, 2), closed=False)).inside
        assert not segment_in_domain(STRIP, seg((0, 0), (0, 2), closed=True)).inside
        r = segment_in_domain(STRIP, seg((-1, 2), (1, 2), closed=False))
        assert not r.inside

    def test_open_segment_through_slit_endpoint(self):
        # touches the lower slit's top endpoint (1,1) in its interior: hit
        r = segment_in_domain(FIG1, seg((0, 1), (2, 1), closed=False))
        assert not r.inside and r.witness == Point2(1, 1)
        # same endpoints but stopping exactly at the slit: open excludes it
        assert segment_in_domain(FIG1, seg((0, 1), (1, 1), closed=False)).inside

    def test_vertical_segment_overlapping_slit(self):
        r = segment_in_domain(FIG1, seg((1, Q(1, 4)), (1, Q(3, 4))))
        assert not r.inside
        assert r.witness.x1 == 1 and Q(1, 4) <= r.witness.x2 <= Q(3, 4)

    def test_poly_obstacle_segment(self):
        dom = Domain(
            base=Strip(0, 2),
            obstacles=(PolyObstacle((Point2(-1, 1), Point2(1, 1), Point2(0, Q(3, 2)))),),
        )
        r = segment_in_domain(dom, seg((-3, Q(5, 4)), (3, Q(5, 4))))
        assert not r.inside
        assert not contains(dom, r.witness)
        assert segment_in_domain(dom, seg((-3, Q(1, 2)), (3, Q(1, 2)))).inside
        # fully inside the obstacle: witness from the midpoint probe
        r2 = segment_in_domain(dom, seg((Q(-1, 4), Q(9, 8)), (Q(1, 4), Q(9, 8))))
        assert not r2.inside

    def test_boxpoly_segment(self):
        r = segment_in_domain(SQUARE, seg((Q(1, 4), Q(1, 2)), (Q(3, 4), Q(1, 2))))
        assert r.inside
        r = segment_in_domain(SQUARE, seg((Q(-1, 4), Q(1, 2)), (Q(3, 4), Q(1, 2))))
        assert not r.inside

    def test_bump_segment_conservative(self):
        dom = builtin("fig2-smooth")
        # horizontal at height 1 passes through both bump peaks
        r = segment_in_domain(dom, seg((-3, 1), (3, 1)))
        assert not r.inside
        # safely below the top bump and above the bottom one on the left half
        assert segment_in_domain(dom, seg((-3, Q(1, 2)), (Q(-1, 2), Q(1, 2)))).inside
        # segment clear of the supports entirely: exact accept
        assert segment_in_domain(dom, seg((2, Q(1, 10)), (3, Q(19, 10)))).inside


class TestEllipse:
    def test_fig1_wide_flat_segment_footprint(self):
        e = Ellipse2(Point2(0, 1), (3, Q(1, 3)), (0, 0))
        assert ellipse_in_domain(FIG1, e)
        # agrees with the open-segment reduction
        s = Segment2(Point2(-3, Q(2, 3)), Point2(3, Q(4, 3)), closed=False)
        assert segment_in_domain(FIG1, s).inside

    def test_unit_disk_in_strip(self):
        assert ellipse_in_domain(STRIP, Ellipse2(Point2(0, 1), (0, 1), (1, 0)))

    def test_tall_segment_escapes_strip(self):
        assert not ellipse_in_domain(STRIP, Ellipse2(Point2(0, 1), (0, 2), (0, 0)))

    def test_point_degeneration(self):
        assert ellipse_in_domain(FIG1, Ellipse2(Point2(0, 1), (0, 0), (0, 0)))
        assert not ellipse_in_domain(FIG1, Ellipse2(Point2(-1, Q(3, 2)), (0, 0), (0, 0)))

    def test_segment_agreement_randomized(self):
        rng = random.Random(23)
        for dom in (FIG1, STRIP, SQUARE):
            for _ in range(200):
                c = (Q(rng.randrange(-30, 30), 16), Q(rng.randrange(-10, 40), 16))
                u = (Q(rng.randrange(-40, 40), 16), Q(rng.randrange(-40, 40), 16))
                e = Ellipse2(Point2(*c), u, (0, 0))
                s = Segment2(
                    Point2(c[0] - u[0], c[1] - u[1]),
                    Point2(c[0] + u[0], c[1] + u[1]),
                    closed=False,
                )
                assert ellipse_in_domain(dom, e) == segment_in_domain(dom, s).inside

    def test_true_ellipse_against_slits(self):
        # footprint of the k=2 paper map tilted slightly into a real ellipse
        e = Ellipse2(Point2(0, 1), (2, Q(1, 2)), (0, Q(1, 8)))
        assert ellipse_in_domain(FIG1, e)
        # widen the vertical half-axis until it grazes the slit at x1=1
        e2 = Ellipse2(Point2(0, 1), (2, Q(1, 2)), (0, Q(1, 2)))
        assert not ellipse_in_domain(FIG1, e2)

    def test_ellipse_contained_implies_samples_in_strip(self):
        # float sampling of the open footprint cannot land outside the
        # strip when the exact verdict says contained (slit lines have
        # measure zero and are unreachable by generic float samples)
        rng = random.Random(41)
        checked = 0
        for _ in range(300):
            c = (Q(rng.randrange(-20, 20), 8), Q(rng.randrange(10, 22), 16))
            u = (Q(rng.randrange(-8, 8), 16), Q(rng.randrange(-8, 8), 16))
            v = (Q(rng.randrange(-8, 8), 16), Q(rng.randrange(-8, 8), 16))
            e = Ellipse2(Point2(*c), u, v)
            if not ellipse_in_domain(FIG1, e):
                continue
            checked += 1
            for _ in range(120):
                ang = rng.uniform(0, 2 * math.pi)
                rad = math.sqrt(rng.uniform(0, 1)) * 0.999
                x = rad * math.cos(ang)
                y = rad * math.sin(ang)
                py = float(c[1]) + x * float(u[1]) + y * float(v[1])
                assert -1e-9 < py < 2 + 1e-9
        assert checked >= 10

    def test_square_inscribed_disk(self):
        e = Ellipse2(Point2(Q(1, 2), Q(1, 2)), (Q(1, 2), 0), (0, Q(1, 2)))
        assert ellipse_in_domain(SQUARE, e)
        e2 = Ellipse2(Point2(Q(1, 2), Q(1, 2)), (Q(501, 1000), 0), (0, Q(1, 2)))
        assert not ellipse_in_domain(SQUARE, e2)

    def test_poly_obstacle_ellipse(self):
        dom = Domain(
            base=Strip(0, 2),
            obstacles=(PolyObstacle((Point2(-1, 1), Point2(1, 1), Point2(0, Q(3, 2)))),),
        )
        assert not ellipse_in_domain(dom, Ellipse2(Point2(0, Q(9, 8)), (Q(1, 8), 0), (0, Q(1, 16))))
        assert ellipse_in_domain(dom, Ellipse2(Point2(0, Q(1, 2)), (1, 0), (0, Q(1, 4))))

    def test_bump_ellipse_conservative(self):
        dom = builtin("fig2-smooth")
        # small disk near the top bump peak must be rejected
        assert not ellipse_in_domain(
            dom, Ellipse2(Point2(-1, Q(5, 4)), (Q(1, 8), 0), (0, Q(1, 8)))
        )
        # disk well inside the middle of the strip is fine
        assert ellipse_in_domain(
            dom, Ellipse2(Point2(0, 1), (Q(1, 4), 0), (0, Q(1, 4)))
        )


class TestBump:
    def test_peak_value(self):
        b = Bump("top", 0, 1, Q(3, 2))
        assert bump_height(b, 0) == 1.5

    def test_support_boundary_zero(self):
        b = Bump("top", 0, 1, 1)
        assert bump_height(b, 1) == 0.0
        assert bump_height(b, -1) == 0.0
        assert bump_height(b, 5) == 0.0

    def test_half_width_value(self):
        b = Bump("top", 0, 1, 1)
        assert bump_height(b, 0.5) == pytest.approx(math.exp(1 - 4 / 3), abs=1e-12)
        assert bump_height(b, 0.5) == pytest.approx(0.7165313105737893, abs=1e-9)

    def test_even_and_monotone(self):
        b = Bump("bottom", Q(1, 2), Q(3, 4), 2)
        xs = [0.5 + 0.75 * i / 50 for i in range(51)]
        vals = [bump_height(b, x) for x in xs]
        for x in xs:
            assert bump_height(b, 0.5 + (0.5 - x)) == pytest.approx(
                bump_height(b, x), rel=1e-12
            )
        assert all(vals[i] >= vals[i + 1] - 1e-15 for i in range(50))

    def test_smooth_attachment_proxy(self):
        b = Bump("top", 0, 1, 1)
        h = 1e-3
        for edge in (-1.0, 1.0):
            f = lambda x: bump_height(b, x)
            d1 = (f(edge + h) - f(edge - h)) / (2 * h)
            d2 = (f(edge + h) - 2 * f(edge) + f(edge - h)) / h**2
            d3 = (f(edge + 2 * h) - 2 * f(edge + h) + 2 * f(edge - h) - f(edge - 2 * h)) / (
                2 * h**3
            )
            assert abs(d1) < 1e-6
            assert abs(d2) < 1e-6
            assert abs(d3) < 1e-6


class TestHullClassify:
    def test_fig1(self):
        rep = hull_classify(FIG1)
        assert rep.case == "I"
        assert rep.hull == Strip(0, 2)

    def test_halfplane(self):
        dom = Domain(base=HalfPlane(0))
        rep = hull_classify(dom)
        assert rep.case == "I" and rep.hull == HalfPlane(0)

    def test_square(self):
        rep = hull_classify(SQUARE)
        assert rep.case == "I" and rep.hull == SQUARE.base


class TestValidation:
    def test_slit_needs_order(self):
        with pytest.raises(GeometryError):
            SlitV(0, 2, 1)

    def test_strip_needs_order(self):
        with pytest.raises(GeometryError):
            Strip(2, 0)

    def test_polygon_simple(self):
        with pytest.raises(GeometryError):
            PolyObstacle((Point2(0, 0), Point2(1, 1), Point2(1, 0), Point2(0, 1)))

    def test_boxpoly_convex(self):
        with pytest.raises(GeometryError):
            BoxPoly((Point2(0, 0), Point2(2, 0), Point2(1, Q(1, 2)), Point2(2, 2)))

    def test_obstacle_must_fit_base(self):
        with pytest.raises(GeometryError):
            Domain(base=Strip(0, 2), obstacles=(SlitV(0, 1, 3),))

    def test_bump_needs_strip_boundary(self):
        with pytest.raises(GeometryError):
            Domain(base=HalfPlane(0), obstacles=(Bump("top", 0, 1, 1),))
        Domain(base=HalfPlane(0), obstacles=(Bump("bottom", 0, 1, 1),))

    def test_loeb_normalization_flag(self):
        assert builtin("fig1").is_loeb_normalized()
        assert not Domain(base=Strip(-1, 1)).is_loeb_normalized()
