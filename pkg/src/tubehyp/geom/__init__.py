"""Exact and conservative planar geometry for tube-domain bases."""

from .ellipse import ellipse_in_domain
from .predicates import (
    BUMP_MARGIN,
    HullReport,
    HullUndecidable,
    SegmentCheck,
    bump_height,
    contains,
    hull_classify,
    segment_in_domain,
)
from .scalars import as_frac, cmp_lin_sqrt, cmp_sqrt, fmt_frac, parse_frac
from .types import (
    BoxPoly,
    Bump,
    ConvexBase,
    Domain,
    Ellipse2,
    GeometryError,
    HalfPlane,
    Obstacle,
    Point2,
    PolyObstacle,
    Segment2,
    SlitV,
    Strip,
)

__all__ = [
    "BUMP_MARGIN",
    "BoxPoly",
    "Bump",
    "ConvexBase",
    "Domain",
    "Ellipse2",
    "GeometryError",
    "HalfPlane",
    "HullReport",
    "HullUndecidable",
    "Obstacle",
    "Point2",
    "PolyObstacle",
    "SegmentCheck",
    "Segment2",
    "SlitV",
    "Strip",
    "as_frac",
    "bump_height",
    "cmp_lin_sqrt",
    "cmp_sqrt",
    "contains",
    "ellipse_in_domain",
    "fmt_frac",
    "hull_classify",
    "parse_frac",
    "segment_in_domain",
]
