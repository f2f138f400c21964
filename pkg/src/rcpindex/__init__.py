"""Range closest-pair (RCP) indexes for planar point sets.

Preprocess a set of points so that, for a query range (quadrant, strip,
rectangle, or halfplane), the closest pair of points inside the range is
reported in logarithmic time.  Companion structures answer shortest-contained-
segment queries over segment sets.  Everything is backed by brute-force
oracles used throughout the test suite.
"""

from .geom import (
    Point,
    PointPair,
    Line,
    Wedge,
    Quadrant,
    VStrip,
    HStrip,
    ThreeSided,
    Rect,
    Halfplane,
    dist,
    canonical_pair,
    closest_pair_dc,
    dualize_point,
    dualize_line,
    wedge_of_pair,
    minimal_range,
    segments_cross,
)

__all__ = [
    "Point",
    "PointPair",
    "Line",
    "Wedge",
    "Quadrant",
    "VStrip",
    "HStrip",
    "ThreeSided",
    "Rect",
    "Halfplane",
    "dist",
    "canonical_pair",
    "closest_pair_dc",
    "dualize_point",
    "dualize_line",
    "wedge_of_pair",
    "minimal_range",
    "segments_cross",
]

__version__ = "0.1.0"
