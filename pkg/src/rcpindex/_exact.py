"""Exact geometric predicates over float inputs.

Floats are exact rationals, so every predicate here has a well-defined exact
answer.  Each predicate first evaluates in floating point with a conservative
error bound and falls back to ``fractions.Fraction`` arithmetic only when the
float result is inconclusive.  The fallback is rare on generic inputs but
makes tie handling deterministic.
"""

from __future__ import annotations

from fractions import Fraction

# Conservative relative error bound for short float expressions (a few ulps,
# padded).  Anything closer than this gets re-evaluated exactly.
_EPS_REL = 2.0 ** -44


def sq_dist_exact(ax: float, ay: float, bx: float, by: float) -> Fraction:
    """Exact squared distance between (ax, ay) and (bx, by)."""
    dx = Fraction(ax) - Fraction(bx)
    dy = Fraction(ay) - Fraction(by)
    return dx * dx + dy * dy


def cmp_sq_dist(a1, b1, a2, b2) -> int:
    """Compare squared lengths of segments (a1,b1) and (a2,b2) exactly.

    Returns -1, 0, or +1.  Arguments are (x, y) tuples.
    """
    dx1 = a1[0] - b1[0]
    dy1 = a1[1] - b1[1]
    dx2 = a2[0] - b2[0]
    dy2 = a2[1] - b2[1]
    s1 = dx1 * dx1 + dy1 * dy1
    s2 = dx2 * dx2 + dy2 * dy2
    diff = s1 - s2
    if abs(diff) > _EPS_REL * (s1 + s2):
        return -1 if diff < 0 else 1
    e1 = sq_dist_exact(a1[0], a1[1], b1[0], b1[1])
    e2 = sq_dist_exact(a2[0], a2[1], b2[0], b2[1])
    if e1 < e2:
        return -1
    if e1 > e2:
        return 1
    return 0


def orientation(ax: float, ay: float, bx: float, by: float,
                cx: float, cy: float) -> int:
    """Sign of the signed area of triangle (a, b, c).

    +1 for counterclockwise, -1 for clockwise, 0 for collinear.  Exact.
    """
    t1 = (bx - ax) * (cy - ay)
    t2 = (by - ay) * (cx - ax)
    det = t1 - t2
    bound = _EPS_REL * (abs(t1) + abs(t2))
    if abs(det) > bound:
        return 1 if det > 0 else -1
    e = ((Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay))
         - (Fraction(by) - Fraction(ay)) * (Fraction(cx) - Fraction(ax)))
    if e > 0:
        return 1
    if e < 0:
        return -1
    return 0


def cmp_line_values(s1: float, t1: float, s2: float, t2: float, x) -> int:
    """Compare lines y = s1*x - t1 and y = s2*x - t2 at abscissa ``x``.

    ``x`` may be a float or a Fraction.  Returns the sign of
    (s1*x - t1) - (s2*x - t2), computed exactly when floats are inconclusive.
    """
    if isinstance(x, Fraction):
        e = (Fraction(s1) - Fraction(s2)) * x - (Fraction(t1) - Fraction(t2))
        return (e > 0) - (e < 0)
    u1 = s1 * x - t1
    u2 = s2 * x - t2
    diff = u1 - u2
    if abs(diff) > _EPS_REL * (abs(u1) + abs(u2) + 1e-300):
        return 1 if diff > 0 else -1
    e = (Fraction(s1) - Fraction(s2)) * Fraction(x) - (Fraction(t1) - Fraction(t2))
    return (e > 0) - (e < 0)


def line_intersection_x(s1: float, t1: float, s2: float, t2: float) -> Fraction:
    """Exact x-coordinate where y = s1*x - t1 meets y = s2*x - t2.

    Requires s1 != s2.
    """
    return (Fraction(t1) - Fraction(t2)) / (Fraction(s1) - Fraction(s2))


def line_value(s: float, t: float, x) -> Fraction:
    """Exact value of y = s*x - t at ``x`` (float or Fraction)."""
    return Fraction(s) * Fraction(x) - Fraction(t)
