"""Exact enumeration of candidate pairs for each query family.

A pair of dataset points is a *candidate* for a query family when it is the
closest pair of the dataset clipped to the family's inclusion-minimal range
around the pair; the index structures store exactly those pairs.  For the
orthogonal families candidacy is a dominance condition — a pair is a candidate
iff no strictly shorter pair has its minimal range nested inside the pair's
own — so the enumerators sweep the points in range-parameter order and keep
Pareto records of the shortest pair seen per parameter prefix.  Record
thresholds shrink monotonically along each scan, which kills partner scans
early and makes the sweeps output-sensitive on typical data while remaining
exact on every input: float comparisons fall back to rational arithmetic near
ties, and search radii are inflated so borderline pairs are always re-checked
exactly.

``convex_chain_halfplane_candidates`` is the one non-orthogonal enumerator: on
a strictly convex chain every halfplane meets the chain in a prefix plus a
suffix of the x-order, so the halfplane candidates are covered by prefix
records, suffix records, and prefix-suffix (cross) records.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections.abc import Sequence
from functools import cmp_to_key

import numpy as np
from sortedcontainers import SortedList

from ._exact import cmp_sq_dist, orientation
from .geom import Point, PointPair, canonical_pair, sort_pairs
from .subdiv import MinIndexDominance

_REL = 1e-9            # relative slack under which float length comparisons go exact
_INFLATE = 1.0 + 1e-7  # search-radius inflation so borderline partners are re-checked


# ---------------------------------------------------------------------------
# Exact pair records
# ---------------------------------------------------------------------------
# A record is (l2, i, j): the float squared length plus the two point indices.
# Comparisons decide on floats when the gap is decisive and fall back to exact
# squared distances (and then lexicographic endpoints) otherwise.

def _rec_cmp(pts: Sequence[Point], a: tuple, b: tuple) -> int:
    l2a, ia, ja = a
    l2b, ib, jb = b
    if l2a < l2b:
        if l2b - l2a > _REL * l2b:
            return -1
    elif l2b < l2a:
        if l2a - l2b > _REL * l2a:
            return 1
    c = cmp_sq_dist(pts[ia].as_tuple(), pts[ja].as_tuple(),
                    pts[ib].as_tuple(), pts[jb].as_tuple())
    if c:
        return c
    ka = _lex_key(pts, ia, ja)
    kb = _lex_key(pts, ib, jb)
    return -1 if ka < kb else (1 if ka > kb else 0)


def _lex_key(pts: Sequence[Point], i: int, j: int):
    a = (pts[i].x, pts[i].y)
    b = (pts[j].x, pts[j].y)
    return (a, b) if a <= b else (b, a)


def _emit(pts: Sequence[Point], recs: Sequence[tuple]) -> list[PointPair]:
    return sort_pairs(canonical_pair(pts[i], pts[j]) for _, i, j in recs)


# ---------------------------------------------------------------------------
# Record staircase: prefix minima over one scalar key
# ---------------------------------------------------------------------------

class _RecordStaircase:
    """Prefix-minimum records over a scalar key.

    ``best(k)`` is the smallest record among entries with key <= k (None when
    empty there).  Inserts drop entries that no longer improve any prefix, so
    keys stay strictly increasing while values strictly improve.
    """

    __slots__ = ("keys", "recs", "_cmp")

    def __init__(self, cmp):
        self.keys: list[float] = []
        self.recs: list[tuple] = []
        self._cmp = cmp

    def best(self, key: float):
        t = bisect_right(self.keys, key)
        return self.recs[t - 1] if t else None

    def insert(self, key: float, rec: tuple) -> bool:
        t = bisect_right(self.keys, key)
        if t and self._cmp(rec, self.recs[t - 1]) >= 0:
            return False
        if t and self.keys[t - 1] == key:
            t -= 1
            del self.keys[t]
            del self.recs[t]
        u = t
        while u < len(self.recs) and self._cmp(self.recs[u], rec) >= 0:
            u += 1
        del self.keys[t:u]
        del self.recs[t:u]
        self.keys.insert(t, key)
        self.recs.insert(t, rec)
        return True


# ---------------------------------------------------------------------------
# Incremental neighbor grid
# ---------------------------------------------------------------------------

class _NeighborGrid:
    """Uniform hash grid over incrementally inserted point indices.

    The cell size re-targets one point per cell on doubling sizes, so disk
    scans cost about the number of points within the (inflated) radius.
    """

    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        self.xs = xs
        self.ys = ys
        self.cells: dict[tuple[int, int], list[int]] = {}
        self.members: list[int] = []
        self.cell = 1.0
        self.x0 = 0.0
        self.y0 = 0.0
        self._bounds = [0, 0, 0, 0]  # ix_lo, ix_hi, iy_lo, iy_hi over occupied cells
        self._next_rebuild = 8

    def insert(self, i: int) -> None:
        self.members.append(i)
        if len(self.members) >= self._next_rebuild:
            self._rebuild()
        else:
            self._add(i)

    def _rebuild(self) -> None:
        m = self.members
        xs = self.xs
        ys = self.ys
        xlo = min(xs[i] for i in m)
        xhi = max(xs[i] for i in m)
        ylo = min(ys[i] for i in m)
        yhi = max(ys[i] for i in m)
        w = xhi - xlo
        h = yhi - ylo
        k = len(m)
        self.cell = max(math.sqrt(w * h / k), (w + h) / (2 * k), 1e-300)
        self.x0 = xlo
        self.y0 = ylo
        self.cells = {}
        self._bounds = [1 << 60, -(1 << 60), 1 << 60, -(1 << 60)]
        for i in m:
            self._add(i)
        self._next_rebuild = 2 * k

    def _add(self, i: int) -> None:
        ix = int((self.xs[i] - self.x0) // self.cell)
        iy = int((self.ys[i] - self.y0) // self.cell)
        self.cells.setdefault((ix, iy), []).append(i)
        b = self._bounds
        b[0] = min(b[0], ix)
        b[1] = max(b[1], ix)
        b[2] = min(b[2], iy)
        b[3] = max(b[3], iy)

    def in_band_disk(self, x: float, y: float, r: float,
                     band_lo: float, band_hi: float, lo_strict: bool) -> list[int]:
        """Indices within distance < r of (x, y) whose y lies in the band
        (band_lo, band_hi] or [band_lo, band_hi) depending on ``lo_strict``."""
        if not self.members:
            return []
        c = self.cell
        b = self._bounds
        ylo = max(band_lo, y - r)
        yhi = min(band_hi, y + r)
        if ylo > yhi:
            return []
        ix0 = max(int((x - r - self.x0) // c), b[0])
        ix1 = min(int((x + r - self.x0) // c), b[1])
        iy0 = max(int((ylo - self.y0) // c) - 1, b[2])
        iy1 = min(int((yhi - self.y0) // c) + 1, b[3])
        r2 = r * r
        xs = self.xs
        ys = self.ys
        cells = self.cells
        out = []
        for ix in range(ix0, ix1 + 1):
            for iy in range(iy0, iy1 + 1):
                lst = cells.get((ix, iy))
                if not lst:
                    continue
                for q in lst:
                    qy = ys[q]
                    if lo_strict:
                        if not (band_lo < qy <= band_hi):
                            continue
                    elif not (band_lo <= qy < band_hi):
                        continue
                    dx = xs[q] - x
                    dy = qy - y
                    if dx * dx + dy * dy < r2:
                        out.append(q)
        return out

    def in_disk(self, x: float, y: float, r: float) -> list[int]:
        return self.in_band_disk(x, y, r, -math.inf, math.inf, True)


# ---------------------------------------------------------------------------
# Quadrant candidates
# ---------------------------------------------------------------------------

# Sign maps sending each opening to the SW-canonical sweep frame, where the
# minimal-range vertex is the componentwise maximum and a pair dominates
# another iff its vertex is componentwise <=.
_QUADRANT_SWEEP_SIGNS = {
    "SW": (1.0, 1.0),
    "NE": (-1.0, -1.0),
    "NW": (1.0, -1.0),
    "SE": (-1.0, 1.0),
}


def quadrant_candidates(points: Sequence[Point], orientation: str) -> list[PointPair]:
    """Candidate pairs of the quadrant family with the given opening.

    Sweeps points by canonical x; a pair is accepted iff no strictly shorter
    accepted pair has a componentwise-smaller minimal-range vertex, tracked by
    a record staircase over the vertex y plus a neighbor grid for partner
    search.  Output is sorted by the exact (length, endpoints) order.
    """
    if orientation not in _QUADRANT_SWEEP_SIGNS:
        raise ValueError(f"bad quadrant orientation {orientation!r}")
    pts = list(points)
    n = len(pts)
    if n < 2:
        return []
    sx, sy = _QUADRANT_SWEEP_SIGNS[orientation]
    tx = [sx * p.x for p in pts]
    ty = [sy * p.y for p in pts]
    order = sorted(range(n), key=lambda i: (tx[i], ty[i]))

    def cmp(a: tuple, b: tuple) -> int:
        return _rec_cmp(pts, a, b)

    def vcmp(A: tuple, B: tuple) -> int:
        if A[0] != B[0]:
            return -1 if A[0] < B[0] else 1
        return cmp(A[1], B[1])

    stair = _RecordStaircase(cmp)
    grid = _NeighborGrid(tx, ty)
    q0 = -1  # processed point with lexicographically smallest (ty, tx)
    out: list[tuple] = []

    # Points sharing a sweep x go through one collective verdict: a pair's
    # dominators can share its vertex x, so per-point accepts would commit
    # before every same-x dominator is known.
    s = 0
    while s < n:
        e = s
        px = tx[order[s]]
        while e < n and tx[order[e]] == px:
            e += 1
        group = order[s:e]
        s = e
        gfound: list[tuple[float, tuple]] = []  # (vertex_y, record)
        for gi, ip in enumerate(group):
            py = ty[ip]
            if grid.members:
                thr0 = stair.best(py)
                if thr0 is not None:
                    r = math.sqrt(thr0[0]) * _INFLATE
                    for q in grid.in_band_disk(px, py, r, -math.inf, py, True):
                        dx = px - tx[q]
                        dy = py - ty[q]
                        gfound.append((py, (dx * dx + dy * dy, ip, q)))
                elif ty[q0] <= py:
                    # no record at or below our level => at most one point there
                    dx = px - tx[q0]
                    dy = py - ty[q0]
                    gfound.append((py, (dx * dx + dy * dy, ip, q0)))
                if ty[q0] > py and stair.best(ty[q0]) is None:
                    # the lone lowest point sits above us, below every record band
                    dx = px - tx[q0]
                    dy = py - ty[q0]
                    gfound.append((ty[q0], (dx * dx + dy * dy, ip, q0)))
                keys = stair.keys
                recs = stair.recs
                t = bisect_right(keys, py) - 1
                if t < 0:
                    t = 0
                while t < len(keys):
                    rec_t = recs[t]
                    r_t = math.sqrt(rec_t[0]) * _INFLATE
                    lo = keys[t] if keys[t] > py else py
                    if lo >= py + r_t:
                        break
                    hi = keys[t + 1] if t + 1 < len(keys) else math.inf
                    for q in grid.in_band_disk(px, py, r_t, lo, hi,
                                               lo_strict=(lo == py)):
                        dx = px - tx[q]
                        dy = py - ty[q]
                        gfound.append((ty[q], (dx * dx + dy * dy, ip, q)))
                    t += 1
            for qj in group[:gi]:
                dy = py - ty[qj]
                gfound.append((max(py, ty[qj]), (dy * dy, ip, qj)))
        if gfound:
            gfound.sort(key=cmp_to_key(vcmp))
            for corner, rec in gfound:
                thr = stair.best(corner)
                if thr is None or cmp(rec, thr) < 0:
                    out.append(rec)
                    stair.insert(corner, rec)
        for ip in group:
            if q0 < 0 or (ty[ip], tx[ip]) < (ty[q0], tx[q0]):
                q0 = ip
            grid.insert(ip)
    return _emit(pts, out)


# ---------------------------------------------------------------------------
# Strip candidates
# ---------------------------------------------------------------------------

def strip_candidates(points: Sequence[Point], axis: str = "v") -> list[PointPair]:
    """Candidate pairs of the axis-parallel strip family.

    A pair dominates another iff its coordinate extent is nested inside the
    other's, so the sweep processes points by the extent coordinate and scans
    partners right-to-left in numpy chunks until the extent width alone
    exceeds the record threshold for every remaining partner.
    """
    if axis not in ("v", "h"):
        raise ValueError(f"bad strip axis {axis!r}")
    pts = list(points)
    n = len(pts)
    if n < 2:
        return []
    if axis == "v":
        ex = [p.x for p in pts]
        ey = [p.y for p in pts]
    else:
        ex = [p.y for p in pts]
        ey = [p.x for p in pts]
    order = sorted(range(n), key=lambda i: (ex[i], ey[i]))

    def cmp(a: tuple, b: tuple) -> int:
        return _rec_cmp(pts, a, b)

    def vcmp(A: tuple, B: tuple) -> int:
        if A[0] != B[0]:
            return -1 if A[0] < B[0] else 1
        return cmp(A[1], B[1])

    stair = _RecordStaircase(cmp)  # keyed by -left so best() is a suffix min
    skeys = np.empty(0)
    sl2 = np.empty(0)
    stale = True
    EX = np.empty(n)
    EY = np.empty(n)
    OI = np.empty(n, dtype=np.int64)
    m = 0
    out: list[tuple] = []

    # Points sharing an extent coordinate go through one collective verdict,
    # as same-x dominators of a pair may only be emitted after it.
    s = 0
    while s < n:
        e = s
        x = ex[order[s]]
        while e < n and ex[order[e]] == x:
            e += 1
        group = order[s:e]
        s = e
        gfound: list[tuple[float, tuple]] = []  # (-left, record)
        if stale and m:
            skeys = np.array(stair.keys)
            sl2 = np.array([r[0] for r in stair.recs])
            stale = False
        for gi, ip in enumerate(group):
            y = ey[ip]
            j = m
            chunk = 64
            dead = False
            while j > 0 and not dead:
                a = max(0, j - chunk)
                qx = EX[a:j]
                dx = x - qx
                dx2 = dx * dx
                if skeys.size:
                    idx = np.searchsorted(skeys, -qx, side="right") - 1
                    thr = np.where(idx >= 0, sl2[np.maximum(idx, 0)], np.inf)
                else:
                    thr = np.full(j - a, np.inf)
                deadmask = dx2 > thr * (1.0 + _REL)
                rev = deadmask[::-1]
                if rev.any():
                    lo_alive = (j - a) - int(np.argmax(rev))
                    dead = True
                else:
                    lo_alive = 0
                if lo_alive < j - a:
                    dy = y - EY[a:j]
                    d2 = dx2 + dy * dy
                    passers = np.nonzero(
                        d2[lo_alive:] < thr[lo_alive:] * (1.0 + _REL))[0]
                    for pos in passers:
                        k = a + lo_alive + int(pos)
                        gfound.append((float(-EX[k]),
                                       (float(d2[lo_alive + int(pos)]),
                                        ip, int(OI[k]))))
                j = a
                chunk = min(chunk * 2, 4096)
            for qj in group[:gi]:
                dy = y - ey[qj]
                gfound.append((-x, (dy * dy, ip, qj)))
        if gfound:
            gfound.sort(key=cmp_to_key(vcmp))
            for key, rec in gfound:
                thr_rec = stair.best(key)
                if thr_rec is None or cmp(rec, thr_rec) < 0:
                    out.append(rec)
                    stair.insert(key, rec)
                    stale = True
        for ip in group:
            EX[m] = ex[ip]
            EY[m] = ey[ip]
            OI[m] = ip
            m += 1
    return _emit(pts, out)


# ---------------------------------------------------------------------------
# Three-sided candidates
# ---------------------------------------------------------------------------

def _three_sided_frame(pts: Sequence[Point], orientation: str):
    """Map points into the down-canonical frame: extent coordinate cx,
    cap coordinate cy, minimal range [cx-lo, cx-hi] x (-inf, cy-max]."""
    if orientation == "down":
        return [p.x for p in pts], [p.y for p in pts]
    if orientation == "up":
        return [p.x for p in pts], [-p.y for p in pts]
    if orientation == "left":
        return [p.y for p in pts], [p.x for p in pts]
    if orientation == "right":
        return [p.y for p in pts], [-p.x for p in pts]
    raise ValueError(f"bad 3-sided orientation {orientation!r}")


class _Dominance2DMin:
    """Smallest record among entries with key componentwise <= a query corner,
    under insertions: a static merge structure over most entries plus a small
    linear buffer, rebuilt geometrically."""

    def __init__(self, cmp):
        self._cmp = cmp
        self._static: MinIndexDominance | None = None
        self._srecs: list[tuple] = []
        self._skx: list[float] = []
        self._sky: list[float] = []
        self._buf: list[tuple[float, float, tuple]] = []

    def insert(self, kx: float, ky: float, rec: tuple) -> None:
        self._buf.append((kx, ky, rec))
        if len(self._buf) > max(32, len(self._srecs) // 3):
            entries = list(zip(self._skx, self._sky, self._srecs)) + self._buf
            entries.sort(key=cmp_to_key(lambda A, B: self._cmp(A[2], B[2])))
            self._skx = [e[0] for e in entries]
            self._sky = [e[1] for e in entries]
            self._srecs = [e[2] for e in entries]
            self._static = MinIndexDominance(self._skx, self._sky)
            self._buf = []

    def best(self, kx: float, ky: float):
        best = None
        if self._static is not None:
            i = self._static.query(kx, ky)
            if i is not None:
                best = self._srecs[i]
        for bx, by, rec in self._buf:
            if bx <= kx and by <= ky and (best is None or self._cmp(rec, best) < 0):
                best = rec
        return best


def three_sided_candidates(points: Sequence[Point],
                           orientation: str = "down") -> list[PointPair]:
    """Candidate pairs of the three-sided (half-open box) family.

    Dominance needs extent nesting plus a cap comparison; processing points in
    cap order makes the cap condition automatic, leaving a two-dimensional
    extent-nesting minimum maintained by a rebuilt merge structure.
    """
    pts = list(points)
    n = len(pts)
    if n < 2:
        return []
    cx, cy = _three_sided_frame(pts, orientation)
    order = sorted(range(n), key=lambda i: (cy[i], cx[i]))

    def cmp(a: tuple, b: tuple) -> int:
        return _rec_cmp(pts, a, b)

    dom = _Dominance2DMin(cmp)
    sl: SortedList = SortedList()
    out: list[tuple] = []

    # Points sharing a cap coordinate go through one collective verdict, as
    # equal-cap dominators of a pair may only be emitted after it.
    s = 0
    while s < n:
        e = s
        y = cy[order[s]]
        while e < n and cy[order[e]] == y:
            e += 1
        group = order[s:e]
        s = e
        gfound: list[tuple[tuple, float, float]] = []  # (rec, left, right)
        for gi, ip in enumerate(group):
            x = cx[ip]
            pos = sl.bisect_right((x, math.inf, 1 << 60))
            for k in range(pos - 1, -1, -1):  # left partners, rightmost first
                qxv, qyv, qi = sl[k]
                dx = x - qxv
                thr = dom.best(-qxv, x)
                if thr is not None:
                    if dx * dx > thr[0] * (1.0 + _REL):
                        break
                    dy = y - qyv
                    d2 = dx * dx + dy * dy
                    if d2 < thr[0] * (1.0 + _REL):
                        gfound.append(((d2, ip, qi), qxv, x))
                else:
                    dy = y - qyv
                    gfound.append(((dx * dx + dy * dy, ip, qi), qxv, x))
            for k in range(pos, len(sl)):  # right partners, leftmost first
                qxv, qyv, qi = sl[k]
                dx = qxv - x
                thr = dom.best(-x, qxv)
                if thr is not None:
                    if dx * dx > thr[0] * (1.0 + _REL):
                        break
                    dy = y - qyv
                    d2 = dx * dx + dy * dy
                    if d2 < thr[0] * (1.0 + _REL):
                        gfound.append(((d2, ip, qi), x, qxv))
                else:
                    dy = y - qyv
                    gfound.append(((dx * dx + dy * dy, ip, qi), x, qxv))
            for qj in group[:gi]:
                dx = x - cx[qj]
                lo = min(x, cx[qj])
                hi = max(x, cx[qj])
                gfound.append(((dx * dx, ip, qj), lo, hi))
        gfound.sort(key=cmp_to_key(lambda A, B: cmp(A[0], B[0])))
        for rec, leftv, rightv in gfound:
            thr = dom.best(-leftv, rightv)
            if thr is None or cmp(rec, thr) < 0:
                out.append(rec)
                dom.insert(-leftv, rightv, rec)
        for ip in group:
            sl.add((cx[ip], cy[ip], ip))
    return _emit(pts, out)


def crossing_filter(pairs: Sequence[PointPair], axis: str,
                    coord: float) -> list[PointPair]:
    """Pairs whose endpoints lie strictly on opposite sides of an
    axis-parallel line (axis 'x' keys on point x, 'y' on point y)."""
    if axis not in ("x", "y"):
        raise ValueError(f"bad axis {axis!r}")
    key = (lambda p: p.x) if axis == "x" else (lambda p: p.y)
    return [phi for phi in pairs
            if min(key(phi.a), key(phi.b)) < coord < max(key(phi.a), key(phi.b))]


# ---------------------------------------------------------------------------
# Halfplane candidate supersets
# ---------------------------------------------------------------------------

def all_pairs_sorted(points: Sequence[Point]) -> list[PointPair]:
    """Every pair of distinct points in exact (length, endpoints) order.

    Quadratic by construction — meant as the default halfplane candidate
    superset at moderate sizes, where the wedge overlay filters it down.
    """
    pts = list(points)
    n = len(pts)
    if n < 2:
        return []
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    iu, ju = np.triu_indices(n, 1)
    d2 = (xs[iu] - xs[ju]) ** 2 + (ys[iu] - ys[ju]) ** 2
    order = np.argsort(d2, kind="stable")
    d2s = d2[order]
    pairs: list[PointPair] = []
    start = 0
    k = 1
    total = order.size
    while start < total:
        while k < total and d2s[k] <= d2s[k - 1] * (1.0 + _REL):
            k += 1
        block = [canonical_pair(pts[int(iu[order[t]])], pts[int(ju[order[t]])])
                 for t in range(start, k)]
        pairs.extend(sort_pairs(block) if len(block) > 1 else block)
        start = k
        k += 1
    return pairs


def convex_chain_halfplane_candidates(points: Sequence[Point],
                                      side: str = "up") -> list[PointPair]:
    """Sorted candidate-pair superset for halfplane queries on a strictly
    convex chain opening toward the halfplane side ('up' = halfplanes bounded
    from below).

    Every closed halfplane of that side meets the chain in a prefix plus a
    suffix of the x-order, so each closest pair some halfplane realizes is a
    prefix closest-pair record, a suffix record, or a closest prefix-suffix
    (cross) record; the three families are enumerated exactly and merged.
    Raises ValueError when the points do not form such a chain.
    """
    if side not in ("up", "down"):
        raise ValueError(f"bad halfplane side {side!r}")
    pts = list(points)
    n = len(pts)
    if n < 2:
        return []
    flip = 1.0 if side == "up" else -1.0
    order = sorted(range(n), key=lambda i: (pts[i].x, flip * pts[i].y))
    xs = [pts[i].x for i in order]
    ys = [flip * pts[i].y for i in order]
    for k in range(1, n):
        if xs[k] == xs[k - 1]:
            raise ValueError("convex chain needs distinct x-coordinates")
    for k in range(1, n - 1):
        if orientation(xs[k - 1], ys[k - 1], xs[k], ys[k],
                       xs[k + 1], ys[k + 1]) <= 0:
            raise ValueError("points are not a strictly convex chain "
                             f"toward side {side!r}")

    def cmp(a: tuple, b: tuple) -> int:
        la, ia, ja = a
        lb, ib, jb = b
        return _rec_cmp(pts, (la, order[ia], order[ja]), (lb, order[ib], order[jb]))

    recs: dict[tuple[int, int], tuple] = {}

    def keep(rec: tuple) -> None:
        i, j = rec[1], rec[2]
        recs[(i, j) if i < j else (j, i)] = rec

    pref_recs, pref = _chain_end_scan(xs, ys, cmp, range(n))
    suf_recs, suf = _chain_end_scan(xs, ys, cmp, range(n - 1, -1, -1))
    for rec in pref_recs:
        keep(rec)
    for rec in suf_recs:
        keep(rec)
    for rec in _chain_bridge_pairs(xs, ys, pref, suf):
        keep(rec)
    return _emit(pts, [(l2, order[i], order[j]) for l2, i, j in recs.values()])


def _chain_end_scan(xs: list[float], ys: list[float], cmp, seq):
    """Closest-pair records of the growing prefixes of ``seq``.

    Returns (records, vals) where vals[i] is the squared closest-pair length
    of the points from the scan start through i (inf while under two points).
    """
    grid = _NeighborGrid(xs, ys)
    best: tuple | None = None
    out: list[tuple] = []
    vals = [math.inf] * len(xs)
    started = False
    for i in seq:
        x = xs[i]
        y = ys[i]
        if started:
            if best is None:
                q = grid.members[0]
                dx = x - xs[q]
                dy = y - ys[q]
                best = (dx * dx + dy * dy, i, q)
                out.append(best)
            else:
                r = math.sqrt(best[0]) * _INFLATE
                challenger = None
                for q in grid.in_disk(x, y, r):
                    dx = x - xs[q]
                    dy = y - ys[q]
                    rec = (dx * dx + dy * dy, i, q)
                    if challenger is None or cmp(rec, challenger) < 0:
                        challenger = rec
                if challenger is not None and cmp(challenger, best) < 0:
                    best = challenger
                    out.append(best)
            vals[i] = best[0]
        grid.insert(i)
        started = True
    return out, vals


def _chain_bridge_pairs(xs: list[float], ys: list[float],
                        pref: list[float], suf: list[float]) -> list[tuple]:
    """Pairs that could close a prefix-plus-suffix subset across the gap.

    If a bridge pair (i, j) is the closest pair of some subset
    {p_0..p_a} + {p_b..p_end} with i <= a < b <= j, it beats in particular
    the closest pair within p_0..p_i and within p_j..p_end, so j is confined
    to a short x-window right of i.  A slightly inflated float filter keeps
    borderline pairs; exact filtering happens downstream.
    """
    n = len(xs)
    out: list[tuple] = []
    for i in range(n - 1):
        w = pref[i]
        if w == math.inf:
            hi = n
        else:
            r = math.sqrt(w) * _INFLATE
            hi = bisect_left(xs, xs[i] + r)
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, hi):
            lim = suf[j]
            if w < lim:
                lim = w
            if lim == math.inf:
                dx = xs[j] - xi
                dy = ys[j] - yi
                out.append((dx * dx + dy * dy, i, j))
                continue
            dx = xs[j] - xi
            if dx * dx > lim * (1.0 + _REL):
                continue
            dy = ys[j] - yi
            d2 = dx * dx + dy * dy
            if d2 < lim * (1.0 + _REL):
                out.append((d2, i, j))
    return out
