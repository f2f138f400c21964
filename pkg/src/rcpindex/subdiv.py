"""Min-index overlays: subdivisions built by inserting regions in index order.

Both overlay families here answer the same query — ``locate(q)`` returns the
smallest index of an inserted region containing q, or None — but the region
shapes differ:

* :func:`build_quadrant_overlay` overlays axis-aligned quadrants.  The union
  of a prefix of quadrants is a staircase, each insertion touches the
  staircase boundary in at most two points, and location reduces to a
  min-index dominance query.
* :class:`WedgeOverlay` overlays upward-open wedges inserted in increasing
  order of the lengths of their defining pairs.  The uncovered outer face is
  bounded below by an x-monotone polyline (segments plus two rays)
  maintained under replace operations; each insertion exposes at most two
  uncovered intervals per wedge branch, found by anchored binary searches.

Counters track the exact subdivision complexity (vertices, edges, faces) and
the per-insertion growth; both overlays can dump their subdivision as JSON
for inspection.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sortedcontainers import SortedKeyList

from ._exact import line_intersection_x, line_value
from .geom import Point, Wedge

_INT_INF = 2**31 - 1

_QUADRANT_SIGNS = {"NE": (1.0, 1.0), "NW": (-1.0, 1.0),
                   "SE": (1.0, -1.0), "SW": (-1.0, -1.0)}


class MinIndexDominance:
    """Static min-index dominance queries: min{i : x_i <= qx and y_i <= qy}.

    A merge tree over the x-sorted order: every power-of-two aligned block
    stores its y-values sorted together with prefix minima of the original
    indices.  Queries decompose the x-prefix into O(log m) aligned blocks
    and binary-search each one, O(log^2 m) total.  Space is O(m log m),
    recorded in ``space_units``.
    """

    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        m = len(xs)
        self.m = m
        self.space_units = 0
        if m == 0:
            return
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        order = np.argsort(xs, kind="stable")
        self._xs = xs[order]
        ys_o = ys[order]
        idx_o = order.astype(np.int64)
        self._levels = []
        k = 0
        while (1 << k) <= m:
            block = 1 << k
            padded = ((m + block - 1) // block) * block
            py = np.full(padded, np.inf)
            pi = np.full(padded, _INT_INF, dtype=np.int64)
            grp = np.arange(m) // block
            ordk = np.lexsort((ys_o, grp))
            py[:m] = ys_o[ordk]
            pi[:m] = idx_o[ordk]
            pmin = np.minimum.accumulate(pi.reshape(-1, block), axis=1).reshape(-1)
            self._levels.append((py, pmin))
            self.space_units += padded
            k += 1

    def query(self, qx: float, qy: float) -> int | None:
        if self.m == 0:
            return None
        t = int(np.searchsorted(self._xs, qx, side="right"))
        best = _INT_INF
        pos = 0
        while pos < t:
            step = pos & -pos
            if step == 0:
                step = 1 << (len(self._levels) - 1)
            while step > t - pos:
                step >>= 1
            py, pmin = self._levels[step.bit_length() - 1]
            c = int(np.searchsorted(py[pos:pos + step], qy, side="right"))
            if c:
                best = min(best, int(pmin[pos + c - 1]))
            pos += step
        return None if best == _INT_INF else best


@dataclass
class OverlayComplexity:
    vertices: int = 0
    edges: int = 0
    faces: int = 1  # the trivial subdivision is one face, the whole plane

    def total(self) -> int:
        return self.vertices + self.edges + self.faces

    def as_dict(self) -> dict:
        return {"vertices": self.vertices, "edges": self.edges, "faces": self.faces}


class QuadrantOverlay:
    """Overlay of same-orientation quadrants with min-index location."""

    def __init__(self, vertices: Sequence[Point], orientation: str,
                 record_geometry: bool | None = None):
        if orientation not in _QUADRANT_SIGNS:
            raise ValueError(f"bad quadrant orientation {orientation!r}")
        self.orientation = orientation
        self.vertices = list(vertices)
        sx, sy = _QUADRANT_SIGNS[orientation]
        self._sx, self._sy = sx, sy
        m = len(self.vertices)
        if record_geometry is None:
            record_geometry = m <= 50_000
        self._record = record_geometry

        self.complexity_counts = OverlayComplexity()
        self.growth: list[int] = []
        self.useful: list[bool] = []
        self._strokes: list[tuple] = []  # transformed coords, for the dump
        vset: set[tuple[float, float]] = set()

        # Staircase frontier of the transformed union: corners with x
        # ascending and y strictly descending (Pareto-minimal corners only).
        fxs: list[float] = []
        fys: list[float] = []
        cc = self.complexity_counts
        txs = [sx * p.x for p in self.vertices]
        tys = [sy * p.y for p in self.vertices]
        for i in range(m):
            tx, ty = txs[i], tys[i]
            t = bisect_right(fxs, tx)
            if t > 0 and fys[t - 1] <= ty:
                self.useful.append(False)
                self.growth.append(0)
                continue
            # Corner is uncovered: this quadrant contributes a new face.
            vset.add((tx, ty))
            # The upward boundary ray enters the union where the staircase
            # sits above the corner; the sideways ray symmetrically.  Each
            # ray can meet the union boundary at most once.
            j1 = (tx, fys[t - 1]) if t > 0 else None
            lo = 0
            hi = len(fys)
            while lo < hi:
                mid = (lo + hi) // 2
                if fys[mid] <= ty:
                    hi = mid
                else:
                    lo = mid + 1
            j2 = (fxs[lo], ty) if lo < len(fxs) else None
            junctions = 0
            for j in (j1, j2):
                if j is not None and j not in vset:
                    vset.add(j)
                    junctions += 1
            assert junctions <= 2
            new_v = 1 + junctions
            new_e = 2 + junctions  # each new junction splits an existing edge
            cc.vertices += new_v
            cc.edges += new_e
            cc.faces += 1
            self.useful.append(True)
            self.growth.append(new_v + new_e + 1)
            if self._record:
                self._strokes.append((i, tx, ty,
                                      j1[1] if j1 else None,
                                      j2[0] if j2 else None))
            # Update the frontier: drop corners dominated by the new one.
            start = bisect_left(fxs, tx)
            end = start
            while end < len(fys) and fys[end] >= ty:
                end += 1
            del fxs[start:end]
            del fys[start:end]
            fxs.insert(start, tx)
            fys.insert(start, ty)

        self._vset = vset
        self._dom = MinIndexDominance(txs, tys)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def space_units(self) -> int:
        return self._dom.space_units

    def locate(self, q: Point) -> int | None:
        """Smallest index i such that quadrant i contains q, or None."""
        return self._dom.query(self._sx * q.x, self._sy * q.y)

    def locate_scan(self, q: Point) -> int | None:
        """Linear-scan reference for locate."""
        tx, ty = self._sx * q.x, self._sy * q.y
        for i, p in enumerate(self.vertices):
            if self._sx * p.x <= tx and self._sy * p.y <= ty:
                return i
        return None

    def complexity(self) -> dict:
        return self.complexity_counts.as_dict()

    def to_json(self) -> str:
        if not self._record:
            raise ValueError("geometry recording was disabled for this overlay")
        sx, sy = self._sx, self._sy
        verts = sorted(self._vset)
        edges = []
        for label, tx, ty, h, w in self._strokes:
            for piece in _split_stroke(tx, ty, h, True, verts):
                edges.append({"label": label, "kind": "vertical", **piece})
            for piece in _split_stroke(tx, ty, w, False, verts):
                edges.append({"label": label, "kind": "horizontal", **piece})
        faces = [{"label": None, "outer": True}]
        for i, u in enumerate(self.useful):
            if u:
                p = self.vertices[i]
                faces.append({"label": i, "corner": [p.x, p.y]})
        return json.dumps({
            "type": "quadrant-overlay",
            "orientation": self.orientation,
            "vertices": [[sx * x, sy * y] for x, y in verts],
            "edges": [_untransform_edge(e, sx, sy) for e in edges],
            "faces": faces,
            "complexity": self.complexity(),
        })


def _split_stroke(tx, ty, stop, vertical, verts):
    """Break one inserted boundary ray into subdivision edges at the known
    vertices lying on it (transformed coordinates)."""
    if vertical:
        on_it = [v for v in verts
                 if v[0] == tx and ty <= v[1] and (stop is None or v[1] <= stop)]
        on_it.sort(key=lambda v: v[1])
    else:
        on_it = [v for v in verts
                 if v[1] == ty and tx <= v[0] and (stop is None or v[0] <= stop)]
        on_it.sort(key=lambda v: v[0])
    pieces = [{"from": list(a), "to": list(b)} for a, b in zip(on_it, on_it[1:])]
    if stop is None and on_it:
        pieces.append({"from": list(on_it[-1]), "to": None})  # infinite ray
    return pieces


def _untransform_edge(e: dict, sx: float, sy: float) -> dict:
    out = dict(e)
    for key in ("from", "to"):
        v = out.get(key)
        if v is not None:
            out[key] = [sx * v[0], sy * v[1]]
    return out


def build_quadrant_overlay(vertices: Sequence[Point], orientation: str,
                           record_geometry: bool | None = None) -> QuadrantOverlay:
    """Overlay quadrants of one orientation, inserted in list order."""
    return QuadrantOverlay(vertices, orientation, record_geometry)


# ---------------------------------------------------------------------------
# Wedge overlay
# ---------------------------------------------------------------------------

class _Frac:
    """One piece of the outer-face boundary polyline: a segment or ray of
    the line y = s*x - t contributed by wedge ``owner``."""

    __slots__ = ("owner", "s", "t", "xl", "xr")

    def __init__(self, owner, s, t, xl, xr):
        self.owner = owner
        self.s = s
        self.t = t
        self.xl = xl  # None means -infinity
        self.xr = xr  # None means +infinity

    def val(self, x) -> Fraction:
        return line_value(self.s, self.t, x)

    def __repr__(self):
        return f"Frac(owner={self.owner}, y={self.s}x-{self.t}, [{self.xl},{self.xr}])"


def _frac_key(fr: _Frac):
    return -math.inf if fr.xl is None else fr.xl


@dataclass
class _StoredWedge:
    lo_s: float
    lo_t: float
    hi_s: float
    hi_t: float
    apex_x: Fraction
    apex_y: Fraction

    def fval(self, x) -> Fraction:
        """Height of the wedge boundary at x (max of the two lines)."""
        if x <= self.apex_x:
            return line_value(self.lo_s, self.lo_t, x)
        return line_value(self.hi_s, self.hi_t, x)

    def contains(self, x, y) -> bool:
        return (y >= line_value(self.lo_s, self.lo_t, x)
                and y >= line_value(self.hi_s, self.hi_t, x))


class WedgeOverlay:
    """Overlay of upward-open wedges inserted in increasing length order.

    ``insert`` either accepts a wedge — when part of it lies strictly below
    the current lower envelope — assigning it the next label and returning
    an exact witness point, or rejects it leaving the subdivision unchanged.
    Rejection is definitive: a wedge fully covered by earlier wedges can
    never be the minimum-index answer for any query point.

    The fast insertion path assumes wedges arrive in increasing order of
    their pairs' lengths with earlier accepted pairs mutually non-crossing;
    ``mode="linear"`` makes no such assumption and serves as a reference.
    """

    #: bound asserted on per-insertion complexity growth
    MAX_GROWTH = 16
    #: per-branch bound on uncovered intervals
    MAX_BRANCH_COMPONENTS = 2

    def __init__(self, mode: str = "bisect"):
        if mode not in ("bisect", "linear"):
            raise ValueError(f"bad mode {mode!r}")
        self.mode = mode
        self._fracs: SortedKeyList = SortedKeyList(key=_frac_key)
        self.wedges: list[_StoredWedge] = []
        self.attempted = 0
        self.complexity_counts = OverlayComplexity()
        self.growth: list[int] = []
        self.fractions_inserted = 0
        self.fractions_deleted = 0
        self._vset: set[tuple[Fraction, Fraction]] = set()
        self._edges: list[tuple] = []  # (owner, s, t, xl, xr)
        self._slabs = None

    def __len__(self) -> int:
        return len(self.wedges)

    # -- envelope probes ----------------------------------------------------

    def _frac_at(self, x) -> _Frac:
        i = self._fracs.bisect_key_right(x) - 1
        if i < 0:
            i = 0
        return self._fracs[i]

    def _g_at(self, x) -> Fraction:
        return self._frac_at(x).val(x)

    def _covered_at(self, s, t, x) -> bool:
        return line_value(s, t, x) >= self._g_at(x)

    def _far_covered(self, s, t, direction: int) -> bool:
        """Is the infinite end of the ray along y = s*x - t on or above the
        envelope, toward x -> -inf (direction=-1) or +inf (direction=+1)?"""
        fr = self._fracs[0] if direction < 0 else self._fracs[-1]
        if s == fr.s:
            return t <= fr.t
        if direction < 0:
            return s < fr.s
        return s > fr.s

    @staticmethod
    def _wedge_contains_far(w: _StoredWedge, s, t, direction: int) -> bool:
        """Does wedge w contain the points of the ray y = s*x - t for all x
        far enough toward the given direction?"""
        for js, jt in ((w.lo_s, w.lo_t), (w.hi_s, w.hi_t)):
            if s == js:
                if t > jt:
                    return False
            elif (s < js) != (direction < 0):
                return False
        return True

    def _holds_anchor(self, w: _StoredWedge, s, t, direction, tag, x) -> bool:
        if tag == "far":
            return self._wedge_contains_far(w, s, t, direction)
        return w.contains(x, line_value(s, t, x))

    # -- component search ---------------------------------------------------

    def _components_linear(self, sw: _StoredWedge) -> list[tuple]:
        """Open x-intervals where the wedge boundary lies strictly below the
        envelope.  Exact for any input; time linear in the polyline."""
        if not self._fracs:
            return [(None, None)]
        raw: list[tuple] = []
        for fr in self._fracs:
            for s, t, lo, hi in _branch_pieces(sw, fr.xl, fr.xr):
                raw.extend(_below_intervals(s, t, fr, lo, hi))
        return self._merge_intervals(raw, sw)

    def _merge_intervals(self, raw: list[tuple], sw: _StoredWedge) -> list[tuple]:
        out: list[tuple] = []
        for iv in raw:
            if out and _ends_meet(out[-1][1], iv[0]):
                x0 = iv[0]
                # join only when the shared endpoint is strictly below too
                if sw.fval(x0) < self._g_at(x0):
                    out[-1] = (out[-1][0], iv[1])
                    continue
            out.append(iv)
        return out

    def _components_bisect(self, sw: _StoredWedge) -> list[tuple]:
        if not self._fracs:
            return [(None, None)]
        apex_cov = self._covered_at(sw.lo_s, sw.lo_t, sw.apex_x)
        raw: list[tuple] = []
        for direction in (-1, +1):
            raw.extend(self._branch_gaps(sw, direction, apex_cov))
        return self._merge_intervals(raw, sw)

    def _branch_gaps(self, sw: _StoredWedge, direction: int, apex_cov: bool):
        """Uncovered open x-intervals along one branch of the wedge boundary.

        Any wedge already in the overlay meets the branch ray in a single
        interval that contains one of three anchors: the ray's infinite
        end, its apex end, or the point where the defining pair's slope
        turns perpendicular.  The anchors split the branch into at most two
        slots; inside a slot the covered part clings to the slot ends, so
        fracs classify monotonically as covered-from-the-left / strictly
        below / covered-from-the-right and two binary searches per slot
        recover the gap boundaries exactly.
        """
        s, t = (sw.lo_s, sw.lo_t) if direction < 0 else (sw.hi_s, sw.hi_t)
        apex_x = sw.apex_x
        anchors: list[tuple] = []  # (tag, x or None for the far end, covered)
        if direction < 0:
            anchors.append(("far", None, self._far_covered(s, t, -1)))
            if apex_x > 0:
                px = -1 / apex_x
                anchors.append(("perp", px, self._covered_at(s, t, px)))
            anchors.append(("apex", apex_x, apex_cov))
        else:
            anchors.append(("apex", apex_x, apex_cov))
            if apex_x < 0:
                px = -1 / apex_x
                anchors.append(("perp", px, self._covered_at(s, t, px)))
            anchors.append(("far", None, self._far_covered(s, t, +1)))
        gaps = []
        for k in range(len(anchors) - 1):
            gap = self._slot_gap(sw, s, t, direction, anchors, k)
            if gap is not None:
                gaps.append(gap)
        return gaps

    def _slot_gap(self, sw: _StoredWedge, s, t, direction, anchors, k):
        a_tag, a_x, a_cov = anchors[k]
        b_tag, b_x, b_cov = anchors[k + 1]
        if not a_cov and not b_cov:
            # A covered point between two uncovered anchors would need an
            # anchored interval passing through one of them.
            return (a_x, b_x)
        fracs = self._fracs
        n = len(fracs)
        k_lo = 0 if a_x is None else max(0, fracs.bisect_key_right(a_x) - 1)
        k_hi = n - 1 if b_x is None else max(0, fracs.bisect_key_left(b_x) - 1)
        if k_hi < k_lo:
            k_hi = k_lo
        left_anch = anchors[:k + 1]
        right_anch = anchors[k + 1:]

        def classify(j: int) -> int:
            # 0: covered, owner anchored left of the gap; 1: strictly below
            # somewhere; 2: covered, owner anchored right of the gap.
            fr = fracs[j]
            lo = fr.xl if (a_x is None or (fr.xl is not None and fr.xl > a_x)) else a_x
            hi = fr.xr if (b_x is None or (fr.xr is not None and fr.xr < b_x)) else b_x
            if _strictly_below_somewhere(s, t, fr, lo, hi):
                return 1
            w = self.wedges[fr.owner]
            if any(self._holds_anchor(w, s, t, direction, tag, x)
                   for tag, x, _ in left_anch):
                return 0
            if any(self._holds_anchor(w, s, t, direction, tag, x)
                   for tag, x, _ in right_anch):
                return 2
            # Off-contract input: treat as a gap candidate; the strictness
            # check on the assembled gap sorts it out.
            return 1

        if a_cov:
            lo_i, hi_i = k_lo, k_hi + 1
            while lo_i < hi_i:
                mid = (lo_i + hi_i) // 2
                if classify(mid) == 0:
                    lo_i = mid + 1
                else:
                    hi_i = mid
            g1 = lo_i
            if g1 > k_hi or classify(g1) == 2:
                return None  # slot fully covered
        else:
            g1 = k_lo
        lo_i, hi_i = g1, k_hi + 1
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            if classify(mid) == 2:
                hi_i = mid
            else:
                lo_i = mid + 1
        g2 = lo_i - 1  # last strictly-below frac
        if g2 < g1:
            return None
        if a_cov:
            fr = fracs[g1]
            if fr.s == s:
                return None
            u = line_intersection_x(s, t, fr.s, fr.t)
        else:
            u = a_x
        if b_cov:
            fr = fracs[g2]
            if fr.s == s:
                return None
            v = line_intersection_x(s, t, fr.s, fr.t)
        else:
            v = b_x
        if u is not None and v is not None and u >= v:
            return None
        return (u, v)

    # -- insertion ----------------------------------------------------------

    def insert(self, wedge: Wedge):
        """Insert the next wedge; returns an exact (x, y) Fraction witness
        point lying strictly below everything inserted before if the wedge
        was accepted, else None."""
        self.attempted += 1
        apex_x = line_intersection_x(wedge.lo[0], wedge.lo[1],
                                     wedge.hi[0], wedge.hi[1])
        sw = _StoredWedge(wedge.lo[0], wedge.lo[1], wedge.hi[0], wedge.hi[1],
                          apex_x, line_value(wedge.lo[0], wedge.lo[1], apex_x))
        if self.mode == "bisect" and self._fracs:
            comps = []
            for xa, xb in self._components_bisect(sw):
                probe = _interval_probe(xa, xb, sw.apex_x)
                if sw.fval(probe) < self._g_at(probe):
                    comps.append((xa, xb))
        else:
            comps = self._components_linear(sw)
        if not comps:
            return None

        label = len(self.wedges)
        self.wedges.append(sw)
        self._slabs = None
        cc = self.complexity_counts
        before = cc.total()
        witness = None
        n_left = sum(1 for xa, xb in comps if xa is None or xa < apex_x)
        n_right = sum(1 for xa, xb in comps if xb is None or xb > apex_x)
        assert n_left <= self.MAX_BRANCH_COMPONENTS
        assert n_right <= self.MAX_BRANCH_COMPONENTS
        for xa, xb in comps:
            if witness is None:
                wx = _interval_probe(xa, xb, apex_x)
                witness = (wx, sw.fval(wx))
            self._replace(sw, label, xa, xb)
            cc.faces += 1
        grown = cc.total() - before
        self.growth.append(grown)
        assert grown <= self.MAX_GROWTH, f"insertion grew subdivision by {grown}"
        return witness

    def _replace(self, sw: _StoredWedge, label: int, xa, xb):
        """Replace the envelope portion over (xa, xb) with the wedge's own
        boundary chain, updating the polyline, counters and recorded edges."""
        cc = self.complexity_counts
        fracs = self._fracs
        pieces = list(_branch_pieces(sw, xa, xb))
        # Junction vertices where the new chain meets the old envelope.  A
        # junction interior to an old frac splits that subdivision edge.
        for xj in (xa, xb):
            if xj is not None:
                v = (xj, sw.fval(xj))
                if v not in self._vset:
                    self._vset.add(v)
                    cc.vertices += 1
                    cc.edges += 1
        if (xa is None or xa < sw.apex_x) and (xb is None or xb > sw.apex_x):
            v = (sw.apex_x, sw.apex_y)
            if v not in self._vset:
                self._vset.add(v)
                cc.vertices += 1
        cc.edges += len(pieces)
        for s, t, lo, hi in pieces:
            self._edges.append((label, s, t, lo, hi))

        if not fracs:
            for s, t, lo, hi in pieces:
                fracs.add(_Frac(label, s, t, lo, hi))
                self.fractions_inserted += 1
            return
        ia = 0 if xa is None else max(0, fracs.bisect_key_right(xa) - 1)
        ib = len(fracs) - 1 if xb is None else max(0, fracs.bisect_key_left(xb) - 1)
        if ib < ia:
            ib = ia
        keep = []
        survivors = 0
        left = fracs[ia]
        if xa is not None and not _ends_meet(left.xl, xa):
            keep.append(_Frac(left.owner, left.s, left.t, left.xl, xa))
            survivors += 1
        right = fracs[ib]
        if xb is not None and not _ends_meet(right.xr, xb):
            keep.append(_Frac(right.owner, right.s, right.t, xb, right.xr))
            if right is left and survivors:
                self.fractions_inserted += 1  # splitting one frac in two
            else:
                survivors += 1
        removed = ib - ia + 1
        self.fractions_deleted += removed - survivors
        del fracs[ia:ib + 1]
        for fr in keep:
            fracs.add(fr)
        for s, t, lo, hi in pieces:
            fracs.add(_Frac(label, s, t, lo, hi))
            self.fractions_inserted += 1
        assert self.fractions_deleted <= self.fractions_inserted

    # -- queries ------------------------------------------------------------

    def locate(self, q: Point) -> int | None:
        """Smallest label whose wedge contains q (closed regions), or None."""
        if not self.wedges:
            return None
        if self._slabs is None:
            self._build_slabs()
        bps, slab_edges = self._slabs
        qx = Fraction(q.x)
        i = bisect_left(bps, qx)
        if i < len(bps) and bps[i] == qx:
            return self._locate_scan_exact(qx, Fraction(q.y))
        edges = slab_edges[i]
        qy = Fraction(q.y)
        lo, hi = 0, len(edges)
        while lo < hi:
            mid = (lo + hi) // 2
            owner, s, t = edges[mid]
            v = line_value(s, t, qx)
            if v == qy:
                return self._locate_scan_exact(qx, qy)
            if v < qy:
                lo = mid + 1
            else:
                hi = mid
        if lo == 0:
            return None
        return edges[lo - 1][0]

    def _locate_scan_exact(self, qx, qy) -> int | None:
        for i, w in enumerate(self.wedges):
            if w.contains(qx, qy):
                return i
        return None

    def locate_scan(self, q: Point) -> int | None:
        """Linear-scan reference for locate."""
        return self._locate_scan_exact(Fraction(q.x), Fraction(q.y))

    def _build_slabs(self):
        """Vertical-slab point location over all recorded edges.

        Edges recorded by successive insertions never cross in the open
        interior of a slab, and the face directly above a recorded edge is
        owned by the wedge that inserted it, so a query resolves to the
        owner of the highest edge strictly below the query point.  Exact
        hits on edges, vertices or slab boundaries fall back to a scan.
        """
        bps = sorted({x for (_, _, _, xl, xr) in self._edges
                      for x in (xl, xr) if x is not None})
        starts: list[list] = [[] for _ in range(len(bps) + 1)]
        stops: list[list] = [[] for _ in range(len(bps) + 1)]
        pos = {x: k for k, x in enumerate(bps)}
        for owner, s, t, xl, xr in self._edges:
            a = 0 if xl is None else pos[xl] + 1
            b = len(bps) if xr is None else pos[xr]
            if a <= b:
                starts[a].append((owner, s, t))
                stops[b].append((owner, s, t))
        slab_edges = []
        active: set = set()
        for k in range(len(bps) + 1):
            active |= set(starts[k])
            if active:
                if k == 0:
                    xm = bps[0] - 1
                elif k == len(bps):
                    xm = bps[-1] + 1
                else:
                    xm = (bps[k - 1] + bps[k]) / 2
                slab_edges.append(sorted(active,
                                         key=lambda e: line_value(e[1], e[2], xm)))
            else:
                slab_edges.append([])
            active -= set(stops[k])
        self._slabs = (bps, slab_edges)

    def complexity(self) -> dict:
        return self.complexity_counts.as_dict()

    def to_json(self) -> str:
        verts = sorted(self._vset)
        return json.dumps({
            "type": "wedge-overlay",
            "vertices": [[float(x), float(y)] for x, y in verts],
            "edges": [{"label": o, "line": [s, t],
                       "from": None if xl is None else float(xl),
                       "to": None if xr is None else float(xr)}
                      for o, s, t, xl, xr in self._edges],
            "faces": [{"label": None, "outer": True}] + [
                {"label": i, "apex": [float(w.apex_x), float(w.apex_y)]}
                for i, w in enumerate(self.wedges)],
            "complexity": self.complexity(),
        })


# -- interval helpers --------------------------------------------------------

def _ends_meet(a, b) -> bool:
    return a is not None and b is not None and a == b


def _branch_pieces(sw: _StoredWedge, xa, xb):
    """Pieces of the wedge boundary over the x-interval (xa, xb): the low
    branch left of the apex, the high branch right of it."""
    if xa is None or xa < sw.apex_x:
        hi = sw.apex_x if (xb is None or xb > sw.apex_x) else xb
        yield (sw.lo_s, sw.lo_t, xa, hi)
    if xb is None or xb > sw.apex_x:
        lo = sw.apex_x if (xa is None or xa < sw.apex_x) else xa
        yield (sw.hi_s, sw.hi_t, lo, xb)


def _below_intervals(s, t, fr: _Frac, lo, hi):
    """Open sub-intervals of (lo, hi) where y = s*x - t is strictly below
    the frac's line."""
    if s == fr.s:
        if t > fr.t:
            yield (lo, hi)
        return
    x0 = line_intersection_x(s, t, fr.s, fr.t)
    if s < fr.s:
        # below for x > x0
        if hi is None or x0 < hi:
            yield (x0 if (lo is None or x0 > lo) else lo, hi)
    else:
        if lo is None or x0 > lo:
            yield (lo, x0 if (hi is None or x0 < hi) else hi)


def _strictly_below_somewhere(s, t, fr: _Frac, lo, hi) -> bool:
    """Is y = s*x - t strictly below the frac's line anywhere on (lo, hi)?"""
    if s == fr.s:
        return t > fr.t
    x0 = line_intersection_x(s, t, fr.s, fr.t)
    if s > fr.s:
        # below for x < x0
        return lo is None or lo < x0
    return hi is None or hi > x0


def _interval_probe(xa, xb, fallback: Fraction) -> Fraction:
    """An interior point of the open interval (xa, xb)."""
    if xa is None and xb is None:
        return fallback
    if xa is None:
        return xb - 1
    if xb is None:
        return xa + 1
    return (xa + xb) / 2
