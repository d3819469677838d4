"""Placement curves of the unit circle over line arrangements.

Sliding the circle so that one boundary arc of length eps stays inside a
convex cell pins the two crossing points to two cell edges.  The chord
between the crossings has fixed length 2*sin(eps/2) and the center rides at
distance cos(eps/2) from its midpoint, so the center traces an ellipse in the
frame spanned by the edge pair's angular bisector (a straight offset segment
when both crossings ride the same line).  Parameter intervals are validated
against the definition-level gap profile, which also trims the portions where
a third line would cut the arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arrangement import Arrangement
from .geom import CIRCLE, Line, Point
from .oracle import boundary_gaps

TWO_PI = 2.0 * math.pi


def _wrap(theta: float) -> float:
    return theta % TWO_PI


def _cyclic_contains(start: float, length: float, theta: float) -> bool:
    return (theta - start) % TWO_PI <= length


@dataclass
class _RingPiece:
    kind: str  # "straight" | "ellipse"
    bounds: frozenset
    # straight: p(t) = base + t*u + h*n
    base: tuple[float, float] | None = None
    u: tuple[float, float] | None = None
    n: tuple[float, float] | None = None
    # ellipse: p(psi) = O + A_s sin(psi) xhat + B cos(psi) yhat; the center
    # rides on either side of the sliding chord, one ellipse per branch
    O: tuple[float, float] | None = None
    xhat: tuple[float, float] | None = None
    yhat: tuple[float, float] | None = None
    A_s: float = 0.0
    B: float = 0.0
    branch: int = 1
    intervals: list[tuple[float, float]] | None = None  # validated param ranges

    def point(self, t: float) -> tuple[float, float]:
        if self.kind == "straight":
            h = self._h
            return (
                self.base[0] + t * self.u[0] + h * self.n[0],
                self.base[1] + t * self.u[1] + h * self.n[1],
            )
        sa, ca = math.sin(t), math.cos(t)
        return (
            self.O[0] + self.A_s * sa * self.xhat[0] + self.B * ca * self.yhat[0],
            self.O[1] + self.A_s * sa * self.xhat[1] + self.B * ca * self.yhat[1],
        )

    def mid_angle(self, t: float) -> float:
        """World direction from the center to the middle of the tracked arc."""
        if self.kind == "straight":
            return math.atan2(-self.n[1], -self.n[0])
        frame = math.atan2(self.xhat[1], self.xhat[0])
        return _wrap(frame + t - self.branch * 0.5 * math.pi)

    _h: float = 0.0


def _cell_line_edges(arrangement: Arrangement, cell_id: int):
    """Per supporting line: the cell's edge extent, as params along the edge."""
    walls = arrangement.cell_walls(cell_id)
    per_line: dict[int, list[Point]] = {}
    for p0, p1, tag in walls:
        if tag[0] != "line":
            continue
        per_line.setdefault(int(tag[1]), []).extend([p0, p1])
    return per_line


def _piece_checker(arrangement: Arrangement, cell_id: int, eps: float, bounds: frozenset):
    lines = arrangement.primitives

    def ok(piece: _RingPiece, t: float) -> bool:
        px, py = piece.point(t)
        prof = boundary_gaps(Point(px, py), lines, CIRCLE)
        theta = piece.mid_angle(t)
        for comp in prof.components:
            if comp.bound_ids is None:
                continue
            if _cyclic_contains(comp.start, comp.length, theta):
                if abs(comp.length - eps) > 1e-6:
                    return False
                if frozenset(comp.bound_ids) != bounds:
                    return False
                return arrangement.point_in_cell(comp.mid_point, cell_id, slack=1e-9)
        return False

    return ok


def _refine_edge(piece, ok, t_in: float, t_out: float, iters: int = 48) -> float:
    for _ in range(iters):
        mid = 0.5 * (t_in + t_out)
        if ok(piece, mid):
            t_in = mid
        else:
            t_out = mid
    return t_in


def _validated_intervals(piece: _RingPiece, candidates, ok, min_samples: int = 24):
    out = []
    for lo, hi in candidates:
        if hi - lo <= 1e-12:
            continue
        n = max(min_samples, int((hi - lo) / 0.005))
        ts = [lo + (hi - lo) * (k + 0.5) / n for k in range(n)]
        flags = [ok(piece, t) for t in ts]
        k = 0
        while k < n:
            if not flags[k]:
                k += 1
                continue
            j = k
            while j + 1 < n and flags[j + 1]:
                j += 1
            t0 = ts[k] if k == 0 else _refine_edge(piece, ok, ts[k], ts[k - 1])
            t1 = ts[j] if j == n - 1 else _refine_edge(piece, ok, ts[j], ts[j + 1])
            if k == 0 and ok(piece, lo + 1e-12):
                t0 = lo
            if j == n - 1 and ok(piece, hi - 1e-12):
                t1 = hi
            if t1 - t0 > 1e-10:
                out.append((t0, t1))
            k = j + 1
    return out


def _ring_pieces(arrangement: Arrangement, cell_id: int, eps: float) -> list[_RingPiece]:
    """All validated curve pieces of one cell, independent of the vector."""
    cache = getattr(arrangement, "_ring_cache", None)
    if cache is None:
        cache = {}
        arrangement._ring_cache = cache
    key = (cell_id, round(eps, 12))
    if key in cache:
        return cache[key]

    lines: list[Line] = arrangement.primitives
    per_line = _cell_line_edges(arrangement, cell_id)
    centroid = arrangement.cell_interior_point(cell_id)
    h = math.cos(0.5 * eps)
    w = 2.0 * math.sin(0.5 * eps)
    pieces: list[_RingPiece] = []

    # straight offsets: both crossings on the same line; the eps-long cap
    # pokes into the cell, so the center rides on the far side of the line
    for lid, pts in per_line.items():
        ln = lines[lid]
        ux, uy = ln.direction()
        side = 1.0 if ln.side_of(centroid) > 0.0 else -1.0
        nx, ny = -side * ln.a, -side * ln.b
        base = Point(pts[0].x, pts[0].y)
        params = [ (p.x - base.x) * ux + (p.y - base.y) * uy for p in pts ]
        t_lo, t_hi = min(params) + 0.5 * w, max(params) - 0.5 * w
        if t_hi - t_lo <= 1e-12:
            continue
        piece = _RingPiece(
            "straight", frozenset({lid}), base=(base.x, base.y), u=(ux, uy), n=(nx, ny)
        )
        piece._h = h
        ok = _piece_checker(arrangement, cell_id, eps, frozenset({lid}))
        piece.intervals = _validated_intervals(piece, [(t_lo, t_hi)], ok)
        if piece.intervals:
            pieces.append(piece)

    # elliptic arcs: crossings on two different lines, both chord sides
    lids = sorted(per_line)
    for ii in range(len(lids)):
        for jj in range(ii + 1, len(lids)):
            for branch in (1, -1):
                piece = _ellipse_piece(
                    arrangement, cell_id, lids[ii], lids[jj], per_line, centroid,
                    eps, branch,
                )
                if piece is not None and piece.intervals:
                    pieces.append(piece)

    cache[key] = pieces
    return pieces


def _ellipse_piece(arrangement, cell_id, lid1, lid2, per_line, centroid, eps, branch=1):
    lines: list[Line] = arrangement.primitives
    l1, l2 = lines[lid1], lines[lid2]
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) <= 1e-12:
        return None
    ox = (l1.c * l2.b - l2.c * l1.b) / det
    oy = (l1.a * l2.c - l2.a * l1.c) / det

    def wedge_ray(ln: Line, other: Line):
        ux, uy = ln.direction()
        want = other.side_of(centroid) > 0.0
        got = other.side_of(Point(ox + ux, oy + uy)) - other.side_of(Point(ox, oy)) > 0.0
        return (ux, uy) if want == got else (-ux, -uy)

    r1 = wedge_ray(l1, l2)
    r2 = wedge_ray(l2, l1)
    bx, by = r1[0] + r2[0], r1[1] + r2[1]
    norm = math.hypot(bx, by)
    if norm <= 1e-12:
        return None
    xh = (bx / norm, by / norm)
    yh = (-xh[1], xh[0])
    cosa = max(-1.0, min(1.0, r1[0] * xh[0] + r1[1] * xh[1]))
    sina = abs(r1[0] * yh[0] + r1[1] * yh[1])
    if sina <= 1e-9 or cosa <= 1e-12:
        return None
    a = sina / cosa
    if branch == 1:
        A_s = (math.sin(0.5 * eps) - a * math.cos(0.5 * eps)) / a
        B = a * math.sin(0.5 * eps) + math.cos(0.5 * eps)
    else:
        A_s = (math.sin(0.5 * eps) + a * math.cos(0.5 * eps)) / a
        B = a * math.sin(0.5 * eps) - math.cos(0.5 * eps)

    up_is_1 = (r1[0] * yh[0] + r1[1] * yh[1]) > 0.0
    r_up, lid_up = (r1, lid1) if up_is_1 else (r2, lid2)
    r_lo, lid_lo = (r2, lid2) if up_is_1 else (r1, lid1)

    def extent(lid, ray):
        pts = per_line[lid]
        params = [(p.x - ox) * ray[0] + (p.y - oy) * ray[1] for p in pts]
        return min(params), max(params)

    up_lo, up_hi = extent(lid_up, r_up)
    lo_lo, lo_hi = extent(lid_lo, r_lo)

    w = 2.0 * math.sin(0.5 * eps)
    sin_a, cos_a = sina, cosa

    def s_of(psi):  # crossing param along the lower ray
        return 0.5 * w * (math.sin(psi) / sin_a - math.cos(psi) / cos_a)

    def t_of(psi):  # crossing param along the upper ray
        return 0.5 * w * (math.sin(psi) / sin_a + math.cos(psi) / cos_a)

    piece = _RingPiece(
        "ellipse",
        frozenset({lid1, lid2}),
        O=(ox, oy),
        xhat=xh,
        yhat=yh,
        A_s=A_s,
        B=B,
        branch=branch,
    )

    n_grid = 720
    slack = 1e-9
    mask = []
    for k in range(n_grid):
        psi = TWO_PI * k / n_grid
        s, t = s_of(psi), t_of(psi)
        mask.append(lo_lo - slack <= s <= lo_hi + slack and up_lo - slack <= t <= up_hi + slack)
    candidates = _mask_runs(mask, n_grid)
    ok = _piece_checker(arrangement, cell_id, eps, frozenset({lid1, lid2}))
    piece.intervals = _validated_intervals(piece, candidates, ok)
    return piece


def _mask_runs(mask: list[bool], n: int):
    """Maximal cyclic true runs, padded one grid step, as parameter intervals."""
    step = TWO_PI / n
    if all(mask):
        return [(0.0, TWO_PI)]
    if not any(mask):
        return []
    runs = []
    for k in range(n):
        if mask[k] and not mask[(k - 1) % n]:
            m = 1
            while mask[(k + m) % n]:
                m += 1
            runs.append(((k - 1) * step, (k + m) * step))
    return runs


# ---------------------------------------------------------------------------
# per-vector curves
# ---------------------------------------------------------------------------

def circle_cell_curves(cell_id: int, arrangement: Arrangement, tau, eps: float):
    """Placement curves of one angular vector inside one cell.

    Pieces are grouped into convex chains; arcs traced on the concave side
    (cell vertex sharper than the granularity) are split off on their own.
    """
    from .placement import CriticalCurve, CurvePiece, EpsilonTooLarge

    if eps >= 1.0:
        raise EpsilonTooLarge("circle curves are only computed for eps < 1")
    theta_tau = math.atan2(tau.dy, tau.dx)
    half = 0.5 * eps
    out_pieces: list[tuple[CurvePiece, bool]] = []  # (piece, concave flag)
    for rp in _ring_pieces(arrangement, cell_id, eps):
        if rp.kind == "straight":
            mid = rp.mid_angle(0.0)
            d = abs((theta_tau - mid + math.pi) % TWO_PI - math.pi)
            if d >= half:
                continue
            for t0, t1 in rp.intervals:
                x0, y0 = rp.point(t0)
                x1, y1 = rp.point(t1)
                out_pieces.append(
                    (CurvePiece("seg", p0=(x0, y0), p1=(x1, y1)), False)
                )
        else:
            frame = math.atan2(rp.xhat[1], rp.xhat[0])
            center_psi = _wrap(theta_tau - frame + rp.branch * 0.5 * math.pi)
            window = (center_psi - half, center_psi + half)
            # apex-side arcs of a cell vertex sharper than the granularity
            # run on the concave side and are split off (a < tan(eps/2))
            concave = rp.branch == 1 and rp.A_s > 1e-9
            for lo, hi in rp.intervals:
                for w0, w1 in _cyclic_interval_intersection((lo, hi), window):
                    if w1 - w0 <= 1e-10:
                        continue
                    out_pieces.append(
                        (
                            CurvePiece(
                                "arc",
                                center=rp.O,
                                vec_a=(rp.A_s * rp.xhat[0], rp.A_s * rp.xhat[1]),
                                vec_b=(rp.B * rp.yhat[0], rp.B * rp.yhat[1]),
                                psi0=w0,
                                psi1=w1,
                            ),
                            concave,
                        )
                    )

    return _assemble_chains(cell_id, tau, out_pieces, CriticalCurve)


def _cyclic_interval_intersection(interval, window):
    """Intersect two angle intervals, the window considered modulo 2*pi."""
    lo, hi = interval
    out = []
    for shift in (-TWO_PI, 0.0, TWO_PI):
        w0, w1 = window[0] + shift, window[1] + shift
        a, b = max(lo, w0), min(hi, w1)
        if b - a > 1e-12:
            out.append((a, b))
    return out


def _assemble_chains(cell_id, tau, flagged_pieces, CriticalCurve):
    curves = []
    convex_pieces = [p for p, concave in flagged_pieces if not concave]
    for p, concave in flagged_pieces:
        if concave:
            curves.append(CriticalCurve(cell_id, tau, [p], False))
    tol = 1e-6

    def key(pt):
        return (round(pt[0] / tol), round(pt[1] / tol))

    adj: dict[tuple[int, int], list[int]] = {}
    for i, p in enumerate(convex_pieces):
        a, b = p.endpoints()
        adj.setdefault(key(a), []).append(i)
        adj.setdefault(key(b), []).append(i)
    used = [False] * len(convex_pieces)
    for start in range(len(convex_pieces)):
        if used[start]:
            continue
        used[start] = True
        chain = [convex_pieces[start]]
        for head in (True, False):
            while True:
                ref = chain[-1].endpoints()[1] if head else chain[0].endpoints()[0]
                nxt = None
                for i in adj.get(key(ref), []):
                    if not used[i]:
                        nxt = i
                        break
                if nxt is None:
                    break
                used[nxt] = True
                if head:
                    chain.append(convex_pieces[nxt])
                else:
                    chain.insert(0, convex_pieces[nxt])
        for run in _split_convex_runs(chain):
            curves.append(CriticalCurve(cell_id, tau, run, True))
    return curves


def _split_convex_runs(chain):
    """Split a piece chain at turning-direction flips of its sampled trace."""
    if len(chain) <= 1:
        return [chain]
    signs = []
    for piece in chain:
        samp = piece.sample(8)
        s = 0.0
        for a, b, c in zip(samp, samp[1:], samp[2:]):
            s += (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        signs.append(1 if s > 1e-12 else (-1 if s < -1e-12 else 0))
    runs = [[chain[0]]]
    run_sign = signs[0]
    for piece, s in zip(chain[1:], signs[1:]):
        if s != 0 and run_sign != 0 and s != run_sign:
            runs.append([piece])
            run_sign = s
        else:
            runs[-1].append(piece)
            if run_sign == 0:
                run_sign = s
    return runs
