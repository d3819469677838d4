"""Critical placement curves of the unit square, and their overlay.

A placement is critical when some connected piece of the shape boundary
between crossings with the input has length exactly the clustering
granularity.  Each fixed boundary point tau (spaced at most a granularity
apart, square corners always included) owns the placements whose critical
piece contains it; per arrangement cell those placements form short chains:

* corner points: the level set of the summed horizontal+vertical wall
  distances, a piecewise-linear convex chain inside the cell,
* side points: axis-aligned windows at the heights/abscissas where the cell
  cross-section is exactly the granularity wide.

The overlay of all chains (optionally together with the corner-contact
translates of the input) is the placement arrangement whose size is the
complexity the scaling experiments measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arrangement import Arrangement, BBox, Tag, convex_decompose
from .geom import (
    CIRCLE,
    SQUARE,
    GeometryError,
    Line,
    Point,
    Segment,
    shape_perimeter,
)
from .oracle import is_epsilon_placement

SQRT2 = math.sqrt(2.0)


class Unbounded(GeometryError):
    pass


class EpsilonTooLarge(GeometryError):
    pass


@dataclass(frozen=True)
class Epsilon:
    """Clustering granularity; must stay below a quarter perimeter."""

    value: float

    def __post_init__(self) -> None:
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise ValueError("granularity must be positive and finite")

    def validate_for(self, shape: str) -> None:
        if self.value >= shape_perimeter(shape) / 4.0:
            raise ValueError(
                f"granularity {self.value} too large for {shape} (needs < perimeter/4)"
            )


def _eps_value(eps) -> float:
    return eps.value if isinstance(eps, Epsilon) else float(eps)


@dataclass(frozen=True)
class TranslationVector:
    """Offset from the shape center to one fixed boundary point."""

    dx: float
    dy: float
    kind: str  # "corner" | "edge" | "angular"
    label: str  # corner/side name for squares, angle index for circles
    s: float  # perimeter coordinate of the boundary point

    def angle(self) -> float:
        return math.atan2(self.dy, self.dx)


@dataclass(frozen=True)
class TranslationVectorSet:
    shape: str
    eps: float
    vectors: tuple[TranslationVector, ...]


_CORNER_LABELS = {0.0: "bl", 1.0: "br", 2.0: "tr", 3.0: "tl"}
_SIDE_OF_S = ("bottom", "right", "top", "left")


def _square_vector_at(s: float) -> TranslationVector:
    side = int(s % 4.0)
    frac = (s % 4.0) - side
    if frac <= 1e-12:
        corner = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)][side]
        return TranslationVector(corner[0], corner[1], "corner", _CORNER_LABELS[float(side)], float(side))
    if side == 0:
        dx, dy = frac - 0.5, -0.5
    elif side == 1:
        dx, dy = 0.5, frac - 0.5
    elif side == 2:
        dx, dy = 0.5 - frac, 0.5
    else:
        dx, dy = -0.5, 0.5 - frac
    return TranslationVector(dx, dy, "edge", _SIDE_OF_S[side], s)


def translation_vectors(shape: str, eps) -> TranslationVectorSet:
    """Fixed boundary points spaced at most eps apart along the perimeter.

    Square corners are always included; on each square side the spacing is
    uniform with ceil(side/eps) intervals, so any boundary arc of length eps
    contains one or two of the points.
    """
    e = _eps_value(eps)
    Epsilon(e).validate_for(shape)
    vectors: list[TranslationVector] = []
    if shape == SQUARE:
        per_side = max(1, math.ceil((1.0 - 1e-12) / e))
        for side in range(4):
            for k in range(per_side):
                vectors.append(_square_vector_at(side + k / per_side))
    elif shape == CIRCLE:
        m = max(4, math.ceil((2.0 * math.pi - 1e-12) / e))
        for k in range(m):
            theta = 2.0 * math.pi * k / m
            vectors.append(
                TranslationVector(math.cos(theta), math.sin(theta), "angular", str(k), theta)
            )
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return TranslationVectorSet(shape, e, tuple(vectors))


# ---------------------------------------------------------------------------
# curve pieces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvePiece:
    """Straight segment or elliptic arc in placement (center) space.

    Arcs are parametrized as center + sin(psi)*vec_a + cos(psi)*vec_b over
    psi in [psi0, psi1].
    """

    kind: str  # "seg" | "arc"
    p0: tuple[float, float] | None = None
    p1: tuple[float, float] | None = None
    center: tuple[float, float] | None = None
    vec_a: tuple[float, float] | None = None
    vec_b: tuple[float, float] | None = None
    psi0: float = 0.0
    psi1: float = 0.0

    def arc_point(self, psi: float) -> tuple[float, float]:
        sa, ca = math.sin(psi), math.cos(psi)
        return (
            self.center[0] + sa * self.vec_a[0] + ca * self.vec_b[0],
            self.center[1] + sa * self.vec_a[1] + ca * self.vec_b[1],
        )

    def endpoints(self) -> tuple[tuple[float, float], tuple[float, float]]:
        if self.kind == "seg":
            return (self.p0, self.p1)
        return (self.arc_point(self.psi0), self.arc_point(self.psi1))

    def length(self) -> float:
        if self.kind == "seg":
            return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])
        pts = self.sample(24)
        return float(np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1])).sum())

    def sample(self, n: int, inset: float = 0.0) -> np.ndarray:
        """n points along the piece; inset > 0 keeps off the exact endpoints,
        which are degenerate placements (a corner just touching a wall)."""
        n = max(2, n)
        if self.kind == "seg":
            t = np.linspace(inset, 1.0 - inset, n)
            return np.column_stack(
                (
                    self.p0[0] + t * (self.p1[0] - self.p0[0]),
                    self.p0[1] + t * (self.p1[1] - self.p0[1]),
                )
            )
        lo = self.psi0 + inset * (self.psi1 - self.psi0)
        hi = self.psi1 - inset * (self.psi1 - self.psi0)
        psi = np.linspace(lo, hi, n)
        return np.column_stack(
            (
                self.center[0] + np.sin(psi) * self.vec_a[0] + np.cos(psi) * self.vec_b[0],
                self.center[1] + np.sin(psi) * self.vec_a[1] + np.cos(psi) * self.vec_b[1],
            )
        )

    def sample_by_spacing(self, spacing: float, inset: float = 0.0) -> np.ndarray:
        return self.sample(int(self.length() / max(spacing, 1e-9)) + 2, inset=inset)


def seg_piece(x0: float, y0: float, x1: float, y1: float) -> CurvePiece:
    return CurvePiece("seg", p0=(x0, y0), p1=(x1, y1))


@dataclass
class CriticalCurve:
    """One connected chain of critical placements owned by (cell, vector)."""

    cell_id: int
    vector: TranslationVector | None
    pieces: list[CurvePiece]
    convex_flag: bool = True
    kind: str = "gap"  # "gap" | "contact"
    contact_ref: tuple | None = None  # (primitive id, info) for contact curves

    def chain_points(self) -> list[tuple[float, float]]:
        pts: list[tuple[float, float]] = []
        for piece in self.pieces:
            a, b = piece.endpoints()
            if not pts:
                pts.append(a)
            pts.append(b)
        return pts

    def sample_points(self, spacing: float) -> np.ndarray:
        chunks = [p.sample_by_spacing(spacing) for p in self.pieces]
        return np.concatenate(chunks, axis=0) if chunks else np.zeros((0, 2))

    def total_length(self) -> float:
        return sum(p.length() for p in self.pieces)


@dataclass
class DegenerateStrip:
    """Cell stretch whose cross-section equals the granularity everywhere."""

    cell_id: int
    orientation: str  # "horizontal" | "vertical"
    lo: float
    hi: float
    representative: CurvePiece


# ---------------------------------------------------------------------------
# the distance-sum function f
# ---------------------------------------------------------------------------

_QUADRANT_LOOK = {
    "upper_right": (-1.0, -1.0),
    "upper_left": (1.0, -1.0),
    "lower_left": (1.0, 1.0),
    "lower_right": (-1.0, 1.0),
}

_CORNER_QUADRANT = {"tr": "upper_right", "tl": "upper_left", "bl": "lower_left", "br": "lower_right"}


def f_value(a: Point, lines: list[Line], quadrant: str) -> float:
    """Sum of the nearest-wall distances along the quadrant's two axis rays.

    For the upper-right quadrant this is the distance to the closest line
    hit leftward plus the distance to the closest line hit downward; other
    quadrants mirror the directions.  Raises Unbounded when a required
    direction has no line.
    """
    look_x, look_y = _QUADRANT_LOOK[quadrant]
    best_x = math.inf
    best_y = math.inf
    for ln in lines:
        if abs(ln.a) > 1e-12:
            t = (ln.x_at(a.y) - a.x) * look_x
            if t > 1e-12:
                best_x = min(best_x, t)
        if abs(ln.b) > 1e-12:
            t = (ln.y_at(a.x) - a.y) * look_y
            if t > 1e-12:
                best_y = min(best_y, t)
    if not (math.isfinite(best_x) and math.isfinite(best_y)):
        raise Unbounded(f"no line in a required direction from {a}")
    return best_x + best_y


# ---------------------------------------------------------------------------
# visibility profiles inside one convex region
# ---------------------------------------------------------------------------

@dataclass
class _ProfileStrip:
    lo: float
    hi: float
    open_side: bool  # first hit is the clip frame (or nothing)
    line: tuple[float, float, float] | None  # supporting line a*x + b*y = c


@dataclass
class _Region:
    """Convex region plus the walls of its owning cell (rays are transparent)."""

    cell_id: int
    polygon: np.ndarray  # (m, 2) CCW
    walls: list[tuple[Point, Point, Tag]]
    profiles: dict = field(default_factory=dict)

    def profile(self, direction: str) -> list[_ProfileStrip]:
        if direction not in self.profiles:
            self.profiles[direction] = _direction_profile(self, direction)
        return self.profiles[direction]


def _region_span(poly: np.ndarray, axis: int, value: float) -> tuple[float, float] | None:
    """Cross-section interval of a convex polygon at axis == value."""
    other = 1 - axis
    hits: list[float] = []
    m = len(poly)
    for i in range(m):
        a = poly[i]
        b = poly[(i + 1) % m]
        va, vb = a[axis], b[axis]
        if (va > value) == (vb > value):
            continue
        t = (value - va) / (vb - va)
        hits.append(a[other] + t * (b[other] - a[other]))
    if len(hits) < 2:
        return None
    return (min(hits), max(hits))


def _direction_profile(region: _Region, direction: str) -> list[_ProfileStrip]:
    poly = region.polygon
    axis = 1 if direction in ("left", "right") else 0
    vals = sorted({float(v[axis]) for v in poly})
    lo_all, hi_all = vals[0], vals[-1]
    for p0, p1, _tag in region.walls:
        for w in ((p0.y, p0.x), (p1.y, p1.x)) if axis == 1 else ((p0.x, p0.y), (p1.x, p1.y)):
            if lo_all + 1e-12 < w[0] < hi_all - 1e-12:
                vals.append(w[0])
    vals = sorted(set(round(v, 12) for v in vals))
    sign = -1.0 if direction in ("left", "down") else 1.0
    dvec = (sign, 0.0) if axis == 1 else (0.0, sign)

    strips: list[_ProfileStrip] = []
    for lo, hi in zip(vals, vals[1:]):
        if hi - lo <= 1e-12:
            continue
        mid = 0.5 * (lo + hi)
        span = _region_span(poly, axis, mid)
        if span is None:
            continue
        sx = 0.5 * (span[0] + span[1])
        origin = (sx, mid) if axis == 1 else (mid, sx)
        hit = _first_wall_hit(origin, dvec, region.walls)
        if hit is None or hit[1][0] == "clip":
            strips.append(_ProfileStrip(lo, hi, True, None))
        else:
            p0, p1 = hit[2]
            ln = Line(p0, p1)
            strips.append(_ProfileStrip(lo, hi, False, (ln.a, ln.b, ln.c)))
    return strips


def _first_wall_hit(origin, dvec, walls):
    ox, oy = origin
    dx, dy = dvec
    best = None
    for p0, p1, tag in walls:
        ex, ey = p1.x - p0.x, p1.y - p0.y
        det = dx * ey - dy * ex
        if abs(det) <= 1e-14:
            continue
        rx, ry = p0.x - ox, p0.y - oy
        t = (rx * ey - ry * ex) / det
        u = (dy * rx - dx * ry) / det
        if t > 1e-12 and -1e-9 <= u <= 1.0 + 1e-9:
            if best is None or t < best[0]:
                best = (t, tag, (p0, p1))
    return best


# ---------------------------------------------------------------------------
# corner-vector level chains
# ---------------------------------------------------------------------------

def _clip_convex(poly: np.ndarray, axis: int, lo: float, hi: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon to a coordinate slab."""
    def clip_half(pts, keep):
        out = []
        m = len(pts)
        for i in range(m):
            a, b = pts[i], pts[(i + 1) % m]
            ka, kb = keep(a), keep(b)
            if ka >= -1e-12:
                out.append(a)
            if (ka > 1e-12 and kb < -1e-12) or (ka < -1e-12 and kb > 1e-12):
                t = ka / (ka - kb)
                out.append(a + t * (b - a))
        return out

    pts = [np.asarray(p, dtype=float) for p in poly]
    pts = clip_half(pts, lambda p: p[axis] - lo)
    if len(pts) < 3:
        return np.zeros((0, 2))
    pts = clip_half(pts, lambda p: hi - p[axis])
    if len(pts) < 3:
        return np.zeros((0, 2))
    return np.array(pts)


def _level_segment_in_poly(poly: np.ndarray, P: float, Q: float, R: float, level: float):
    """Clip the line P*x + Q*y + R = level to a convex polygon."""
    g = P * poly[:, 0] + Q * poly[:, 1] + R - level
    pts: list[np.ndarray] = []
    m = len(poly)
    for i in range(m):
        gi, gj = g[i], g[(i + 1) % m]
        if abs(gi) <= 1e-12:
            pts.append(poly[i])
        if (gi > 1e-12 and gj < -1e-12) or (gi < -1e-12 and gj > 1e-12):
            t = gi / (gi - gj)
            pts.append(poly[i] + t * (poly[(i + 1) % m] - poly[i]))
    if len(pts) < 2:
        return None
    arr = np.array(pts)
    d = np.array([-Q, P])
    proj = arr @ d
    i0, i1 = int(np.argmin(proj)), int(np.argmax(proj))
    if proj[i1] - proj[i0] <= 1e-12 * max(1.0, abs(proj[i0])):
        return None
    return (arr[i0], arr[i1])


def _corner_level_segments(region: _Region, look_x: float, look_y: float, eps: float):
    """Exact level-set segments of the distance-sum inside one region."""
    ph = region.profile("left" if look_x < 0 else "right")
    pv = region.profile("down" if look_y < 0 else "up")
    segs = []
    for sh in ph:
        if sh.open_side:
            continue
        a1, b1, c1 = sh.line
        # horizontal wall distance: look left => x - (c1 - b1*y)/a1
        if abs(a1) <= 1e-12:
            continue
        hP = -look_x
        hQ = -look_x * b1 / a1
        hR = look_x * c1 / a1
        for sv in pv:
            if sv.open_side:
                continue
            a2, b2, c2 = sv.line
            if abs(b2) <= 1e-12:
                continue
            vP = -look_y * a2 / b2
            vQ = -look_y
            vR = look_y * c2 / b2
            band = _clip_convex(region.polygon, 1, sh.lo, sh.hi)
            if len(band) < 3:
                continue
            band = _clip_convex(band, 0, sv.lo, sv.hi)
            if len(band) < 3:
                continue
            hit = _level_segment_in_poly(band, hP + vP, hQ + vQ, hR + vR, eps)
            if hit is not None:
                segs.append(hit)
    return segs


def _stitch_chains(segs, tol: float = 1e-7) -> list[list[tuple[float, float]]]:
    """Join segments sharing endpoints into maximal chains, merging collinear runs."""
    if not segs:
        return []

    def key(p):
        return (round(p[0] / tol), round(p[1] / tol))

    adj: dict[tuple[int, int], list[int]] = {}
    for i, (a, b) in enumerate(segs):
        adj.setdefault(key(a), []).append(i)
        adj.setdefault(key(b), []).append(i)

    used = [False] * len(segs)
    chains: list[list[tuple[float, float]]] = []
    for start in range(len(segs)):
        if used[start]:
            continue
        used[start] = True
        a, b = segs[start]
        chain = [tuple(a), tuple(b)]
        for head in (True, False):
            while True:
                end = chain[-1] if head else chain[0]
                nxt = None
                for i in adj.get(key(end), []):
                    if used[i]:
                        continue
                    nxt = i
                    break
                if nxt is None:
                    break
                used[nxt] = True
                pa, pb = segs[nxt]
                other = tuple(pb) if key(pa) == key(end) else tuple(pa)
                if head:
                    chain.append(other)
                else:
                    chain.insert(0, other)
        chains.append(_merge_collinear(chain))
    return chains


def _merge_collinear(chain, tol: float = 1e-9):
    """Drop interior chain points where the direction does not turn."""
    if len(chain) <= 2:
        return chain
    keep = [chain[0]]
    for i in range(1, len(chain) - 1):
        ax, ay = keep[-1]
        bx, by = chain[i]
        cx, cy = chain[i + 1]
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        scale = max(abs(bx - ax), abs(by - ay), abs(cx - bx), abs(cy - by), 1.0)
        if abs(cross) > tol * scale:
            keep.append(chain[i])
    keep.append(chain[-1])
    return keep


def _chain_is_convex(chain, tol: float = 1e-9) -> bool:
    if len(chain) < 3:
        return True
    sign = 0
    for i in range(len(chain) - 2):
        ax, ay = chain[i]
        bx, by = chain[i + 1]
        cx, cy = chain[i + 2]
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        if abs(cross) <= tol:
            continue
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def corner_curve(cell_id: int, regions: list[_Region], tau: TranslationVector, eps) -> list[CriticalCurve]:
    """Level-set chains for a corner vector inside one cell, in placement space."""
    e = _eps_value(eps)
    look_x, look_y = _QUADRANT_LOOK[_CORNER_QUADRANT[tau.label]]
    segs = []
    for region in regions:
        segs.extend(_corner_level_segments(region, look_x, look_y, e))
    curves = []
    for chain in _stitch_chains(segs):
        pieces = [
            seg_piece(a[0] - tau.dx, a[1] - tau.dy, b[0] - tau.dx, b[1] - tau.dy)
            for a, b in zip(chain, chain[1:])
            if math.hypot(b[0] - a[0], b[1] - a[1]) > 1e-12
        ]
        if pieces:
            curves.append(CriticalCurve(cell_id, tau, pieces, _chain_is_convex(chain)))
    return curves


# ---------------------------------------------------------------------------
# side-vector placement windows
# ---------------------------------------------------------------------------

def _cross_section_solutions(regions: list[_Region], orientation: str, eps: float):
    """(value, lo_hit, hi_hit) where the cell cross-section equals eps.

    orientation "horizontal": value is a height y*, the hits are the x of the
    left and right walls there; "vertical" swaps the roles.
    """
    d_lo, d_hi = ("left", "right") if orientation == "horizontal" else ("down", "up")
    solutions: list[tuple[float, float, float]] = []
    degenerate: list[tuple[float, float]] = []
    for region in regions:
        plo = region.profile(d_lo)
        phi = region.profile(d_hi)
        breaks = sorted(
            {s.lo for s in plo} | {s.hi for s in plo} | {s.lo for s in phi} | {s.hi for s in phi}
        )
        for lo, hi in zip(breaks, breaks[1:]):
            mid = 0.5 * (lo + hi)
            slo = next((s for s in plo if s.lo - 1e-12 <= mid <= s.hi + 1e-12), None)
            shi = next((s for s in phi if s.lo - 1e-12 <= mid <= s.hi + 1e-12), None)
            if slo is None or shi is None or slo.open_side or shi.open_side:
                continue
            a1, b1, c1 = slo.line
            a2, b2, c2 = shi.line
            if orientation == "horizontal":
                if abs(a1) <= 1e-12 or abs(a2) <= 1e-12:
                    continue
                # width(y) = x_hi(y) - x_lo(y)
                k = (-b2 / a2) - (-b1 / a1)
                m = (c2 / a2) - (c1 / a1)
            else:
                if abs(b1) <= 1e-12 or abs(b2) <= 1e-12:
                    continue
                k = (-a2 / b2) - (-a1 / b1)
                m = (c2 / b2) - (c1 / b1)
            # width(v) = k*v + m on [lo, hi]
            if abs(k) <= 1e-12:
                if abs(m - eps) <= 1e-9:
                    degenerate.append((lo, hi))
                continue
            v = (eps - m) / k
            if lo - 1e-12 <= v <= hi + 1e-12:
                if orientation == "horizontal":
                    xl = (c1 - b1 * v) / a1
                    xr = (c2 - b2 * v) / a2
                else:
                    xl = (c1 - a1 * v) / b1
                    xr = (c2 - a2 * v) / b2
                solutions.append((v, xl, xr))
    uniq: dict[tuple[int, int, int], tuple[float, float, float]] = {}
    for v, xl, xr in solutions:
        uniq[(round(v / 1e-9), round(xl / 1e-9), round(xr / 1e-9))] = (v, xl, xr)
    return list(uniq.values()), degenerate


def edge_curve(
    cell_id: int,
    regions: list[_Region],
    tau: TranslationVector,
    eps,
    warnings: list[DegenerateStrip] | None = None,
) -> list[CriticalCurve]:
    """Axis-aligned placement windows for a non-corner square vector."""
    e = _eps_value(eps)
    horizontal = tau.label in ("top", "bottom")
    orientation = "horizontal" if horizontal else "vertical"
    solutions, degenerate = _cross_section_solutions(regions, orientation, e)
    if warnings is not None:
        for lo, hi in degenerate:
            mid = 0.5 * (lo + hi)
            rep = (
                seg_piece(lo, mid, hi, mid) if not horizontal else seg_piece(mid, lo, mid, hi)
            )
            warnings.append(DegenerateStrip(cell_id, orientation, lo, hi, rep))
    curves: list[CriticalCurve] = []
    for v, w_lo, w_hi in solutions:
        if horizontal:
            y_p = v - (0.5 if tau.label == "top" else -0.5)
            lo = max(w_lo - tau.dx, w_hi - 0.5)
            hi = min(w_hi - tau.dx, w_lo + 0.5)
            if hi - lo > 1e-12:
                curves.append(
                    CriticalCurve(cell_id, tau, [seg_piece(lo, y_p, hi, y_p)], True)
                )
        else:
            x_p = v - (0.5 if tau.label == "right" else -0.5)
            lo = max(w_lo - tau.dy, w_hi - 0.5)
            hi = min(w_hi - tau.dy, w_lo + 0.5)
            if hi - lo > 1e-12:
                curves.append(
                    CriticalCurve(cell_id, tau, [seg_piece(x_p, lo, x_p, hi)], True)
                )
    return curves


# ---------------------------------------------------------------------------
# per-cell regions and the union over cells
# ---------------------------------------------------------------------------

def cell_regions(arrangement: Arrangement, cell_id: int) -> list[_Region]:
    cell = arrangement.cells[cell_id]
    walls = arrangement.cell_walls(cell_id)
    if arrangement.kind == "lines" or (cell.convex and not cell.holes):
        return [_Region(cell_id, arrangement.cell_polygon(cell_id), walls)]
    subs = convex_decompose(cell, arrangement)
    return [_Region(cell_id, s.polygon, walls) for s in subs]


def _cell_reaches(arrangement: Arrangement, cell_id: int, domain: BBox, reach: float) -> bool:
    poly = arrangement.cell_polygon(cell_id)
    return not (
        poly[:, 0].min() > domain.xmax + reach
        or poly[:, 0].max() < domain.xmin - reach
        or poly[:, 1].min() > domain.ymax + reach
        or poly[:, 1].max() < domain.ymin - reach
    )


def collect_S(
    tau: TranslationVector,
    arrangement: Arrangement,
    eps,
    domain: BBox | None = None,
    regions_cache: dict | None = None,
    warnings: list | None = None,
) -> list[CriticalCurve]:
    """Union of the per-cell curves of one vector over the whole arrangement."""
    e = _eps_value(eps)
    curves: list[CriticalCurve] = []
    for cell in arrangement.cells:
        if domain is not None and not _cell_reaches(arrangement, cell.id, domain, 1.0 + e):
            continue
        if regions_cache is not None:
            regions = regions_cache.get(cell.id)
            if regions is None:
                regions = cell_regions(arrangement, cell.id)
                regions_cache[cell.id] = regions
        else:
            regions = cell_regions(arrangement, cell.id)
        if tau.kind == "corner":
            curves.extend(corner_curve(cell.id, regions, tau, e))
        elif tau.kind == "edge":
            curves.extend(edge_curve(cell.id, regions, tau, e, warnings))
        else:
            from .circles import circle_cell_curves

            curves.extend(circle_cell_curves(cell.id, arrangement, tau, e))
    if domain is not None:
        curves = [c for c in (clip_curve_to_box(c, domain) for c in curves) if c]
    return curves


def clip_curve_to_box(curve: CriticalCurve, box: BBox) -> CriticalCurve | None:
    pieces: list[CurvePiece] = []
    for piece in curve.pieces:
        pieces.extend(_clip_piece_to_box(piece, box))
    if not pieces:
        return None
    return CriticalCurve(
        curve.cell_id, curve.vector, pieces, curve.convex_flag, curve.kind, curve.contact_ref
    )


def _clip_piece_to_box(piece: CurvePiece, box: BBox) -> list[CurvePiece]:
    if piece.kind == "seg":
        x0, y0 = piece.p0
        x1, y1 = piece.p1
        dx, dy = x1 - x0, y1 - y0
        t0, t1 = 0.0, 1.0
        for d, p, lo, hi in ((dx, x0, box.xmin, box.xmax), (dy, y0, box.ymin, box.ymax)):
            if abs(d) <= 1e-15:
                if not (lo <= p <= hi):
                    return []
                continue
            ta, tb = (lo - p) / d, (hi - p) / d
            if ta > tb:
                ta, tb = tb, ta
            t0, t1 = max(t0, ta), min(t1, tb)
        if t0 >= t1:
            return []
        return [seg_piece(x0 + t0 * dx, y0 + t0 * dy, x0 + t1 * dx, y0 + t1 * dy)]
    # arc: cut the parameter interval at the box-side crossings
    cuts = [piece.psi0, piece.psi1]
    for a, b, c in (
        (1.0, 0.0, box.xmin),
        (1.0, 0.0, box.xmax),
        (0.0, 1.0, box.ymin),
        (0.0, 1.0, box.ymax),
    ):
        A = a * piece.vec_a[0] + b * piece.vec_a[1]
        B = a * piece.vec_b[0] + b * piece.vec_b[1]
        C = a * piece.center[0] + b * piece.center[1] - c
        cuts.extend(_sinusoid_roots(A, B, C, piece.psi0, piece.psi1))
    cuts = sorted(set(cuts))
    out = []
    for u0, u1 in zip(cuts, cuts[1:]):
        if u1 - u0 <= 1e-12:
            continue
        mx, my = piece.arc_point(0.5 * (u0 + u1))
        if box.contains(mx, my, slack=1e-9):
            out.append(
                CurvePiece(
                    "arc",
                    center=piece.center,
                    vec_a=piece.vec_a,
                    vec_b=piece.vec_b,
                    psi0=u0,
                    psi1=u1,
                )
            )
    return out


def _sinusoid_roots(A: float, B: float, C: float, lo: float, hi: float) -> list[float]:
    """Roots of A sin(psi) + B cos(psi) + C = 0 within [lo, hi]."""
    R = math.hypot(A, B)
    if R <= 1e-15:
        return []
    if abs(C) > R:
        return []
    phi = math.atan2(B, A)
    base = math.asin(max(-1.0, min(1.0, -C / R)))
    roots = []
    for cand in (base - phi, math.pi - base - phi):
        k_lo = math.floor((lo - cand) / (2.0 * math.pi)) - 1
        k_hi = math.ceil((hi - cand) / (2.0 * math.pi)) + 1
        for k in range(int(k_lo), int(k_hi) + 1):
            r = cand + 2.0 * math.pi * k
            if lo - 1e-12 <= r <= hi + 1e-12:
                roots.append(min(max(r, lo), hi))
    return roots


# ---------------------------------------------------------------------------
# contact curves: corner translates, endpoint rings, tangency offsets
# ---------------------------------------------------------------------------

def contact_curves(primitives: list, shape: str, domain: BBox) -> list[CriticalCurve]:
    """Placements where the boundary structure jumps without a gap of length
    eps: a square corner on a primitive, a primitive endpoint on the boundary,
    or a line tangent to the circle."""
    out: list[CriticalCurve] = []
    if shape == SQUARE:
        corners = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
        for k, prim in enumerate(primitives):
            if isinstance(prim, Line):
                for vx, vy in corners:
                    shifted = Line(
                        Point(prim.p.x - vx, prim.p.y - vy), Point(prim.q.x - vx, prim.q.y - vy)
                    )
                    piece = _line_box_piece(shifted, domain)
                    if piece is not None:
                        out.append(
                            CriticalCurve(-1, None, [piece], True, "contact", (k, (vx, vy)))
                        )
            else:
                seg: Segment = prim
                for vx, vy in corners:
                    out.append(
                        CriticalCurve(
                            -1,
                            None,
                            [seg_piece(seg.p.x - vx, seg.p.y - vy, seg.q.x - vx, seg.q.y - vy)],
                            True,
                            "contact",
                            (k, (vx, vy)),
                        )
                    )
                for end in (seg.p, seg.q):
                    ring = [
                        seg_piece(end.x - 0.5, end.y - 0.5, end.x + 0.5, end.y - 0.5),
                        seg_piece(end.x + 0.5, end.y - 0.5, end.x + 0.5, end.y + 0.5),
                        seg_piece(end.x + 0.5, end.y + 0.5, end.x - 0.5, end.y + 0.5),
                        seg_piece(end.x - 0.5, end.y + 0.5, end.x - 0.5, end.y - 0.5),
                    ]
                    out.append(CriticalCurve(-1, None, ring, True, "contact", (k, "endpoint")))
    else:
        for k, prim in enumerate(primitives):
            if not isinstance(prim, Line):
                continue
            for off in (-1.0, 1.0):
                shifted = Line(
                    Point(prim.p.x + off * prim.a, prim.p.y + off * prim.b),
                    Point(prim.q.x + off * prim.a, prim.q.y + off * prim.b),
                )
                piece = _line_box_piece(shifted, domain)
                if piece is not None:
                    out.append(CriticalCurve(-1, None, [piece], True, "contact", (k, off)))
    clipped = [clip_curve_to_box(c, domain) for c in out]
    return [c for c in clipped if c]


def _line_box_piece(line: Line, box: BBox) -> CurvePiece | None:
    dx, dy = line.direction()
    px, py = line.p.x, line.p.y
    t0, t1 = -math.inf, math.inf
    for d, p, lo, hi in ((dx, px, box.xmin, box.xmax), (dy, py, box.ymin, box.ymax)):
        if abs(d) <= 1e-15:
            if not (lo <= p <= hi):
                return None
            continue
        ta, tb = (lo - p) / d, (hi - p) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    if t0 >= t1:
        return None
    return seg_piece(px + t0 * dx, py + t0 * dy, px + t1 * dx, py + t1 * dy)


# ---------------------------------------------------------------------------
# curve family intersections and the placement arrangement
# ---------------------------------------------------------------------------

def _piece_bbox(piece: CurvePiece) -> tuple[float, float, float, float]:
    pts = piece.sample(9) if piece.kind == "arc" else np.array([piece.p0, piece.p1])
    return (
        float(pts[:, 0].min()),
        float(pts[:, 1].min()),
        float(pts[:, 0].max()),
        float(pts[:, 1].max()),
    )


def _seg_seg_point(p, q):
    ax, ay = p.p0
    bx, by = p.p1
    cx, cy = q.p0
    dx, dy = q.p1
    r1x, r1y = bx - ax, by - ay
    r2x, r2y = dx - cx, dy - cy
    det = r1x * r2y - r1y * r2x
    scale = max(abs(r1x), abs(r1y), abs(r2x), abs(r2y), 1.0)
    if abs(det) <= 1e-13 * scale * scale:
        return None
    ex, ey = cx - ax, cy - ay
    t = (ex * r2y - ey * r2x) / det
    u = (ex * r1y - ey * r1x) / det
    if -1e-9 <= t <= 1.0 + 1e-9 and -1e-9 <= u <= 1.0 + 1e-9:
        return (ax + t * r1x, ay + t * r1y)
    return None


def _segs_collinear_overlap(p, q, tol: float = 1e-9) -> bool:
    ax, ay = p.p0
    bx, by = p.p1
    cx, cy = q.p0
    dx, dy = q.p1
    r1x, r1y = bx - ax, by - ay
    L = math.hypot(r1x, r1y)
    if L <= tol:
        return False
    cr1 = abs(r1x * (cy - ay) - r1y * (cx - ax)) / L
    cr2 = abs(r1x * (dy - ay) - r1y * (dx - ax)) / L
    if cr1 > tol or cr2 > tol:
        return False
    t1 = ((cx - ax) * r1x + (cy - ay) * r1y) / (L * L)
    t2 = ((dx - ax) * r1x + (dy - ay) * r1y) / (L * L)
    lo, hi = min(t1, t2), max(t1, t2)
    return min(hi, 1.0) - max(lo, 0.0) > tol / L


def _seg_arc_points(seg: CurvePiece, arc: CurvePiece):
    ax, ay = seg.p0
    bx, by = seg.p1
    ln = Line(Point(ax, ay), Point(bx, by))
    A = ln.a * arc.vec_a[0] + ln.b * arc.vec_a[1]
    B = ln.a * arc.vec_b[0] + ln.b * arc.vec_b[1]
    C = ln.a * arc.center[0] + ln.b * arc.center[1] - ln.c
    pts = []
    L2 = (bx - ax) ** 2 + (by - ay) ** 2
    for psi in _sinusoid_roots(A, B, C, arc.psi0, arc.psi1):
        x, y = arc.arc_point(psi)
        t = ((x - ax) * (bx - ax) + (y - ay) * (by - ay)) / L2
        if -1e-9 <= t <= 1.0 + 1e-9:
            pts.append((x, y))
    return pts


def _arc_implicit(arc: CurvePiece):
    """Implicit form g(x, y) = u^2 + v^2 - 1 in the arc's own frame."""
    ax, ay = arc.vec_a
    bx, by = arc.vec_b
    det = ax * by - ay * bx

    def g(x: float, y: float) -> float:
        rx, ry = x - arc.center[0], y - arc.center[1]
        if abs(det) <= 1e-15:
            return math.hypot(rx, ry)
        s = (rx * by - ry * bx) / det
        c = (ax * ry - ay * rx) / det
        return s * s + c * c - 1.0

    return g


def _arc_arc_points(a1: CurvePiece, a2: CurvePiece, samples: int = 96):
    g = _arc_implicit(a2)
    psis = np.linspace(a1.psi0, a1.psi1, samples)
    vals = np.array([g(*a1.arc_point(p)) for p in psis])
    pts = []
    for i in range(len(psis) - 1):
        va, vb = vals[i], vals[i + 1]
        if not (np.isfinite(va) and np.isfinite(vb)) or va * vb > 0.0:
            continue
        lo, hi = psis[i], psis[i + 1]
        flo = va
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = g(*a1.arc_point(mid))
            if flo * fm <= 0.0:
                hi = mid
            else:
                lo, flo = mid, fm
        pts.append(a1.arc_point(0.5 * (lo + hi)))
    return pts


def _piece_intersections(p: CurvePiece, q: CurvePiece):
    if p.kind == "seg" and q.kind == "seg":
        if _segs_collinear_overlap(p, q):
            return [], True
        hit = _seg_seg_point(p, q)
        return ([hit] if hit is not None else []), False
    if p.kind == "seg":
        return _seg_arc_points(p, q), False
    if q.kind == "seg":
        return _seg_arc_points(q, p), False
    return _arc_arc_points(p, q), False


def _family_intersections(pieces_a: list[CurvePiece], pieces_b: list[CurvePiece]):
    """All intersection points between two piece families (bbox-pruned)."""
    if not pieces_a or not pieces_b:
        return [], []
    boxes_b = np.array([_piece_bbox(p) for p in pieces_b])
    points: list[tuple[float, float]] = []
    shared: list[tuple[int, int]] = []
    for i, pa in enumerate(pieces_a):
        x0, y0, x1, y1 = _piece_bbox(pa)
        mask = (
            (boxes_b[:, 0] <= x1 + 1e-9)
            & (boxes_b[:, 2] >= x0 - 1e-9)
            & (boxes_b[:, 1] <= y1 + 1e-9)
            & (boxes_b[:, 3] >= y0 - 1e-9)
        )
        for j in np.nonzero(mask)[0]:
            pts, is_shared = _piece_intersections(pa, pieces_b[int(j)])
            if is_shared:
                shared.append((i, int(j)))
            points.extend(pts)
    return points, shared


def pair_intersections(curves_a: list[CriticalCurve], curves_b: list[CriticalCurve]):
    """Transversal intersection points between the curve sets of two vectors.

    Returns (points, shared) where shared lists overlapping collinear piece
    pairs, which general position rules out for honest inputs.
    """
    pieces_a = [p for c in curves_a for p in c.pieces]
    pieces_b = [p for c in curves_b for p in c.pieces]
    points, shared = _family_intersections(pieces_a, pieces_b)
    return _dedupe_points(points), shared


def _dedupe_points(points, tol: float = 1e-7):
    seen = {}
    for x, y in points:
        seen[(round(x / tol), round(y / tol))] = (x, y)
    return [Point(x, y) for x, y in sorted(seen.values())]


@dataclass
class PlacementArrangement:
    """Overlay of all critical curves, with its combinatorial size."""

    shape: str
    eps: float
    curves: list[CriticalCurve]
    line_translates: list[CriticalCurve]
    domain: BBox
    counts: dict
    warnings: list
    arrangement: Arrangement
    vectors: TranslationVectorSet

    @property
    def complexity(self) -> int:
        return self.counts["vertices"] + self.counts["edges"] + self.counts["faces"]

    def all_curves(self) -> list[CriticalCurve]:
        return list(self.curves) + list(self.line_translates)

    def sampled_polylines(self, spacing: float) -> list[np.ndarray]:
        out = []
        for curve in self.all_curves():
            for piece in curve.pieces:
                out.append(piece.sample_by_spacing(spacing))
        return out

    def supports_placement(self, center: Point, curve: CriticalCurve) -> bool:
        """Definition-level check of one curve sample.

        Gap curves need a boundary piece of the right length that contains
        the curve's own fixed boundary point (which pins the witness to the
        owning cell); contact curves need their contact condition.
        """
        prims = self.arrangement.primitives
        if curve.kind == "contact":
            return _contact_holds(center, prims, self.shape)
        ok, witnesses = is_epsilon_placement(center, prims, self.shape, self.eps)
        if not ok:
            return False
        if curve.vector is None:
            return True
        P = shape_perimeter(self.shape)
        for w in witnesses:
            if (curve.vector.s - w.start) % P <= w.length + 1e-9:
                return True
        return False


def _contact_holds(center: Point, primitives: list, shape: str, tol: float = 1e-6) -> bool:
    if shape == CIRCLE:
        for prim in primitives:
            if isinstance(prim, Line) and abs(abs(prim.side_of(center)) - 1.0) <= tol:
                return True
        return False
    corners = [
        Point(center.x - 0.5, center.y - 0.5),
        Point(center.x + 0.5, center.y - 0.5),
        Point(center.x + 0.5, center.y + 0.5),
        Point(center.x - 0.5, center.y + 0.5),
    ]
    for prim in primitives:
        if isinstance(prim, Line):
            if any(abs(prim.side_of(c)) <= tol for c in corners):
                return True
        else:
            for c in corners:
                if _dist_point_segment(c, prim) <= tol:
                    return True
            for end in (prim.p, prim.q):
                if (
                    abs(max(abs(end.x - center.x), abs(end.y - center.y)) - 0.5) <= tol
                ):
                    return True
    return False


def _dist_point_segment(pt: Point, seg: Segment) -> float:
    dx, dy = seg.q.x - seg.p.x, seg.q.y - seg.p.y
    L2 = dx * dx + dy * dy
    t = ((pt.x - seg.p.x) * dx + (pt.y - seg.p.y) * dy) / L2
    t = min(max(t, 0.0), 1.0)
    return math.hypot(pt.x - seg.p.x - t * dx, pt.y - seg.p.y - t * dy)


def default_domain(primitives: list, shape: str, eps) -> BBox:
    """Placement window: data bounding box grown by the shape diameter + eps."""
    e = _eps_value(eps)
    pts = []
    for prim in primitives:
        if isinstance(prim, Line):
            pts.extend([(prim.p.x, prim.p.y), (prim.q.x, prim.q.y)])
        else:
            pts.extend([(prim.p.x, prim.p.y), (prim.q.x, prim.q.y)])
    if not pts:
        pts = [(0.0, 0.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    diameter = SQRT2 if shape == SQUARE else 2.0
    return BBox(min(xs), min(ys), max(xs), max(ys)).expanded(diameter + e)


def build_placement_arrangement(
    arrangement: Arrangement,
    eps,
    shape: str,
    include_line_translates: bool = False,
    domain: BBox | None = None,
) -> PlacementArrangement:
    """Overlay of the curves of every vector; reports vertex/edge/face counts."""
    e = _eps_value(eps)
    Epsilon(e).validate_for(shape)
    if shape == CIRCLE and e >= 1.0:
        raise EpsilonTooLarge("circle curves are only computed for eps < 1")
    if domain is None:
        domain = default_domain(arrangement.primitives, shape, e)
    # distances up to 1+eps beyond the domain must see real walls, not the
    # clip frame; rebuild on a bigger box when the arrangement is too tight
    needed = domain.expanded(1.0 + e + 0.25)
    b = arrangement.clip_box
    if (
        b.xmin > needed.xmin
        or b.ymin > needed.ymin
        or b.xmax < needed.xmax
        or b.ymax < needed.ymax
    ):
        from .arrangement import build_line_arrangement, build_segment_arrangement

        if arrangement.kind == "lines":
            arrangement = build_line_arrangement(arrangement.primitives, clip_box=needed)
        else:
            arrangement = build_segment_arrangement(arrangement.primitives, clip_box=needed)
    vectors = translation_vectors(shape, e)
    warnings: list = []
    regions_cache: dict = {}
    curves: list[CriticalCurve] = []
    for tau in vectors.vectors:
        curves.extend(
            collect_S(tau, arrangement, e, domain, regions_cache, warnings)
        )
    translates = (
        contact_curves(arrangement.primitives, shape, domain)
        if include_line_translates
        else []
    )
    counts = _overlay_counts(curves + translates, domain)
    return PlacementArrangement(
        shape, e, curves, translates, domain, counts, warnings, arrangement, vectors
    )


def _overlay_counts(curves: list[CriticalCurve], domain: BBox) -> dict:
    """Vertex/edge/face counts of the curve overlay plus the domain frame."""
    pieces: list[CurvePiece] = [p for c in curves for p in c.pieces]
    frame = [
        seg_piece(domain.xmin, domain.ymin, domain.xmax, domain.ymin),
        seg_piece(domain.xmax, domain.ymin, domain.xmax, domain.ymax),
        seg_piece(domain.xmax, domain.ymax, domain.xmin, domain.ymax),
        seg_piece(domain.xmin, domain.ymax, domain.xmin, domain.ymin),
    ]
    pieces = pieces + frame

    snap = 1e-7
    pool: dict[tuple[int, int], int] = {}
    coords: list[tuple[float, float]] = []

    def vid(x: float, y: float) -> int:
        key = (round(x / snap), round(y / snap))
        if key in pool:
            return pool[key]
        idx = len(coords)
        pool[key] = idx
        coords.append((x, y))
        return idx

    per_piece_points: list[list[tuple[float, float]]] = [[] for _ in pieces]
    for i, piece in enumerate(pieces):
        a, b = piece.endpoints()
        per_piece_points[i].extend([a, b])

    segs_idx = [i for i, p in enumerate(pieces) if p.kind == "seg"]
    arcs_idx = [i for i, p in enumerate(pieces) if p.kind == "arc"]

    if segs_idx:
        P0 = np.array([pieces[i].p0 for i in segs_idx])
        P1 = np.array([pieces[i].p1 for i in segs_idx])
        hits = _batch_seg_intersections(P0, P1)
        for a_i, b_i, x, y in hits:
            per_piece_points[segs_idx[a_i]].append((x, y))
            per_piece_points[segs_idx[b_i]].append((x, y))

    for ai in arcs_idx:
        for j in segs_idx + [k for k in arcs_idx if k > ai]:
            pts, _shared = _piece_intersections(pieces[ai], pieces[j])
            for x, y in pts:
                per_piece_points[ai].append((x, y))
                per_piece_points[j].append((x, y))

    edge_keys: set[tuple] = set()
    adj_edges: list[tuple[int, int]] = []
    for i, piece in enumerate(pieces):
        pts = per_piece_points[i]
        params = sorted(set(_piece_param(piece, x, y) for x, y in pts))
        prev_vid = None
        prev_t = None
        for t in params:
            x, y = _piece_eval(piece, t)
            v = vid(x, y)
            if prev_vid is not None and v != prev_vid:
                mid = _piece_eval(piece, 0.5 * (prev_t + t))
                key = (
                    min(prev_vid, v),
                    max(prev_vid, v),
                    round(mid[0] / 1e-6),
                    round(mid[1] / 1e-6),
                )
                if key not in edge_keys:
                    edge_keys.add(key)
                    adj_edges.append((prev_vid, v))
            prev_vid, prev_t = v, t

    V = len(coords)
    E = len(adj_edges)
    parent = list(range(V))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in adj_edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = len({find(u) for u in range(V)})
    F = 1 + comps + E - V
    return {"vertices": V, "edges": E, "faces": F}


def _piece_param(piece: CurvePiece, x: float, y: float) -> float:
    if piece.kind == "seg":
        dx, dy = piece.p1[0] - piece.p0[0], piece.p1[1] - piece.p0[1]
        L2 = dx * dx + dy * dy
        if L2 <= 0.0:
            return 0.0
        t = ((x - piece.p0[0]) * dx + (y - piece.p0[1]) * dy) / L2
        return min(max(t, 0.0), 1.0)
    ax, ay = piece.vec_a
    bx, by = piece.vec_b
    det = ax * by - ay * bx
    rx, ry = x - piece.center[0], y - piece.center[1]
    if abs(det) <= 1e-15:
        return piece.psi0
    s = (rx * by - ry * bx) / det
    c = (ax * ry - ay * rx) / det
    psi = math.atan2(s, c)
    for k in (-1, 0, 1):
        cand = psi + 2.0 * math.pi * k
        if piece.psi0 - 1e-9 <= cand <= piece.psi1 + 1e-9:
            return min(max(cand, piece.psi0), piece.psi1)
    return min(max(psi, piece.psi0), piece.psi1)


def _piece_eval(piece: CurvePiece, t: float):
    if piece.kind == "seg":
        return (
            piece.p0[0] + t * (piece.p1[0] - piece.p0[0]),
            piece.p0[1] + t * (piece.p1[1] - piece.p0[1]),
        )
    return piece.arc_point(t)


def _batch_seg_intersections(P0: np.ndarray, P1: np.ndarray):
    """Pairwise proper intersections among segments, x-interval pruned."""
    n = P0.shape[0]
    if n == 0:
        return []
    xmin = np.minimum(P0[:, 0], P1[:, 0])
    xmax = np.maximum(P0[:, 0], P1[:, 0])
    ymin = np.minimum(P0[:, 1], P1[:, 1])
    ymax = np.maximum(P0[:, 1], P1[:, 1])
    order = np.argsort(xmin, kind="stable")
    xmin_s = xmin[order]
    out = []
    D = P1 - P0
    for pos in range(n):
        i = int(order[pos])
        hi = int(np.searchsorted(xmin_s, xmax[i] + 1e-9, side="right"))
        js = order[pos + 1 : hi]
        if js.size == 0:
            continue
        js = js[(ymin[js] <= ymax[i] + 1e-9) & (ymax[js] >= ymin[i] - 1e-9)]
        if js.size == 0:
            continue
        det = D[i, 0] * D[js, 1] - D[i, 1] * D[js, 0]
        ok = np.abs(det) > 1e-13
        ex = P0[js, 0] - P0[i, 0]
        ey = P0[js, 1] - P0[i, 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (ex * D[js, 1] - ey * D[js, 0]) / det
            u = (ex * D[i, 1] - ey * D[i, 0]) / det
        ok &= (t >= -1e-9) & (t <= 1.0 + 1e-9) & (u >= -1e-9) & (u <= 1.0 + 1e-9)
        for idx in np.nonzero(ok)[0]:
            j = int(js[idx])
            x = P0[i, 0] + t[idx] * D[i, 0]
            y = P0[i, 1] + t[idx] * D[i, 1]
            out.append((i, j, float(x), float(y)))
    return out
