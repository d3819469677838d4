"""Scalar geometric primitives, tolerance policy, and perimeter coordinates.

Everything here is an immutable value; all operations are pure functions.
Coordinates are plain floats; a Fraction-based exact fallback kicks in for
orientation and line intersection when the determinant is too close to zero
to trust double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

LEFT = 1
RIGHT = -1
COLLINEAR = 0

SQUARE = "square"
CIRCLE = "circle"

# Unit shapes: square of side 1, circle of radius 1.
SQUARE_PERIMETER = 4.0
CIRCLE_PERIMETER = 2.0 * math.pi


class GeometryError(Exception):
    """Base class for geometric failures."""


class ParallelLines(GeometryError):
    pass


class CoincidentLines(GeometryError):
    pass


class NotOnBoundary(GeometryError):
    pass


class ShapeMismatch(GeometryError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    """Two-level tolerance policy.

    eps_geom decides coincidence questions (is a point on a line, are two
    lines parallel); eps_verify is the looser budget used when checking
    computed curves against the brute-force oracle.  Any clustering
    granularity in use must stay well above eps_verify.
    """

    eps_geom: float = 1e-9
    eps_verify: float = 1e-6

    def __post_init__(self) -> None:
        if not (0.0 < self.eps_geom < self.eps_verify):
            raise ValueError("need 0 < eps_geom < eps_verify")


TOL = ToleranceConfig()

# Exact arithmetic takes over when |det| falls below 1e3 * eps_geom * scale.
EXACT_FALLBACK_FACTOR = 1e3


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def translated(self, dx: float, dy: float) -> "Point":
        return Point(self.x + dx, self.y + dy)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Line:
    """Infinite line through two distinct anchor points.

    Canonical form a*x + b*y = c with a^2 + b^2 = 1 and the leading nonzero
    coefficient positive, so one geometric line has one representation.
    """

    p: Point
    q: Point
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self) -> None:
        dx = self.q.x - self.p.x
        dy = self.q.y - self.p.y
        norm = math.hypot(dx, dy)
        if norm <= TOL.eps_geom:
            raise ValueError("anchor points of a line must be distinct")
        a = -dy / norm
        b = dx / norm
        c = a * self.p.x + b * self.p.y
        # Leading nonzero coefficient positive; a counts as zero within tolerance.
        if a < -TOL.eps_geom or (abs(a) <= TOL.eps_geom and b < 0.0):
            a, b, c = -a, -b, -c
        if abs(a) <= TOL.eps_geom:
            a = 0.0
            b = math.copysign(1.0, b)
            c = b * self.p.y
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def direction(self) -> tuple[float, float]:
        return (self.b, -self.a)

    def side_of(self, pt: Point) -> float:
        """Signed offset of pt from the line (positive on the (a, b) side)."""
        return self.a * pt.x + self.b * pt.y - self.c

    def x_at(self, y: float) -> float:
        if abs(self.a) <= TOL.eps_geom:
            raise GeometryError("horizontal line has no unique x at y")
        return (self.c - self.b * y) / self.a

    def y_at(self, x: float) -> float:
        if abs(self.b) <= TOL.eps_geom:
            raise GeometryError("vertical line has no unique y at x")
        return (self.c - self.a * x) / self.b

    def same_line(self, other: "Line", tol: float = 1e-9) -> bool:
        return (
            abs(self.a - other.a) <= tol
            and abs(self.b - other.b) <= tol
            and abs(self.c - other.c) <= tol
        )


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self) -> None:
        if self.p.dist(self.q) <= TOL.eps_geom:
            raise ValueError("segment endpoints must be distinct")

    def length(self) -> float:
        return self.p.dist(self.q)

    def supporting_line(self) -> Line:
        return Line(self.p, self.q)


@dataclass(frozen=True)
class Polyline:
    id: str
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise ValueError("polyline needs at least two vertices")
        for u, v in zip(self.vertices, self.vertices[1:]):
            if u.dist(v) <= TOL.eps_geom:
                raise ValueError("consecutive polyline vertices must be distinct")

    def edges(self) -> list[tuple[Point, Point]]:
        return list(zip(self.vertices, self.vertices[1:]))


def _orientation_exact(p: Point, q: Point, r: Point) -> int:
    det = (Fraction(q.x) - Fraction(p.x)) * (Fraction(r.y) - Fraction(p.y)) - (
        Fraction(q.y) - Fraction(p.y)
    ) * (Fraction(r.x) - Fraction(p.x))
    if det > 0:
        return LEFT
    if det < 0:
        return RIGHT
    return COLLINEAR


def orientation(p: Point, q: Point, r: Point, tol: ToleranceConfig = TOL) -> int:
    """Sign of the signed area of triangle pqr: LEFT, RIGHT or COLLINEAR.

    Collinear means |signed area| <= eps_geom scaled by the input magnitude.
    Near the collinear band the determinant is recomputed exactly.
    """
    det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    scale = max(
        abs(q.x - p.x), abs(r.y - p.y), abs(q.y - p.y), abs(r.x - p.x), 1.0
    )
    band = tol.eps_geom * scale * scale
    if abs(det) <= band:
        return COLLINEAR
    if abs(det) <= EXACT_FALLBACK_FACTOR * band:
        return _orientation_exact(p, q, r)
    return LEFT if det > 0.0 else RIGHT


def intersect_lines(l1: Line, l2: Line, tol: ToleranceConfig = TOL) -> Point:
    """Unique intersection point of two canonicalized lines.

    Raises ParallelLines when the direction cross product vanishes within
    eps_geom, and CoincidentLines when the two lines are the same line.
    """
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) <= tol.eps_geom:
        if abs(l1.c - l2.c) <= tol.eps_geom and (
            abs(l1.a - l2.a) <= tol.eps_geom and abs(l1.b - l2.b) <= tol.eps_geom
        ):
            raise CoincidentLines("lines coincide")
        raise ParallelLines("lines are parallel")
    if abs(det) <= EXACT_FALLBACK_FACTOR * tol.eps_geom:
        # Nearly parallel: solve exactly, then round once.
        a1, b1, c1 = Fraction(l1.a), Fraction(l1.b), Fraction(l1.c)
        a2, b2, c2 = Fraction(l2.a), Fraction(l2.b), Fraction(l2.c)
        d = a1 * b2 - a2 * b1
        x = (c1 * b2 - c2 * b1) / d
        y = (a1 * c2 - a2 * c1) / d
        return Point(float(x), float(y))
    x = (l1.c * l2.b - l2.c * l1.b) / det
    y = (l1.a * l2.c - l2.a * l1.c) / det
    return Point(x, y)


def segment_intersection(
    a0: Point, a1: Point, b0: Point, b1: Point, tol: float = 1e-12
) -> tuple[float, float, Point] | None:
    """Proper intersection of segments a and b.

    Returns (t, u, point) with t, u in [0, 1] such that
    point = a0 + t*(a1-a0) = b0 + u*(b1-b0), or None when the segments are
    parallel or miss each other.  Endpoint touches within tol count as hits.
    """
    dax, day = a1.x - a0.x, a1.y - a0.y
    dbx, dby = b1.x - b0.x, b1.y - b0.y
    det = dax * dby - day * dbx
    scale = max(abs(dax), abs(day), abs(dbx), abs(dby), 1.0)
    if abs(det) <= 1e-14 * scale * scale:
        return None
    rx, ry = b0.x - a0.x, b0.y - a0.y
    t = (rx * dby - ry * dbx) / det
    u = (rx * day - ry * dax) / det
    if -tol <= t <= 1.0 + tol and -tol <= u <= 1.0 + tol:
        t = min(max(t, 0.0), 1.0)
        u = min(max(u, 0.0), 1.0)
        return (t, u, Point(a0.x + t * dax, a0.y + t * day))
    return None


# ---------------------------------------------------------------------------
# Perimeter coordinates on the unit square / unit circle boundary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerimeterCoord:
    """Arc-length coordinate along the boundary of a unit shape.

    s = 0 sits at the bottom-left corner (square) or at the angle-0 point
    (circle) and increases counterclockwise; 0 <= s < perimeter.
    """

    shape: str
    center: Point
    s: float

    def __post_init__(self) -> None:
        if self.shape not in (SQUARE, CIRCLE):
            raise ValueError(f"unknown shape {self.shape!r}")
        if not (0.0 <= self.s < self.perimeter + TOL.eps_geom):
            raise ValueError(f"perimeter coordinate {self.s} out of range")

    @property
    def perimeter(self) -> float:
        return SQUARE_PERIMETER if self.shape == SQUARE else CIRCLE_PERIMETER


def shape_perimeter(shape: str) -> float:
    if shape == SQUARE:
        return SQUARE_PERIMETER
    if shape == CIRCLE:
        return CIRCLE_PERIMETER
    raise ValueError(f"unknown shape {shape!r}")


def square_corners(center: Point) -> list[Point]:
    """Corners of the unit square in CCW order starting at bottom-left."""
    cx, cy = center.x, center.y
    return [
        Point(cx - 0.5, cy - 0.5),
        Point(cx + 0.5, cy - 0.5),
        Point(cx + 0.5, cy + 0.5),
        Point(cx - 0.5, cy + 0.5),
    ]


def perimeter_point(coord: PerimeterCoord) -> Point:
    """Boundary point at a perimeter coordinate (inverse of perimeter_coordinate)."""
    cx, cy = coord.center.x, coord.center.y
    s = coord.s % coord.perimeter
    if coord.shape == CIRCLE:
        return Point(cx + math.cos(s), cy + math.sin(s))
    side, frac = int(s), s - int(s)
    if side == 0:  # bottom, left to right
        return Point(cx - 0.5 + frac, cy - 0.5)
    if side == 1:  # right, bottom to top
        return Point(cx + 0.5, cy - 0.5 + frac)
    if side == 2:  # top, right to left
        return Point(cx + 0.5 - frac, cy + 0.5)
    return Point(cx - 0.5, cy + 0.5 - frac)  # left, top to bottom


def perimeter_coordinate(
    shape: str, center: Point, boundary_point: Point, tol: ToleranceConfig = TOL
) -> PerimeterCoord:
    """Perimeter coordinate of a point that lies on the shape boundary.

    Raises NotOnBoundary when the point is farther than eps_geom from it.
    """
    dx = boundary_point.x - center.x
    dy = boundary_point.y - center.y
    if shape == CIRCLE:
        r = math.hypot(dx, dy)
        if abs(r - 1.0) > tol.eps_geom:
            raise NotOnBoundary(f"point {boundary_point} not on unit circle")
        s = math.atan2(dy, dx) % CIRCLE_PERIMETER
        return PerimeterCoord(CIRCLE, center, min(s, CIRCLE_PERIMETER - 1e-15))
    if shape != SQUARE:
        raise ValueError(f"unknown shape {shape!r}")
    if max(abs(dx), abs(dy)) - 0.5 > tol.eps_geom or (
        abs(abs(dx) - 0.5) > tol.eps_geom and abs(abs(dy) - 0.5) > tol.eps_geom
    ):
        raise NotOnBoundary(f"point {boundary_point} not on unit square")
    # Pick the side whose coordinate is pinned at +-0.5; corners may take
    # either incident side, the coordinate is the same after wrapping.
    if abs(dy + 0.5) <= tol.eps_geom and dx < 0.5 - tol.eps_geom:
        s = 0.0 + (dx + 0.5)
    elif abs(dx - 0.5) <= tol.eps_geom and dy < 0.5 - tol.eps_geom:
        s = 1.0 + (dy + 0.5)
    elif abs(dy - 0.5) <= tol.eps_geom:
        s = 2.0 + (0.5 - dx)
    else:
        s = 3.0 + (0.5 - dy)
    s %= SQUARE_PERIMETER
    return PerimeterCoord(SQUARE, center, min(max(s, 0.0), SQUARE_PERIMETER - 1e-15))


def boundary_distance(a: PerimeterCoord, b: PerimeterCoord) -> float:
    """Shorter-way-around distance between two perimeter coordinates."""
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    L = a.perimeter
    d = abs(a.s - b.s)
    return min(d, L - d)


def cyclic_gap(s_from: float, s_to: float, perimeter: float) -> float:
    """Forward (CCW) arc length from s_from to s_to, in [0, perimeter)."""
    return (s_to - s_from) % perimeter
