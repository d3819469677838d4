"""Junction detection on trajectory data.

A point is junction-like when the crossings of its salient subtrajectories
with the surrounding unit square cluster into at least three groups along the
boundary.  Crossings where all traffic goes straight through are told apart
from real junctions by how the clusters pair up under entry/exit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrangement import BBox
from .geom import (
    SQUARE,
    PerimeterCoord,
    Point,
    Polyline,
    perimeter_coordinate,
)

# Side ratio of the inner square a salient subtrajectory must reach.
INNER_RATIO = 0.5


@dataclass(frozen=True)
class SalientSubtrajectory:
    source_id: str
    first_edge: int  # polyline edge index where the piece starts
    last_edge: int
    points: tuple[Point, ...]  # clipped chain, endpoints on the square
    entry: PerimeterCoord
    exit: PerimeterCoord


@dataclass
class Cluster:
    members: list[float]  # perimeter coordinates
    size: int
    span: float  # along-boundary extent


@dataclass
class ClusterSet:
    perimeter: float
    clusters: list[Cluster]
    assignment: list[int]  # cluster index per input coordinate

    def __len__(self) -> int:
        return len(self.clusters)


@dataclass
class JunctionAssessment:
    point: Point
    clusters: ClusterSet
    subtrajectories: list[SalientSubtrajectory]
    junction_like: bool
    kind: str  # "crossing" | "realJunction" | "none"
    significance: float


@dataclass
class SignificanceGrid:
    bbox: BBox
    spacing: float
    nx: int
    ny: int
    cells: list[JunctionAssessment]  # row-major: rows over y, columns over x

    def at(self, row: int, col: int) -> JunctionAssessment:
        return self.cells[row * self.nx + col]


# ---------------------------------------------------------------------------
# salient subtrajectories
# ---------------------------------------------------------------------------

def _square_clip_interval(p: Point, q: Point, center: Point, half: float):
    """Parameter interval of segment pq inside the closed square, or None."""
    dx, dy = q.x - p.x, q.y - p.y
    t0, t1 = 0.0, 1.0
    for d, start, lo, hi in (
        (dx, p.x, center.x - half, center.x + half),
        (dy, p.y, center.y - half, center.y + half),
    ):
        if abs(d) <= 1e-15:
            if not (lo - 1e-12 <= start <= hi + 1e-12):
                return None
            continue
        ta, tb = (lo - start) / d, (hi - start) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    if t0 > t1:
        return None
    return (t0, t1)


def _segment_hits_square(p: Point, q: Point, center: Point, half: float) -> bool:
    return _square_clip_interval(p, q, center, half) is not None


def salient_subtrajectories(
    trajectories: list[Polyline],
    p: Point,
    inner_ratio: float = INNER_RATIO,
) -> list[SalientSubtrajectory]:
    """Maximal trajectory pieces inside the unit square around p that reach
    the inner square and properly cross the boundary at both ends.

    A vertex touching the boundary with both neighbors strictly inside counts
    as contact and does not end a piece; pieces that stop on the boundary
    without crossing (trajectory endpoints, grazing vertices) are dropped.
    """
    out: list[SalientSubtrajectory] = []
    half = 0.5
    inner_half = 0.5 * inner_ratio
    for traj in trajectories:
        verts = traj.vertices
        last_edge = len(verts) - 2
        runs: list[tuple[int, float, int, float]] = []
        open_run: tuple[int, float] | None = None
        last: tuple[int, float] | None = None
        for ei, (a, b) in enumerate(traj.edges()):
            clip = _square_clip_interval(a, b, p, half)
            if clip is None:
                if open_run is not None:
                    runs.append((open_run[0], open_run[1], last[0], last[1]))
                    open_run = None
                continue
            t0, t1 = clip
            connects = (
                open_run is not None
                and last[0] == ei - 1
                and last[1] >= 1.0 - 1e-12
                and t0 <= 1e-12
            )
            if not connects:
                if open_run is not None:
                    runs.append((open_run[0], open_run[1], last[0], last[1]))
                open_run = (ei, t0)
            last = (ei, t1)
            if t1 < 1.0 - 1e-12:
                runs.append((open_run[0], open_run[1], ei, t1))
                open_run = None
        if open_run is not None:
            runs.append((open_run[0], open_run[1], last[0], last[1]))

        for e0, t0, e1, t1 in runs:
            # endpoints must be true crossings: a piece that begins or ends
            # at a trajectory endpoint never crossed the boundary there
            if e0 == 0 and t0 <= 1e-12:
                continue
            if e1 == last_edge and t1 >= 1.0 - 1e-12:
                continue
            pts = _run_points(verts, e0, t0, e1, t1)
            if len(pts) < 2:
                continue
            if not any(
                _segment_hits_square(pts[i], pts[i + 1], p, inner_half)
                for i in range(len(pts) - 1)
            ):
                continue
            try:
                entry = perimeter_coordinate(SQUARE, p, pts[0])
                exit_ = perimeter_coordinate(SQUARE, p, pts[-1])
            except Exception:
                continue
            out.append(
                SalientSubtrajectory(traj.id, e0, e1, tuple(pts), entry, exit_)
            )
    return out


def _run_points(verts, e0: int, t0: float, e1: int, t1: float) -> list[Point]:
    def lerp(a: Point, b: Point, t: float) -> Point:
        return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))

    pts = [lerp(verts[e0], verts[e0 + 1], t0)]
    for ei in range(e0, e1):
        pts.append(verts[ei + 1])
    last = lerp(verts[e1], verts[e1 + 1], t1)
    if last.dist(pts[-1]) > 1e-12:
        pts.append(last)
    return pts


# ---------------------------------------------------------------------------
# clustering along the boundary
# ---------------------------------------------------------------------------

def epsilon_cluster(coords: list[PerimeterCoord], eps: float) -> ClusterSet:
    """Transitive closure of along-boundary closeness at granularity eps."""
    if not coords:
        return ClusterSet(4.0, [], [])
    P = coords[0].perimeter
    for c in coords:
        if abs(c.perimeter - P) > 1e-12:
            raise ValueError("mixed shapes in one clustering")
    svals = [c.s for c in coords]
    order = sorted(range(len(svals)), key=lambda i: svals[i])
    groups: list[list[int]] = [[order[0]]]
    for prev, cur in zip(order, order[1:]):
        if svals[cur] - svals[prev] <= eps:
            groups[-1].append(cur)
        else:
            groups.append([cur])
    # wraparound: merge the last group into the first when the cyclic gap closes
    if len(groups) > 1:
        gap = svals[order[0]] + P - svals[order[-1]]
        if gap <= eps:
            groups[0] = groups.pop() + groups[0]
    clusters = []
    assignment = [0] * len(svals)
    for gi, grp in enumerate(groups):
        members = [svals[i] for i in grp]
        span = _cyclic_span(sorted(members), P)
        for i in grp:
            assignment[i] = gi
        clusters.append(Cluster(members, len(members), span))
    return ClusterSet(P, clusters, assignment)


def _cyclic_span(sorted_members: list[float], P: float) -> float:
    if len(sorted_members) <= 1:
        return 0.0
    gaps = [b - a for a, b in zip(sorted_members, sorted_members[1:])]
    gaps.append(sorted_members[0] + P - sorted_members[-1])
    return P - max(gaps)


# ---------------------------------------------------------------------------
# assessment
# ---------------------------------------------------------------------------

def default_significance(n_clusters: int, min_cluster_size: int, kind: str) -> float:
    """Stand-in junction importance: more arms and fatter thinnest arm score
    higher; decision points outrank straight-through crossings."""
    if n_clusters < 3:
        return 0.0
    base = (n_clusters - 2) * min_cluster_size
    return float(2 * base if kind == "realJunction" else base)


def assess(
    p: Point,
    trajectories: list[Polyline],
    eps: float,
    inner_ratio: float = INNER_RATIO,
    significance_fn=default_significance,
) -> JunctionAssessment:
    """Cluster the salient crossing points around p and classify the point."""
    subs = salient_subtrajectories(trajectories, p, inner_ratio)
    coords: list[PerimeterCoord] = []
    for sub in subs:
        coords.append(sub.entry)
        coords.append(sub.exit)
    clusters = epsilon_cluster(coords, eps)
    junction_like = len(clusters) >= 3
    kind = "none"
    if junction_like:
        partners: dict[int, set[int]] = {i: set() for i in range(len(clusters))}
        for si, sub in enumerate(subs):
            ci = clusters.assignment[2 * si]
            cj = clusters.assignment[2 * si + 1]
            partners[ci].add(cj)
            partners[cj].add(ci)
        paired = all(
            len(ps) == 1 and next(iter(ps)) != ci for ci, ps in partners.items()
        )
        kind = "crossing" if paired else "realJunction"
    min_size = min((c.size for c in clusters.clusters), default=0)
    significance = significance_fn(len(clusters), min_size, kind)
    return JunctionAssessment(p, clusters, subs, junction_like, kind, significance)


# ---------------------------------------------------------------------------
# grid scan and reporting
# ---------------------------------------------------------------------------

def grid_scan(
    trajectories: list[Polyline],
    eps: float,
    bbox: BBox,
    spacing: float,
    inner_ratio: float = INNER_RATIO,
    significance_fn=default_significance,
) -> SignificanceGrid:
    """assess() on a regular grid over the box, row-major and deterministic."""
    if spacing <= 0.0:
        raise ValueError("spacing must be positive")
    nx = max(1, int(math.floor(bbox.width / spacing)) + 1)
    ny = max(1, int(math.floor(bbox.height / spacing)) + 1)
    cells: list[JunctionAssessment] = []
    for row in range(ny):
        y = bbox.ymin + row * spacing
        for col in range(nx):
            x = bbox.xmin + col * spacing
            cells.append(
                assess(Point(x, y), trajectories, eps, inner_ratio, significance_fn)
            )
    return SignificanceGrid(bbox, spacing, nx, ny, cells)


@dataclass
class TopKResult:
    items: list[tuple[Point, JunctionAssessment]]
    requested: int
    complete: bool

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


def top_k(grid: SignificanceGrid, k: int) -> TopKResult:
    """One representative per 4-connected blob of junction-like cells, ranked
    by the blob's best significance; flagged incomplete when fewer than k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    flags = [a.junction_like for a in grid.cells]
    seen = [False] * len(grid.cells)
    blobs: list[list[int]] = []
    for idx in range(len(grid.cells)):
        if not flags[idx] or seen[idx]:
            continue
        stack = [idx]
        seen[idx] = True
        blob = []
        while stack:
            cur = stack.pop()
            blob.append(cur)
            row, col = divmod(cur, grid.nx)
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                r, c = row + dr, col + dc
                if 0 <= r < grid.ny and 0 <= c < grid.nx:
                    nidx = r * grid.nx + c
                    if flags[nidx] and not seen[nidx]:
                        seen[nidx] = True
                        stack.append(nidx)
        blobs.append(blob)

    reps = []
    for blob in blobs:
        best = min(
            blob,
            key=lambda i: (-grid.cells[i].significance, divmod(i, grid.nx)),
        )
        reps.append(best)
    reps.sort(key=lambda i: (-grid.cells[i].significance, divmod(i, grid.nx)))
    chosen = reps[:k]
    items = [(grid.cells[i].point, grid.cells[i]) for i in chosen]
    return TopKResult(items, k, len(reps) >= k)
