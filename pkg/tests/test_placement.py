import math

import numpy as np
import pytest

from critplace.arrangement import OnBoundary, build_line_arrangement, build_segment_arrangement, locate
from critplace.generators import random_lines
from critplace.geom import SQUARE, Line, Point, Segment
from critplace.oracle import dense_scan, is_epsilon_placement, verify
from critplace.placement import (
    Unbounded,
    build_placement_arrangement,
    collect_S,
    f_value,
    pair_intersections,
    translation_vectors,
)

X_AXIS = Line(Point(-1, 0), Point(1, 0))
Y_AXIS = Line(Point(0, -1), Point(0, 1))


# ---------------------------------------------------------------------------
# translation vectors
# ---------------------------------------------------------------------------

def test_square_vectors_quarter():
    vs = translation_vectors(SQUARE, 0.25)
    assert len(vs.vectors) == 16
    corners = {(v.dx, v.dy) for v in vs.vectors if v.kind == "corner"}
    assert corners == {(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)}
    svals = sorted(v.s for v in vs.vectors)
    gaps = np.diff(svals + [svals[0] + 4.0])
    assert np.all(gaps <= 0.25 + 1e-12)


def test_square_vectors_eps_one_rejected():
    # eps must stay under a quarter perimeter
    with pytest.raises(ValueError):
        translation_vectors(SQUARE, 1.0)


def test_square_vectors_non_integer_spacing():
    vs = translation_vectors(SQUARE, 0.3)
    # ceil(1/0.3) = 4 points per side
    assert len(vs.vectors) == 16
    svals = sorted(v.s for v in vs.vectors)
    gaps = np.diff(svals + [svals[0] + 4.0])
    assert np.all(gaps <= 0.3 + 1e-12)
    # every eps-long boundary arc contains one or two vectors
    assert np.all(gaps > 0.3 / 2)


def test_circle_vectors():
    vs = translation_vectors("circle", math.pi / 8)
    assert len(vs.vectors) == 16
    assert all(v.kind == "angular" for v in vs.vectors)


# ---------------------------------------------------------------------------
# the distance-sum function
# ---------------------------------------------------------------------------

def test_f_value_examples():
    lines = [Y_AXIS, X_AXIS]
    assert f_value(Point(0.1, 0.2), lines, "upper_right") == pytest.approx(0.3)
    for t in (0.05, 0.1, 0.2):
        assert f_value(Point(t, 0.25 - t), lines, "upper_right") == pytest.approx(0.25)
    with pytest.raises(Unbounded):
        f_value(Point(-0.5, 0.5), lines, "upper_right")


def test_f_concave_inside_cells():
    lines = random_lines(4, 6)
    arr = build_line_arrangement(lines)
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 500:
        a = Point(*rng.uniform(-1.2, 1.2, 2))
        b = Point(*rng.uniform(-1.2, 1.2, 2))
        try:
            ca, cb = locate(a, arr), locate(b, arr)
        except (OnBoundary, Exception):
            continue
        if ca != cb:
            continue
        mid = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
        try:
            fm = f_value(mid, lines, "upper_right")
            fa = f_value(a, lines, "upper_right")
            fb = f_value(b, lines, "upper_right")
        except Unbounded:
            continue
        assert fm >= 0.5 * (fa + fb) - 1e-9
        checked += 1


# ---------------------------------------------------------------------------
# corner curves
# ---------------------------------------------------------------------------

def _corner(vs, label):
    return next(v for v in vs.vectors if v.label == label)


def test_corner_curve_quadrant_example():
    arr = build_line_arrangement([Y_AXIS, X_AXIS])
    vs = translation_vectors(SQUARE, 0.25)
    curves = collect_S(_corner(vs, "tr"), arr, 0.25)
    assert len(curves) == 1
    (curve,) = curves
    pts = curve.chain_points()
    assert len(pts) == 2
    ends = {tuple(round(v, 9) for v in p) for p in pts}
    assert ends == {(-0.25, -0.5), (-0.5, -0.25)}
    assert curve.convex_flag


def test_corner_curve_small_cell_empty():
    # cell narrower than eps in both directions has no corner placements
    lines = [
        Y_AXIS,
        Line(Point(0.1, -1), Point(0.1, 1)),
        X_AXIS,
        Line(Point(-1, 0.1), Point(1, 0.1)),
    ]
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.5)
    small = locate(Point(0.05, 0.05), arr)
    curves = [c for c in collect_S(_corner(vs, "tr"), arr, 0.5) if c.cell_id == small]
    assert curves == []


def test_corner_curve_two_components_in_sliver():
    # an acute sliver cell disconnects the level chain (dense-scan verified
    # globally by the acceptance suite; here we pin the component count)
    lines = random_lines(3, 1)
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.3)
    curves = [c for c in collect_S(_corner(vs, "tr"), arr, 0.3) if c.cell_id == 2]
    assert len(curves) == 2
    for c in curves:
        assert c.convex_flag
        for x, y in c.sample_points(0.05)[1:-1]:
            ok, wit = is_epsilon_placement(Point(x, y), lines, SQUARE, 0.3)
            assert ok


def test_corner_component_count_at_most_two():
    for seed in range(8):
        lines = random_lines(3, seed)
        arr = build_line_arrangement(lines)
        vs = translation_vectors(SQUARE, 0.3)
        for label in ("bl", "br", "tr", "tl"):
            curves = collect_S(_corner(vs, label), arr, 0.3)
            per_cell = {}
            for c in curves:
                per_cell[c.cell_id] = per_cell.get(c.cell_id, 0) + 1
            assert all(k <= 2 for k in per_cell.values())


def test_corner_chain_vertices_align_with_cell_vertices():
    for seed in (0, 3, 5):
        lines = random_lines(4, seed)
        arr = build_line_arrangement(lines)
        vs = translation_vectors(SQUARE, 0.3)
        vx = {round(float(v[0]), 6) for v in arr.verts}
        vy = {round(float(v[1]), 6) for v in arr.verts}
        for label in ("bl", "br", "tr", "tl"):
            tau = _corner(vs, label)
            for curve in collect_S(tau, arr, 0.3):
                pts = curve.chain_points()
                for x, y in pts[1:-1]:  # interior kinks only
                    bx = round(x + tau.dx, 6)
                    by = round(y + tau.dy, 6)
                    assert bx in vx or by in vy


# ---------------------------------------------------------------------------
# edge curves
# ---------------------------------------------------------------------------

def test_edge_curve_slope_four_example():
    lines = [Y_AXIS, Line(Point(0.2, 0), Point(0.45, 1))]
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.25)
    top_mid = next(
        v for v in vs.vectors if v.label == "top" and abs(v.dx) < 1e-12
    )
    wedge = locate(Point(0.1, 0.3), arr)
    curves = [c for c in collect_S(top_mid, arr, 0.25) if c.cell_id == wedge]
    assert len(curves) == 1
    (piece,) = curves[0].pieces
    assert piece.p0[1] == pytest.approx(-0.3)
    assert piece.p1[1] == pytest.approx(-0.3)
    assert sorted((piece.p0[0], piece.p1[0])) == pytest.approx([0.0, 0.25])


def test_edge_curve_wide_strip_empty():
    lines = [Y_AXIS, Line(Point(0.3, -1), Point(0.3, 1))]
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.25)
    strip = locate(Point(0.15, 0.0), arr)
    for v in vs.vectors:
        if v.kind == "edge":
            assert [c for c in collect_S(v, arr, 0.25) if c.cell_id == strip] == []


def test_edge_curve_degenerate_strip_flagged():
    lines = [Y_AXIS, Line(Point(0.25, -1), Point(0.25, 1))]
    arr = build_line_arrangement(lines)
    pa = build_placement_arrangement(arr, 0.25, SQUARE)
    assert any(w.orientation == "horizontal" for w in pa.warnings)
    # the degenerate two-dimensional set is not returned as curves
    strip_curves = [
        c
        for c in pa.curves
        if c.vector is not None and c.vector.label in ("top", "bottom")
        and all(abs(p.p0[1] - p.p1[1]) < 1e-9 and -0.6 < p.p0[1] < -0.4 for p in c.pieces)
    ]
    assert strip_curves == []


def test_edge_windows_at_most_eps_long():
    lines = random_lines(4, 19)
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.4)
    for v in vs.vectors:
        if v.kind != "edge":
            continue
        for curve in collect_S(v, arr, 0.4):
            for piece in curve.pieces:
                assert piece.length() <= 0.4 + 1e-9


# ---------------------------------------------------------------------------
# collect_S and the overlay
# ---------------------------------------------------------------------------

def test_collect_s_no_lines():
    arr = build_line_arrangement([])
    vs = translation_vectors(SQUARE, 0.25)
    assert collect_S(vs.vectors[0], arr, 0.25) == []


def test_collect_s_crossing_lines_single_quadrant():
    arr = build_line_arrangement([Y_AXIS, X_AXIS])
    vs = translation_vectors(SQUARE, 0.25)
    for label in ("bl", "br", "tr", "tl"):
        curves = collect_S(_corner(vs, label), arr, 0.25)
        assert len(curves) == 1


def test_level_set_soundness_samples():
    lines = random_lines(4, 44)
    arr = build_line_arrangement(lines)
    pa = build_placement_arrangement(arr, 0.4, SQUARE)
    n_checked = 0
    for curve in pa.curves:
        for piece in curve.pieces:
            for x, y in piece.sample(7, inset=0.05):
                ok, wit = is_epsilon_placement(Point(x, y), lines, SQUARE, 0.4)
                assert ok
                assert any(
                    pa.arrangement.point_in_cell(w.mid_point, curve.cell_id, slack=1e-6)
                    for w in wit
                )
                n_checked += 1
    assert n_checked > 50


def test_pair_intersections_disjoint():
    arr = build_line_arrangement([Y_AXIS, X_AXIS])
    vs = translation_vectors(SQUARE, 0.25)
    a = collect_S(_corner(vs, "tr"), arr, 0.25)
    b = collect_S(_corner(vs, "bl"), arr, 0.25)
    pts, shared = pair_intersections(a, b)
    assert pts == [] and shared == []


def test_pair_intersections_are_double_placements():
    lines = random_lines(4, 28)
    arr = build_line_arrangement(lines)
    vs = translation_vectors(SQUARE, 0.4)
    cache = {}
    families = {
        v.s: collect_S(v, arr, 0.4, regions_cache=cache) for v in vs.vectors
    }
    keys = sorted(families)
    found = 0
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            pts, _ = pair_intersections(families[keys[i]], families[keys[j]])
            for p in pts:
                ok, wit = is_epsilon_placement(p, lines, SQUARE, 0.4, tol=1e-6)
                assert ok
                found += 1
    assert found > 0


def test_overlay_counts_empty():
    arr = build_line_arrangement([])
    pa = build_placement_arrangement(arr, 0.25, SQUARE)
    # only the domain frame: 4 vertices, 4 edges, 2 faces
    assert pa.counts == {"vertices": 4, "edges": 4, "faces": 2}


def test_overlay_intersections_on_pieces():
    lines = random_lines(3, 55)
    arr = build_line_arrangement(lines)
    pa = build_placement_arrangement(arr, 0.5, SQUARE)
    assert pa.counts["vertices"] > 4
    assert pa.counts["edges"] >= pa.counts["vertices"] - 4


def test_single_line_square_curveless():
    # one line never admits a gap of sub-unit length: no gap curves, and the
    # scan only reports contact events along the four line translates
    arr = build_line_arrangement([Y_AXIS])
    pa = build_placement_arrangement(arr, 0.25, SQUARE, include_line_translates=True)
    assert pa.curves == []
    assert len(pa.line_translates) == 4
    scan = dense_scan([Y_AXIS], SQUARE, 0.25, pa.domain, 0.25 / 10)
    assert scan.shape[0] > 0
    for x, _y in scan:
        assert min(abs(x - t) for t in (-0.5, 0.5)) < 0.05
    assert verify(pa, scan, delta=0.25 / 5).empty()


def test_segment_scene_oracle_equivalence():
    segs = [
        Segment(Point(-1.0, -0.1), Point(1.0, 0.2)),
        Segment(Point(-0.2, -1.0), Point(0.1, 1.0)),
        Segment(Point(-0.8, 0.7), Point(0.9, -0.8)),
    ]
    arr = build_segment_arrangement(segs)
    eps = 0.5
    pa = build_placement_arrangement(arr, eps, SQUARE, include_line_translates=True)
    scan = dense_scan(segs, SQUARE, eps, pa.domain, eps / 20)
    rep = verify(pa, scan, delta=eps / 10)
    assert rep.empty()
