import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legdga import corpus
from legdga.curve_geometry import (
    CurveError,
    DegenerateCurveError,
    PlanarCurve,
    action_profile,
    analyze,
    circle_polygon,
    lefschetz_segment,
    load_curve,
    loose_chart_test,
    monogons,
    quotient_symmetric,
    shoelace,
    tangent_winding,
    validate_curve,
)
from legdga.random_diagrams import random_exact_curves


def _curve(points, **kw):
    return PlanarCurve(tuple((Fraction(x), Fraction(y)) for x, y in points), **kw)


def test_corpus_crossing_counts():
    assert len(analyze(corpus.load("gamma_cl")).crossings) == 1
    assert len(analyze(corpus.load("gamma_ch")).crossings) == 3


def test_repeated_vertex_is_degenerate():
    square = _curve([(1, 1), (3, 1), (3, 1), (3, 3), (1, 3)])
    with pytest.raises(DegenerateCurveError, match="degenerate edge"):
        validate_curve(square)


def test_vertex_at_origin_rejected():
    with pytest.raises(DegenerateCurveError):
        validate_curve(_curve([(0, 0), (1, 0), (0, 1)]))


def test_loader_errors(tmp_path):
    with pytest.raises(CurveError):
        load_curve(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "legdga-curve/1", "vertices": [[1, 1, 0, 1]]}))
    with pytest.raises(CurveError):
        load_curve(bad)


def test_json_round_trip():
    c = corpus.load("gamma_ch_tilde")
    assert load_curve(c.to_json()) == c


def test_circle_faces_and_winding():
    c = corpus.load("circle")
    an = analyze(c)
    assert an.crossings == [] and len(an.faces) == 2
    assert [f.winding for f in an.bounded_faces] == [1]
    assert tangent_winding(c) == 1


def test_circle_vertices_are_on_the_circle():
    for x, y in circle_polygon(64):
        assert x * x + y * y == 1


def test_circle_standard_area_approaches_pi():
    c = corpus.load("circle")
    prof = action_profile(c, "standard")
    assert prof.crossing_gaps == {}
    assert prof.enclosed_area == shoelace(c.vertices)
    assert abs(float(prof.enclosed_area) - float(mpmath.pi)) < 0.01


def test_windings_about_origin():
    cl = analyze(corpus.load("gamma_cl"))
    assert 1 in {f.winding for f in cl.bounded_faces if f.index == cl.origin_face}
    ch = analyze(corpus.load("gamma_ch"))
    assert ch.origin_face == ch.unbounded_face


@pytest.mark.parametrize("name", ["gamma_cl", "gamma_ch", "unknot1"])
def test_tangent_winding_zero_and_exact(name):
    c = corpus.load(name)
    assert tangent_winding(c) == 0
    assert action_profile(c, "standard").enclosed_area == 0


def test_embedded_lift_verdict():
    assert action_profile(corpus.load("gamma_cl"), "lefschetz").embedded_lift is True


def _quad(p, q):
    px, py, qx, qy = (float(v) for v in (*p, *q))

    def integrand(s):
        x, y = px + s * (qx - px), py + s * (qy - py)
        return (x * (qy - py) - y * (qx - px)) / (2 * mpmath.sqrt(x * x + y * y))

    return float(mpmath.quad(integrand, [0, 1]))


@pytest.mark.parametrize("name", ["gamma_cl", "unknot1", "circle"])
def test_lefschetz_segments_match_quadrature(name):
    c = corpus.load(name)
    for i in range(c.n):
        value, err = lefschetz_segment(*c.edge(i))
        assert err < 1e-6
        assert abs(value - _quad(*c.edge(i))) < 1e-6


@pytest.mark.parametrize("name", ["gamma_cl", "gamma_ch", "unknot1"])
def test_face_sums_match_primitives(name):
    c = corpus.load(name)
    an = analyze(c)
    assert sum((f.winding * f.area for f in an.bounded_faces), Fraction(0)) == shoelace(c.vertices)
    lef = action_profile(c, "lefschetz")
    faces = sum(f.winding * f.lefschetz_area for f in an.bounded_faces)
    assert abs(faces - lef.primitive_total) < 1e-6


BOWTIE = [(9, 9), (9, 11), (15, 7), (15, 13)]


@pytest.mark.parametrize("mirror", [False, True])
def test_loose_chart_small_and_large_loops(mirror):
    pts = [(-x, y) for x, y in BOWTIE] if mirror else BOWTIE
    c = _curve(pts, name="bowtie")
    an = analyze(c)
    faces = sorted(monogons(an, an.crossings[0]), key=lambda f: f.lefschetz_area)
    small = loose_chart_test(c, "a", faces[0].index)
    large = loose_chart_test(c, "a", faces[1].index)
    assert small.loose_candidate and small.area_a < small.area_b
    assert not large.loose_candidate
    assert small.face_b == faces[1].index


def test_loose_chart_gamma_cl_reports_positive_areas():
    c = corpus.load("gamma_cl")
    an = analyze(c)
    for f in monogons(an, an.crossings[0]):
        v = loose_chart_test(c, "a", f.index)
        assert v.area_a > 0 and v.area_b > 0


def test_no_teardrop_is_an_error():
    with pytest.raises(CurveError):
        loose_chart_test(corpus.load("gamma_ch"), "b")


def test_quotients():
    q, m = quotient_symmetric(corpus.load("gamma_cl_tilde"))
    assert len(analyze(q).crossings) == 1 and len(m.cone_markers) == 1
    q, m = quotient_symmetric(corpus.load("gamma_ch_tilde"))
    assert len(analyze(q).crossings) == 3 and len(m.cone_markers) == 2
    q, m = quotient_symmetric(corpus.load("circle"))
    assert analyze(q).crossings == [] and len(m.cone_markers) == 1


def test_quotient_matches_bundled_quotients():
    for name in corpus.TORI:
        q, _ = quotient_symmetric(corpus.load(name + "_tilde"))
        bundled = corpus.load(name)
        assert q.vertices == bundled.vertices
        assert q.cone_markers == bundled.cone_markers


def test_asymmetric_curve_rejected():
    c = _curve([(1, 1), (3, 1), (3, 3), (-1, -1), (-3, -1), (-2, -4)], cover="nontrivial")
    with pytest.raises(CurveError):
        quotient_symmetric(c)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_diagram_face_areas(seed):
    c = next(random_exact_curves(1, seed=seed))
    an = analyze(c)
    assert sum((f.winding * f.area for f in an.bounded_faces), Fraction(0)) == shoelace(c.vertices) == 0
    assert an.euler_characteristic() == 2
