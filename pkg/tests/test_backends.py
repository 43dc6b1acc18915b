import numpy as np
import pytest
from rich.console import Console

from srvt.config import SRVTConfig, parse_slopes
from srvt.errors import CutLocusViolation
from srvt.models import CurveKind, GroupKind, KindSelector, ManifoldCurve, SampledCurve
from srvt.services import (
    DistanceMatrixService,
    Metric,
    Sphere2,
    VisualizationService,
    create_backend,
    get_chart,
)
from srvt.services.backends import EuclideanBackend, LieBackend, ManifoldCurveBackend
from srvt.ui import Report
from srvt.utils.formatting import format_distance, format_row

from .conftest import NORTH_POLE, random_group_curve, random_polyline

CONFIG = SRVTConfig()


def test_create_backend():
    assert isinstance(create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG), EuclideanBackend)
    lie = create_backend(KindSelector(CurveKind.SE3), CONFIG)
    assert isinstance(lie, LieBackend) and lie.service.kind is GroupKind.SE3
    sphere = create_backend(KindSelector(CurveKind.SPHERE2), CONFIG, Sphere2(), NORTH_POLE)
    assert isinstance(sphere, ManifoldCurveBackend)
    with pytest.raises(ValueError):
        create_backend(KindSelector(CurveKind.SPHERE2), CONFIG, Sphere2())


def test_metrics_are_ordered(rng):
    backend = create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG)
    a, c = random_polyline(rng, 32), random_polyline(rng, 64)
    plain = backend.distance(a, c, Metric.PLAIN)
    based = backend.distance(a, c, Metric.BASED)
    shape = backend.distance(a, c, Metric.SHAPE)
    assert based == pytest.approx(plain + np.linalg.norm(a.start - c.start), abs=1e-12)
    assert shape <= plain + 1e-12


def test_align_lie_curves(rng):
    backend = create_backend(KindSelector(CurveKind.SO3), CONFIG)
    a = random_group_curve(rng, GroupKind.SO3, 32)
    result = backend.align(a, a)
    assert result.aligned == 0.0 and result.unaligned == 0.0
    np.testing.assert_allclose(result.warped.matrices, a.matrices, atol=1e-12)


def test_align_sphere_curves(rng):
    sphere = Sphere2()
    backend = create_backend(KindSelector(CurveKind.SPHERE2), CONFIG, sphere, NORTH_POLE)
    t = np.linspace(0.0, 1.0, 33)[:, None]
    a = ManifoldCurve(np.hstack((0.3 * np.cos(t), 0.3 * np.sin(t), np.full_like(t, 1.0)))
                      / np.sqrt(1.09), sphere)
    result = backend.align(a, a)
    assert result.aligned <= result.unaligned == 0.0
    assert isinstance(result.warped, ManifoldCurve)


def test_chart_backend_matches_euclidean(rng):
    flat = create_backend(KindSelector(CurveKind.CHART, "flat-2"), CONFIG, get_chart("flat-2"), np.zeros(2))
    euclid = create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG)
    a, c = random_polyline(rng, 16), random_polyline(rng, 16)
    ma, mc = (ManifoldCurve(x.values, flat.service.spec) for x in (a, c))
    assert flat.distance(ma, mc, Metric.PLAIN) == pytest.approx(euclid.distance(a, c, Metric.PLAIN), abs=1e-12)


class TestDistanceMatrix:

    def test_symmetric_with_zero_diagonal(self, rng):
        backend = create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG)
        curves = [random_polyline(rng, 16) for _ in range(4)]
        result = DistanceMatrixService(backend, workers=3).compute("abcd", curves)
        assert result.ok
        assert np.array_equal(result.values, result.values.T)
        assert np.all(np.diag(result.values) == 0.0)
        assert result.values[1, 3] == backend.distance(curves[1], curves[3])
        lines = result.to_csv().splitlines()
        assert lines[0] == "a,b,c,d" and len(lines) == 5

    def test_failures_are_collected(self):
        sphere = Sphere2()
        backend = create_backend(KindSelector(CurveKind.SPHERE2), CONFIG, sphere, NORTH_POLE)
        good = ManifoldCurve([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], sphere)
        bad = ManifoldCurve([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0]], sphere)
        result = DistanceMatrixService(backend).compute(["good", "bad", "other"], [good, bad, good])
        assert not result.ok
        assert [(f.first, f.second) for f in result.failures] == [("good", "bad"), ("bad", "other")]
        assert all(isinstance(f.error, CutLocusViolation) for f in result.failures)
        assert np.isnan(result.values[0, 1]) and result.values[0, 2] == 0.0

    def test_arguments_checked(self):
        backend = create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG)
        with pytest.raises(ValueError):
            DistanceMatrixService(backend, workers=0)
        with pytest.raises(ValueError):
            DistanceMatrixService(backend).compute(["a"], [SampledCurve([[0.0], [1.0]])])


def test_formatting():
    assert format_distance(0.0) == "0.000000000000"
    assert format_distance(2.0 * np.sqrt(2.0)) == "2.82842712475"
    assert format_distance(1e-20) == "1e-20"
    assert format_row([0.0, 0.5]) == "0.000000000000,0.5"


def test_parse_slopes():
    assert parse_slopes("2, 1/2, 1,") == (0.5, 1, 2)
    assert parse_slopes("0.5,1") == (0.5, 1)
    for text in ("1/2,2", "0,1", "-1,1"):
        with pytest.raises(ValueError):
            parse_slopes(text)


def test_report_and_charts(rng):
    backend = create_backend(KindSelector(CurveKind.EUCLIDEAN), CONFIG)
    curves = [random_polyline(rng, 8) for _ in range(2)]
    matrix = DistanceMatrixService(backend).compute(["a.json", "b.json"], curves)
    result = backend.align(*curves)

    console = Console(record=True, width=120)
    report = Report(console)
    report.matrix_table(matrix)
    report.alignment_summary(result)
    report.error(ValueError("broken"))
    text = console.export_text()
    assert "a.json" in text and "Alignment" in text and "broken" in text

    heatmap = VisualizationService.matrix_chart(matrix)
    assert heatmap["labels"] == ["a.json", "b.json"] and heatmap["data"][0][0] == 0.0
    warp = VisualizationService.warp_chart(result.phi, result)
    assert warp["metadata"]["aligned"] == result.aligned
    selector = KindSelector(CurveKind.SO3)
    rotations = random_group_curve(rng, GroupKind.SO3, 4)
    points = VisualizationService.ambient_points(rotations, selector)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)
