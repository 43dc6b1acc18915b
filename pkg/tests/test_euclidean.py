import time

import numpy as np
import pytest

from srvt.errors import DimensionMismatch
from srvt.models import BasedCurve, SampledCurve, StepFunction
from srvt.services import EuclideanSRVTService

from .conftest import random_polyline

euclid = EuclideanSRVTService()


def line(n, velocity):
    t = np.linspace(0.0, 1.0, n + 1)[:, None]
    return SampledCurve(t * np.asarray(velocity, dtype=float))


def test_srvt_examples():
    np.testing.assert_allclose(euclid.srvt(line(8, (4.0, 0.0))).values, np.tile([2.0, 0.0], (8, 1)))
    assert np.all(euclid.srvt(SampledCurve(np.ones((5, 2)))).values == 0.0)
    q = euclid.srvt(SampledCurve(np.linspace(0.0, 1.0, 5) ** 2))
    np.testing.assert_allclose(q.values[:, 0], np.sqrt([0.25, 0.75, 1.25, 1.75]), rtol=1e-14)


def test_srvt_inverse_examples():
    c = euclid.srvt_inverse(StepFunction(np.tile([2.0, 0.0], (8, 1))), [0.0, 0.0])
    np.testing.assert_allclose(c.values, line(8, (4.0, 0.0)).values, atol=1e-14)
    const = euclid.srvt_inverse(StepFunction(np.zeros((4, 2))), [1.0, 2.0])
    np.testing.assert_array_equal(const.values, np.tile([1.0, 2.0], (5, 1)))
    with pytest.raises(DimensionMismatch):
        euclid.srvt_inverse(StepFunction(np.zeros((4, 2))), [1.0])


def test_bijection_on_random_polylines(rng):
    for dim in (2, 3):
        for _ in range(25):
            c = random_polyline(rng, 256, dim)
            started = time.perf_counter()
            back = euclid.srvt_inverse(euclid.srvt(c), c.start)
            elapsed = time.perf_counter() - started
            assert np.max(np.abs(back.values - c.values)) <= 1e-9
            assert elapsed < 0.01


def test_straight_line_distance():
    a, c = line(16, (4.0, 0.0)), line(16, (0.0, 4.0))
    assert euclid.distance(a, c) == pytest.approx(np.sqrt(8.0), rel=1e-14)
    assert euclid.distance(a, a) == 0.0


def test_distance_is_pseudo_metric(rng):
    for _ in range(100):
        a, b, c = (random_polyline(rng, 32, 2) for _ in range(3))
        ab, bc, ac = euclid.distance(a, b), euclid.distance(b, c), euclid.distance(a, c)
        assert ab == pytest.approx(euclid.distance(b, a), abs=1e-12)
        assert ac <= ab + bc + 1e-10


def test_translation_and_rotation_invariance(rng):
    angle = 0.7
    rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    for _ in range(20):
        a, c = random_polyline(rng, 32, 2), random_polyline(rng, 32, 2)
        shift = rng.normal(size=2)
        assert euclid.distance(a.translated(shift), c.translated(shift)) == pytest.approx(
            euclid.distance(a, c), abs=1e-12
        )
        assert euclid.distance_with_basepoint(a.translated(shift), c.translated(shift)) == pytest.approx(
            euclid.distance_with_basepoint(a, c), abs=1e-12
        )
        assert euclid.distance(a.transformed(rotation), c.transformed(rotation)) == pytest.approx(
            euclid.distance(a, c), abs=1e-10
        )


def test_distance_of_huge_curves():
    a, c = line(8, (1e160, 0.0)), line(8, (0.0, 1e160))
    assert euclid.distance(a, c) == pytest.approx(np.sqrt(2.0) * 1e80, rel=1e-12)
    assert euclid.distance(a, a) == 0.0


def test_distance_with_basepoint():
    a = line(4, (1.0, 0.0))
    c = a.translated([3.0, 4.0])
    assert euclid.distance_with_basepoint(a, c) == pytest.approx(5.0)
    with pytest.raises(DimensionMismatch):
        euclid.distance_with_basepoint(a, SampledCurve(np.zeros((5, 3))))


def test_distance_harmonizes_grids():
    a, c = line(4, (4.0, 0.0)), line(8, (0.0, 4.0))
    assert euclid.distance(a, c) == pytest.approx(np.sqrt(8.0))


def test_geodesic_of_curve_with_itself(rng):
    c = random_polyline(rng, 32, 2)
    path = euclid.geodesic(c, c, 4)
    assert len(path) == 5
    for curve in path:
        np.testing.assert_allclose(curve.values, c.values, atol=1e-12)


def test_geodesic_midpoint_of_straight_lines():
    a, c = line(8, (4.0, 0.0)), line(8, (0.0, 4.0))
    path = euclid.geodesic(a, c, 2)
    expected = line(8, (np.sqrt(2.0), np.sqrt(2.0)))
    np.testing.assert_allclose(path[1].values, expected.values, atol=1e-14)
    assert path[0] is a and path[2] is c
    with pytest.raises(ValueError):
        euclid.geodesic(a, c, 0)


def test_midpoint_halves_distance_for_based_curves(rng):
    for _ in range(10):
        a = BasedCurve.from_curve(random_polyline(rng, 64, 3))
        c = BasedCurve.from_curve(random_polyline(rng, 64, 3))
        middle = euclid.geodesic(a, c, 2)[1]
        total = euclid.distance(a, c)
        assert euclid.distance(a, middle) == pytest.approx(total / 2, abs=1e-9)
        assert euclid.distance(middle, c) == pytest.approx(total / 2, abs=1e-9)
