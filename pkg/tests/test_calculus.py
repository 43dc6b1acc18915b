import numpy as np
import pytest

from srvt.errors import DimensionMismatch
from srvt.models import BasedCurve, PExponent, SampledCurve, StepFunction
from srvt.services import CalculusService

from .conftest import random_polyline

calc = CalculusService()


def line(n, direction=(1.0, 0.0)):
    t = np.linspace(0.0, 1.0, n + 1)[:, None]
    return SampledCurve(t * np.asarray(direction))


def parabola(n=4):
    return SampledCurve(np.linspace(0.0, 1.0, n + 1) ** 2)


def test_derivative_of_line_is_constant():
    d = calc.derivative(line(4))
    np.testing.assert_allclose(d.values, np.tile([1.0, 0.0], (4, 1)))


def test_derivative_of_constant_is_zero():
    d = calc.derivative(SampledCurve(np.tile([3.0, -1.0], (9, 1))))
    assert d.n_intervals == 8
    assert np.all(d.values == 0.0)


def test_derivative_of_parabola_hits_midpoints():
    d = calc.derivative(parabola())
    np.testing.assert_allclose(d.values[:, 0], [0.25, 0.75, 1.25, 1.75], atol=1e-15)


def test_antiderivative_examples():
    const = calc.antiderivative(StepFunction(np.zeros((4, 2))), [1.0, 1.0])
    np.testing.assert_array_equal(const.values, np.ones((5, 2)))
    ramp = calc.antiderivative(StepFunction(np.tile([1.0, 0.0], (4, 1))), [0.0, 0.0])
    np.testing.assert_allclose(ramp.values, line(4).values, atol=1e-15)


def test_antiderivative_rejects_wrong_start():
    with pytest.raises(DimensionMismatch):
        calc.antiderivative(StepFunction(np.zeros((4, 2))), [0.0, 0.0, 0.0])


def test_exact_round_trips(rng):
    for dim in (1, 2, 3):
        f = StepFunction(rng.normal(size=(64, dim)))
        start = rng.normal(size=dim)
        back = calc.derivative(calc.antiderivative(f, start))
        np.testing.assert_allclose(back.values, f.values, atol=1e-12)

        c = random_polyline(rng, 64, dim)
        again = calc.antiderivative(calc.derivative(c), c.start)
        np.testing.assert_allclose(again.values, c.values, atol=1e-12)


def test_lp_norm_examples():
    assert calc.lp_norm(StepFunction(np.tile([2.0, 0.0], (8, 1))), 2) == pytest.approx(2.0)
    assert calc.lp_norm(StepFunction(np.zeros((5, 3))), 2) == 0.0
    assert calc.lp_norm(StepFunction([1.0, 3.0]), 2) == pytest.approx(np.sqrt(5.0))


def test_lp_norm_general_exponent_matches_formula(rng):
    f = StepFunction(rng.normal(size=(32, 2)))
    norms = np.linalg.norm(f.values, axis=1)
    for p in (1.0, 1.5, 3.0, 7.0):
        expected = np.mean(norms ** p) ** (1.0 / p)
        assert calc.lp_norm(f, p) == pytest.approx(expected, rel=1e-12)


def test_norms_of_extreme_values():
    f = StepFunction([[3e200, 4e200], [3e-200, 4e-200], [0.0, 0.0]])
    np.testing.assert_allclose(calc.pointwise_norms(f), [5e200, 5e-200, 0.0], rtol=1e-15)
    assert calc.lp_norm(StepFunction([[3e200, 4e200]]), 2) == pytest.approx(5e200, rel=1e-15)
    assert calc.lp_norm(StepFunction([[3e-200, 4e-200]] * 4), 2) == pytest.approx(5e-200, rel=1e-15)
    assert calc.sup_norm(SampledCurve([[0.0, 0.0], [3e200, 4e200]])) == pytest.approx(5e200, rel=1e-15)


def test_norms_are_homogeneous_and_subadditive(rng):
    for _ in range(20):
        f = StepFunction(rng.normal(size=(32, 3)))
        g = StepFunction(rng.normal(size=(32, 3)) * float(rng.uniform(0.1, 10.0)))
        a, c = random_polyline(rng, 32, 3), random_polyline(rng, 32, 3)
        lam = float(rng.uniform(-5.0, 5.0))
        for p in (1, 1.5, 2, 4):
            assert calc.lp_norm(f * lam, p) == pytest.approx(abs(lam) * calc.lp_norm(f, p), rel=1e-12)
            assert calc.lp_norm(f + g, p) <= calc.lp_norm(f, p) + calc.lp_norm(g, p) + 1e-12

            scaled = SampledCurve(lam * a.values)
            assert calc.ac_norm(scaled, p) == pytest.approx(abs(lam) * calc.ac_norm(a, p), rel=1e-12)
            total = SampledCurve(a.values + c.values)
            assert calc.ac_norm(total, p) <= calc.ac_norm(a, p) + calc.ac_norm(c, p) + 1e-12


def test_lp_norm_with_weights():
    f = StepFunction([[1.0], [1.0]])
    assert calc.lp_norm(f, 2, weights=[2.0, 2.0]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        calc.lp_norm(f, 2, weights=[1.0, -1.0])
    with pytest.raises(DimensionMismatch):
        calc.lp_norm(f, 2, weights=[1.0])


def test_exponent_below_one_rejected():
    with pytest.raises(ValueError):
        PExponent(0.5)
    with pytest.raises(ValueError):
        calc.lp_norm(StepFunction([1.0]), 0.9)


def test_ac_norm_examples():
    assert calc.ac_norm(line(8), 1) == pytest.approx(1.0)
    for p in (1, 2, 4):
        assert calc.ac_norm(SampledCurve(np.tile([3.0, 4.0], (5, 1))), p) == pytest.approx(5.0)
    # (0.25² + 0.75² + 1.25² + 1.75²) / 4 = 1.3125
    assert calc.ac_norm(parabola(), 2) == pytest.approx(np.sqrt(1.3125))


def test_sup_norm_bound(rng):
    assert calc.sup_norm(line(4)) == pytest.approx(1.0)
    assert calc.sup_norm(SampledCurve(np.zeros((3, 2)))) == 0.0
    assert calc.sup_norm(parabola()) == pytest.approx(1.0)
    assert calc.sup_norm(parabola()) <= calc.ac_norm(parabola(), 1) + 1e-15
    for _ in range(20):
        c = random_polyline(rng, 32, 3)
        first = np.linalg.norm(c.start) + calc.lp_norm(calc.derivative(c), 1)
        assert calc.sup_norm(c) <= first + 1e-12
        for p in (1, 2, 3):
            assert calc.sup_norm(c) <= calc.ac_norm(c, p) + 1e-12


def test_resample_examples():
    np.testing.assert_allclose(calc.resample(line(4), [0.5]), [[0.5, 0.0]])
    c = parabola()
    np.testing.assert_array_equal(calc.resample(c, c.times), c.values)
    assert calc.resample(c, [0.125])[0, 0] == pytest.approx(0.03125)
    with pytest.raises(ValueError):
        calc.resample(c, [1.5])


def test_l2_inner_matches_norm(rng):
    f = StepFunction(rng.normal(size=(16, 2)))
    assert calc.l2_inner(f, f) == pytest.approx(calc.lp_norm(f, 2) ** 2)


def test_harmonize_uses_finer_grid():
    a, c = calc.harmonize_curves(line(4), line(8, (0.0, 1.0)))
    assert a.n_intervals == c.n_intervals == 8
    with pytest.raises(DimensionMismatch):
        calc.harmonize_curves(line(4), SampledCurve(np.zeros((5, 3))))


def test_curve_models_validate():
    with pytest.raises(ValueError):
        SampledCurve([[0.0, 0.0]])
    with pytest.raises(ValueError):
        SampledCurve([[0.0, np.nan], [1.0, 1.0]])
    with pytest.raises(ValueError):
        BasedCurve([[1.0, 0.0], [2.0, 0.0]])
    based = BasedCurve.from_curve(SampledCurve([[1.0, 2.0], [3.0, 4.0]]))
    np.testing.assert_array_equal(based.start, [0.0, 0.0])
    with pytest.raises(ValueError):
        StepFunction(np.zeros((2, 2))) + StepFunction(np.zeros((3, 2)))
    with pytest.raises(ValueError):
        StepFunction(np.zeros((0, 2)))
    with pytest.raises(ValueError):
        StepFunction([])
