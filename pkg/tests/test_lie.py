import numpy as np
import pytest

from srvt.config import SRVTConfig
from srvt.errors import AngleNearPi, GroupKindMismatch
from srvt.models import (
    AlgebraElement,
    AlgebraStepFunction,
    GroupCurve,
    GroupElement,
    GroupKind,
    SampledCurve,
)
from srvt.services import EuclideanSRVTService, LieSRVTService
from srvt.utils.liealg import (
    matrices_to_quaternions,
    quaternions_to_matrices,
    se3_exp,
    so3_exp,
)

from .conftest import random_group_curve, random_group_element

SO3, SE3 = GroupKind.SO3, GroupKind.SE3
so3 = LieSRVTService(SO3)
se3 = LieSRVTService(SE3)


def one_parameter(kind, xi, n):
    t = np.linspace(0.0, 1.0, n + 1)[:, None]
    coords = t * np.asarray(xi, dtype=float)
    return GroupCurve(so3_exp(coords) if kind is SO3 else se3_exp(coords), kind)


def frob(a, b):
    return np.linalg.norm(a - b, axis=(-2, -1))


def test_exp_examples():
    assert np.array_equal(so3.group_exp(AlgebraElement(np.zeros(3), SO3)).matrix, np.eye(3))
    quarter = so3.group_exp(AlgebraElement([0.0, 0.0, np.pi / 2], SO3)).matrix
    np.testing.assert_allclose(quarter, [[0, -1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)
    xi = AlgebraElement([0.3, -0.2, 0.9], SO3)
    twice = so3.group_exp(xi) @ so3.group_exp(xi)
    assert frob(twice.matrix, so3.group_exp(xi, 2.0).matrix) <= 1e-12


def test_log_examples(rng):
    assert np.array_equal(so3.group_log(GroupElement.identity(SO3)).coords, np.zeros(3))
    quarter = GroupElement([[0, -1, 0], [1, 0, 0], [0, 0, 1]], SO3)
    np.testing.assert_allclose(so3.group_log(quarter).coords, [0, 0, np.pi / 2], atol=1e-15)
    for _ in range(100):
        coords = rng.normal(size=3)
        coords *= rng.uniform(0.0, 3.0) / np.linalg.norm(coords)
        back = so3.group_log(so3.group_exp(AlgebraElement(coords, SO3)))
        np.testing.assert_allclose(back.coords, coords, atol=1e-9)


def test_exp_log_small_angles_use_series():
    for theta in (0.0, 1e-9, 1e-5, 9e-4, 1.1e-3):
        coords = np.array([theta, 0.0, 0.0, 0.1, -0.2, 0.3])
        g = se3.group_exp(AlgebraElement(coords, SE3))
        np.testing.assert_allclose(se3.group_log(g).coords, coords, atol=1e-13)


def test_se3_log_round_trip(rng):
    for _ in range(50):
        coords = np.concatenate((rng.uniform(-1.5, 1.5, 3), rng.normal(size=3)))
        g = se3.group_exp(AlgebraElement(coords, SE3))
        assert frob(se3.group_exp(se3.group_log(g)).matrix, g.matrix) <= 1e-10


def test_log_refuses_angles_near_pi():
    half_turn = so3_exp([[0.0, 0.0, np.pi - 1e-8]])[0]
    with pytest.raises(AngleNearPi):
        so3.group_log(GroupElement(half_turn, SO3))
    relaxed = LieSRVTService(SO3, SRVTConfig(tol_branch=1e-9))
    assert relaxed.group_log(GroupElement(half_turn, SO3)).coords[2] == pytest.approx(np.pi - 1e-8)


def test_right_log_derivative_examples():
    g = random_group_element(np.random.default_rng(1))
    constant = GroupCurve(np.repeat(g[None], 9, axis=0), SO3)
    assert np.all(so3.right_log_derivative(constant).values == 0.0)
    xi = np.array([0.4, -1.1, 0.7])
    derived = so3.right_log_derivative(one_parameter(SO3, xi, 16))
    np.testing.assert_allclose(derived.values, np.tile(xi, (16, 1)), atol=1e-12)


def test_right_log_derivative_of_product_flow():
    # γ(t) = exp(tξ)·exp(tη) has γ̇γ⁻¹ = ξ + exp(tξ)·η; forward differences hit midpoints
    xi, eta = np.array([0.9, -0.4, 0.3]), np.array([-0.2, 0.8, 0.6])
    errors = []
    for n in (32, 64, 128):
        t = np.linspace(0.0, 1.0, n + 1)[:, None]
        curve = GroupCurve(so3_exp(t * xi) @ so3_exp(t * eta), SO3)
        mid = (np.arange(n) + 0.5)[:, None] / n
        exact = xi + np.einsum("kij,j->ki", so3_exp(mid * xi), eta)
        errors.append(np.max(np.abs(so3.right_log_derivative(curve).values - exact)))
    assert errors[-1] <= 1e-3
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.5 <= coarse / fine <= 4.5


def test_right_log_derivative_names_bad_subinterval():
    matrices = so3_exp([[0, 0, 0], [0, 0, 1.0], [0, 0, 1.0 + np.pi - 1e-8]])
    with pytest.raises(AngleNearPi) as info:
        so3.right_log_derivative(GroupCurve(matrices, SO3))
    assert info.value.index == 1


def test_evolve_examples():
    g0 = GroupElement(random_group_element(np.random.default_rng(2)), SO3)
    still = so3.evolve(AlgebraStepFunction(np.zeros((8, 3)), SO3), g0)
    assert np.all(frob(still.matrices, g0.matrix) <= 1e-15)
    xi = np.array([0.2, 0.5, -0.3])
    flow = so3.evolve(AlgebraStepFunction(np.tile(xi, (16, 1)), SO3), GroupElement.identity(SO3))
    assert np.all(frob(flow.matrices, one_parameter(SO3, xi, 16).matrices) <= 1e-13)


@pytest.mark.parametrize("kind", [SO3, SE3])
def test_exact_discrete_inverse_pair(rng, kind):
    service = LieSRVTService(kind)
    for _ in range(25):
        curve = random_group_curve(rng, kind, 256)
        back = service.evolve(service.right_log_derivative(curve), curve.start)
        assert np.max(frob(back.matrices, curve.matrices)) <= 1e-12

        xi = service.right_log_derivative(curve)
        again = service.right_log_derivative(service.evolve(xi, curve.start))
        np.testing.assert_allclose(again.values, xi.values, atol=1e-12 * 256)


@pytest.mark.parametrize("kind", [SO3, SE3])
def test_srvt_round_trips(rng, kind):
    service = LieSRVTService(kind)
    for _ in range(10):
        curve = random_group_curve(rng, kind, 256)
        back = service.srvt_lie_inverse(service.srvt_lie(curve), curve.start)
        assert np.max(frob(back.matrices, curve.matrices)) <= 1e-10

        q = AlgebraStepFunction(rng.uniform(-1.0, 1.0, size=(256, kind.algebra_dim)), kind)
        again = service.srvt_lie(service.srvt_lie_inverse(q, curve.start))
        np.testing.assert_allclose(again.values, q.values, atol=1e-10)


def test_srvt_lie_examples():
    g = GroupCurve(np.repeat(np.eye(3)[None], 5, axis=0), SO3)
    assert np.all(so3.srvt_lie(g).values == 0.0)
    xi = np.array([0.0, 4.0, 0.0])
    q = so3.srvt_lie(one_parameter(SO3, xi, 32))
    np.testing.assert_allclose(q.values, np.tile(xi / 2.0, (32, 1)), atol=1e-12)
    back = so3.srvt_lie_inverse(AlgebraStepFunction(np.zeros((4, 3)), SO3), GroupElement.identity(SO3))
    assert np.all(back.matrices == np.eye(3))


def test_screw_motion_round_trip():
    curve = one_parameter(SE3, [0.3, 0.1, 1.2, 0.5, -0.4, 2.0], 64)
    back = se3.srvt_lie_inverse(se3.srvt_lie(curve), curve.start)
    assert np.max(frob(back.matrices, curve.matrices)) <= 1e-10


def test_distance_of_one_parameter_subgroups():
    xi, eta = np.array([1.0, 2.0, 0.5]), np.array([-0.3, 0.0, 2.0])
    expected = np.linalg.norm(xi / np.sqrt(np.linalg.norm(xi)) - eta / np.sqrt(np.linalg.norm(eta)))
    distance = so3.lie_distance(one_parameter(SO3, xi, 32), one_parameter(SO3, eta, 32))
    assert distance == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("kind", [SO3, SE3])
def test_right_invariance(rng, kind):
    service = LieSRVTService(kind)
    for _ in range(20):
        c1, c2 = random_group_curve(rng, kind, 64), random_group_curve(rng, kind, 64)
        g = GroupElement(random_group_element(rng, kind), kind)
        assert service.lie_distance(c1 * g, c2 * g) == pytest.approx(
            service.lie_distance(c1, c2), abs=1e-12
        )


def test_metric_axioms(rng):
    for _ in range(100):
        a, b, c = (random_group_curve(rng, SO3, 16) for _ in range(3))
        ab, bc, ac = so3.lie_distance(a, b), so3.lie_distance(b, c), so3.lie_distance(a, c)
        assert ab == pytest.approx(so3.lie_distance(b, a), abs=1e-12)
        assert ac <= ab + bc + 1e-10


def test_translations_reduce_to_euclidean(rng):
    euclid = EuclideanSRVTService()
    for _ in range(10):
        paths = [np.cumsum(rng.normal(size=(33, 3)) / 6.0, axis=0) for _ in range(2)]
        curves = []
        for path in paths:
            matrices = np.repeat(np.eye(4)[None], 33, axis=0)
            matrices[:, :3, 3] = path
            curves.append(GroupCurve(matrices, SE3))
        expected = euclid.distance(SampledCurve(paths[0]), SampledCurve(paths[1]))
        assert se3.lie_distance(*curves) == pytest.approx(expected, abs=1e-10)


def test_distance_with_basepoint(rng):
    curve = random_group_curve(rng, SO3, 16)
    g = GroupElement(so3_exp([[0.0, 0.0, 0.5]])[0], SO3)
    moved = g * curve
    assert so3.start_distance(curve.start, moved.start) == pytest.approx(0.5, abs=1e-12)
    assert so3.lie_distance_with_basepoint(curve, curve) == pytest.approx(0.0, abs=1e-12)


def test_kind_mismatch():
    with pytest.raises(GroupKindMismatch):
        so3.lie_distance(
            GroupCurve(np.repeat(np.eye(3)[None], 3, axis=0), SO3),
            GroupCurve(np.repeat(np.eye(4)[None], 3, axis=0), SE3),
        )


def test_pointwise_group_structure(rng):
    a, b, c = (random_group_curve(rng, SE3, 16) for _ in range(3))
    left = (a * b) * c
    right = a * (b * c)
    assert np.max(frob(left.matrices, right.matrices)) <= 1e-12
    identity = a * a.inverse()
    assert np.max(frob(identity.matrices, np.eye(4))) <= 1e-12


def test_group_models_validate():
    with pytest.raises(ValueError):
        GroupElement(np.diag([1.0, 1.0, -1.0]), SO3)
    with pytest.raises(ValueError):
        GroupElement(2.0 * np.eye(3), SO3)
    bad = np.eye(4)
    bad[3, 0] = 1.0
    with pytest.raises(ValueError):
        GroupElement(bad, SE3)
    with pytest.raises(ValueError):
        AlgebraStepFunction(np.zeros((4, 3)), SE3)


def test_resample_is_exact_on_grid(rng):
    curve = random_group_curve(rng, SO3, 16)
    np.testing.assert_allclose(so3.resample(curve, np.linspace(0, 1, 17)), curve.matrices, atol=1e-14)
    finer = so3.resample_curve(curve, 64)
    assert finer.n_intervals == 64
    assert frob(finer.matrices[4], curve.matrices[1]) <= 1e-14


def test_geodesic_endpoints(rng):
    c1, c2 = random_group_curve(rng, SE3, 32), random_group_curve(rng, SE3, 32)
    path = se3.geodesic(c1, c2, 3)
    assert len(path) == 4
    assert path[0] is c1 and path[-1] is c2
    q1, q2 = se3.srvt_lie(c1), se3.srvt_lie(c2)
    np.testing.assert_allclose(se3.srvt_lie(path[1]).values, (2 * q1.values + q2.values) / 3, atol=1e-10)


def test_quaternion_conversion(rng):
    quats = rng.normal(size=(20, 4))
    quats /= np.linalg.norm(quats, axis=1)[:, None]
    quats *= np.sign(quats[:, :1])
    back = matrices_to_quaternions(quaternions_to_matrices(quats))
    np.testing.assert_allclose(back, quats, atol=1e-12)
    np.testing.assert_allclose(quaternions_to_matrices([1.0, 0.0, 0.0, 0.0])[0], np.eye(3))
