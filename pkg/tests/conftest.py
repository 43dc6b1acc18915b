"""Shared fixtures for the SRVT test suite"""

import numpy as np
import pytest

from srvt.models import GroupCurve, GroupKind, SampledCurve
from srvt.services import Sphere2
from srvt.utils.liealg import se3_exp, so3_exp


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_polyline(rng, n_intervals=256, dim=2, scale=1.0):
    """Random piecewise-linear curve with bounded steps"""
    steps = rng.normal(scale=scale / np.sqrt(n_intervals), size=(n_intervals, dim))
    start = rng.normal(size=dim)
    return SampledCurve(np.vstack((start, start + np.cumsum(steps, axis=0))))


def smooth_algebra_path(rng, kind, n_intervals=256):
    """Coordinates a·t + b·sin(πt) + c·t², small enough for per-step angles < π/2"""
    t = np.linspace(0.0, 1.0, n_intervals + 1)[:, None]
    a, b, c = rng.uniform(-1.5, 1.5, size=(3, kind.algebra_dim))
    return a * t + b * np.sin(np.pi * t) + c * t * t


def random_group_curve(rng, kind=GroupKind.SO3, n_intervals=256):
    coords = smooth_algebra_path(rng, kind, n_intervals)
    matrices = so3_exp(coords) if kind is GroupKind.SO3 else se3_exp(coords)
    return GroupCurve(matrices, kind)


def random_group_element(rng, kind=GroupKind.SO3):
    coords = rng.uniform(-1.0, 1.0, size=(1, kind.algebra_dim))
    return (so3_exp(coords) if kind is GroupKind.SO3 else se3_exp(coords))[0]


SOUTH_POLE = np.array([0.0, 0.0, -1.0])
NORTH_POLE = np.array([0.0, 0.0, 1.0])


def hemisphere_curve(rng, n_intervals):
    """
    Smooth curve near the south pole as a chart function t ↦ normalize(f(t)),
    with its exact velocity. Returns (points, velocities).
    """
    radius = rng.uniform(0.1, 0.25)
    omega = rng.uniform(1.0, 1.5)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    drift = rng.uniform(-0.2, 0.2, size=2)
    return sphere_curve_from(radius, omega, phase, drift, n_intervals)


def sphere_curve_from(radius, omega, phase, drift, n_intervals):
    t = np.linspace(0.0, 1.0, n_intervals + 1)
    f = np.column_stack((
        radius * np.cos(omega * t + phase) + drift[0] * t,
        radius * np.sin(omega * t + phase) + drift[1] * t,
        -np.ones_like(t),
    ))
    df = np.column_stack((
        -radius * omega * np.sin(omega * t + phase) + drift[0],
        radius * omega * np.cos(omega * t + phase) + drift[1],
        np.zeros_like(t),
    ))
    norms = np.linalg.norm(f, axis=1)
    points = f / norms[:, None]
    radial = np.sum(points * df, axis=1)
    velocities = (df - radial[:, None] * points) / norms[:, None]
    return points, velocities


@pytest.fixture
def sphere():
    return Sphere2()
