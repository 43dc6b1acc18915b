"""Built-in chart manifolds"""

from typing import Callable, Dict

import numpy as np

from .geometry import ChartManifold

STEREO_RADIUS_MAX = 1e3


def conformal_christoffel(grad_phi: np.ndarray) -> np.ndarray:
    """
    Christoffel symbols of a conformally flat metric e^{2φ}·I:
    Γ^k_ij = δ^k_i ∂_jφ + δ^k_j ∂_iφ − δ_ij ∂_kφ.
    """
    m = grad_phi.shape[0]
    eye = np.eye(m)
    return (
        np.einsum("ki,j->kij", eye, grad_phi)
        + np.einsum("kj,i->kij", eye, grad_phi)
        - np.einsum("ij,k->kij", eye, grad_phi)
    )


def stereo_to_sphere(x: np.ndarray) -> np.ndarray:
    """Inverse stereographic projection from the north pole (0, 0, 1)"""
    x = np.asarray(x, dtype=float)
    r2 = float(x @ x)
    return np.array([2.0 * x[0], 2.0 * x[1], r2 - 1.0]) / (1.0 + r2)


def sphere_to_stereo(p: np.ndarray) -> np.ndarray:
    """Stereographic projection from the north pole"""
    p = np.asarray(p, dtype=float)
    return p[:2] / (1.0 - p[2])


def stereo_pushforward(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Ambient vector in R³ of the chart vector v at x"""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    denom = 1.0 + float(x @ x)
    jacobian = np.zeros((3, 2))
    jacobian[:2, :] = 2.0 * np.eye(2) / denom - 4.0 * np.outer(x, x) / denom ** 2
    jacobian[2, :] = 4.0 * x / denom ** 2
    return jacobian @ v


def stereo_pullback(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Chart coordinates of an ambient tangent vector w at stereo_to_sphere(x)"""
    x = np.asarray(x, dtype=float)
    denom = 1.0 + float(x @ x)
    # the Jacobian columns are orthogonal with length 2/denom
    jacobian = np.column_stack([stereo_pushforward(x, e) for e in np.eye(2)])
    return (denom / 2.0) ** 2 * (jacobian.T @ np.asarray(w, dtype=float))


def stereographic_sphere(substeps: int = 16) -> ChartManifold:
    """The unit sphere in the stereographic chart from the north pole"""

    def metric(x):
        return 4.0 / (1.0 + float(x @ x)) ** 2 * np.eye(2)

    def christoffel(x):
        return conformal_christoffel(-2.0 * x / (1.0 + float(x @ x)))

    return ChartManifold(
        2, metric, christoffel,
        domain=lambda x: float(x @ x) < STEREO_RADIUS_MAX ** 2,
        name="stereographic-sphere",
        substeps=substeps,
    )


def hyperbolic_halfplane(substeps: int = 16) -> ChartManifold:
    """The Poincaré upper half-plane, G = I/y²"""

    def metric(x):
        return np.eye(2) / x[1] ** 2

    def christoffel(x):
        return conformal_christoffel(np.array([0.0, -1.0 / x[1]]))

    return ChartManifold(
        2, metric, christoffel,
        domain=lambda x: x[1] > 0.0,
        name="hyperbolic-halfplane",
        substeps=substeps,
    )


def flat(dim: int, substeps: int = 16) -> ChartManifold:
    """R^dim with G = I and Γ = 0"""
    zero = np.zeros((dim, dim, dim))
    return ChartManifold(
        dim,
        lambda x: np.eye(dim),
        lambda x: zero,
        name=f"flat-{dim}",
        substeps=substeps,
    )


CHARTS: Dict[str, Callable[[int], ChartManifold]] = {
    "stereographic-sphere": stereographic_sphere,
    "hyperbolic-halfplane": hyperbolic_halfplane,
}


def get_chart(name: str, substeps: int = 16) -> ChartManifold:
    """
    Look up a built-in chart by name; "flat-<m>" gives flat R^m.

    Raises:
        ValueError: for unknown names
    """
    if name.startswith("flat-"):
        try:
            dim = int(name.split("-", 1)[1])
        except ValueError:
            raise ValueError(f"Chart {name} not found") from None
        return flat(dim, substeps)
    if name not in CHARTS:
        raise ValueError(f"Chart {name} not found")
    return CHARTS[name](substeps)


def list_charts():
    """Names of the built-in charts"""
    return sorted(CHARTS) + ["flat-<m>"]
