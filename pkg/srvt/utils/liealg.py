"""Closed-form matrix exponential and logarithm for SO(3) and SE(3)

All functions work on stacks: algebra coordinates of shape (k, 3) or (k, 6),
matrices of shape (k, n, n).
"""

import numpy as np
from scipy.spatial.transform import Rotation

from ..errors import AngleNearPi

SERIES_THRESHOLD = 1e-3


def so3_hat(omega: np.ndarray) -> np.ndarray:
    """Skew-symmetric matrices W with W·x = ω × x"""
    omega = np.asarray(omega, dtype=float)
    hat = np.zeros(omega.shape[:-1] + (3, 3))
    x, y, z = omega[..., 0], omega[..., 1], omega[..., 2]
    hat[..., 0, 1], hat[..., 0, 2] = -z, y
    hat[..., 1, 0], hat[..., 1, 2] = z, -x
    hat[..., 2, 0], hat[..., 2, 1] = -y, x
    return hat


def so3_vee(hat: np.ndarray) -> np.ndarray:
    """Inverse of so3_hat, reading the antisymmetric part"""
    return 0.5 * np.stack(
        (hat[..., 2, 1] - hat[..., 1, 2],
         hat[..., 0, 2] - hat[..., 2, 0],
         hat[..., 1, 0] - hat[..., 0, 1]),
        axis=-1,
    )


def _coefficients(theta: np.ndarray):
    """
    Rodrigues coefficients A = sin θ/θ, B = (1 − cos θ)/θ², C = (θ − sin θ)/θ³,
    with Taylor series near zero.
    """
    small = theta < SERIES_THRESHOLD
    safe = np.where(small, 1.0, theta)
    t2 = theta * theta
    half_sin = np.sin(safe / 2.0)
    a = np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0, np.sin(safe) / safe)
    b = np.where(small, 0.5 - t2 / 24.0 + t2 * t2 / 720.0, 2.0 * half_sin * half_sin / (safe * safe))
    c = np.where(small, 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0, (safe - np.sin(safe)) / safe ** 3)
    return a, b, c


def so3_exp(omega: np.ndarray) -> np.ndarray:
    """Rodrigues formula exp(ω̂) = I + A·W + B·W²"""
    omega = np.atleast_2d(np.asarray(omega, dtype=float))
    theta = np.linalg.norm(omega, axis=1)
    a, b, _ = _coefficients(theta)
    hat = so3_hat(omega)
    hat2 = hat @ hat
    return np.eye(3) + a[:, None, None] * hat + b[:, None, None] * hat2


def rotation_angles(rotations: np.ndarray) -> np.ndarray:
    """Rotation angles in [0, π] via atan2 of the antisymmetric and trace parts"""
    w = so3_vee(rotations)
    sin_theta = np.linalg.norm(w, axis=1)
    cos_theta = 0.5 * (np.trace(rotations, axis1=1, axis2=2) - 1.0)
    return np.arctan2(sin_theta, cos_theta)


def so3_log(rotations: np.ndarray, tol_branch: float = 1e-6) -> np.ndarray:
    """
    Principal logarithm of a stack of rotations.

    Raises:
        AngleNearPi: if an angle exceeds π − tol_branch (index of the first offender)
    """
    rotations = np.asarray(rotations, dtype=float).reshape(-1, 3, 3)
    w = so3_vee(rotations)
    sin_theta = np.linalg.norm(w, axis=1)
    theta = rotation_angles(rotations)
    bad = np.flatnonzero(theta > np.pi - tol_branch)
    if bad.size:
        raise AngleNearPi(float(theta[bad[0]]), int(bad[0]))
    small = theta < SERIES_THRESHOLD
    t2 = theta * theta
    factor = np.where(
        small,
        1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0,
        theta / np.where(small, 1.0, sin_theta),
    )
    return factor[:, None] * w


def se3_exp(xi: np.ndarray) -> np.ndarray:
    """Closed-form exponential of twists (ω, v): rotation exp(ω̂), translation V·v"""
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    omega, v = xi[:, :3], xi[:, 3:]
    theta = np.linalg.norm(omega, axis=1)
    a, b, c = _coefficients(theta)
    hat = so3_hat(omega)
    hat2 = hat @ hat
    out = np.zeros((xi.shape[0], 4, 4))
    out[:, :3, :3] = np.eye(3) + a[:, None, None] * hat + b[:, None, None] * hat2
    v_matrix = np.eye(3) + b[:, None, None] * hat + c[:, None, None] * hat2
    out[:, :3, 3] = np.einsum("kij,kj->ki", v_matrix, v)
    out[:, 3, 3] = 1.0
    return out


def se3_log(matrices: np.ndarray, tol_branch: float = 1e-6) -> np.ndarray:
    """
    Logarithm of homogeneous rigid motions as twists (ω, v).

    Raises:
        AngleNearPi: if a rotation angle exceeds π − tol_branch
    """
    matrices = np.asarray(matrices, dtype=float).reshape(-1, 4, 4)
    omega = so3_log(matrices[:, :3, :3], tol_branch)
    theta = np.linalg.norm(omega, axis=1)
    small = theta < SERIES_THRESHOLD
    safe = np.where(small, 1.0, theta)
    half = safe / 2.0
    t2 = theta * theta
    d = np.where(
        small,
        1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0,
        (1.0 - half * np.cos(half) / np.sin(half)) / (safe * safe),
    )
    hat = so3_hat(omega)
    v_inverse = np.eye(3) - 0.5 * hat + d[:, None, None] * (hat @ hat)
    v = np.einsum("kij,kj->ki", v_inverse, matrices[:, :3, 3])
    return np.hstack((omega, v))


def quaternions_to_matrices(quaternions: np.ndarray) -> np.ndarray:
    """Unit quaternions in (w, x, y, z) order to rotation matrices"""
    quaternions = np.atleast_2d(np.asarray(quaternions, dtype=float))
    return Rotation.from_quat(quaternions[:, [1, 2, 3, 0]]).as_matrix().reshape(-1, 3, 3)


def matrices_to_quaternions(rotations: np.ndarray) -> np.ndarray:
    """Rotation matrices to unit quaternions in (w, x, y, z) order with w ≥ 0"""
    rotations = np.asarray(rotations, dtype=float).reshape(-1, 3, 3)
    xyzw = np.atleast_2d(Rotation.from_matrix(rotations).as_quat())
    wxyz = xyzw[:, [3, 0, 1, 2]]
    sign = np.where(wxyz[:, :1] < 0.0, -1.0, 1.0)
    return wxyz * sign
