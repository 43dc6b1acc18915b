"""Matrix Lie group models - SO(3) and SE(3) elements, algebra elements and curves"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from ..errors import GroupKindMismatch
from .curve import StepFunction

ORTHOGONALITY_TOL = 1e-9


class GroupKind(Enum):
    """Supported matrix Lie groups"""
    SO3 = "so3"
    SE3 = "se3"

    @property
    def matrix_size(self) -> int:
        return 3 if self is GroupKind.SO3 else 4

    @property
    def algebra_dim(self) -> int:
        return 3 if self is GroupKind.SO3 else 6


def _check_group_matrices(matrices: np.ndarray, kind: GroupKind):
    """Validate a stack of matrices (k, n, n) against the group invariants"""
    n = kind.matrix_size
    if matrices.ndim != 3 or matrices.shape[1:] != (n, n):
        raise ValueError(f"{kind.value} elements must be {n}x{n} matrices")
    if not np.all(np.isfinite(matrices)):
        raise ValueError("Group elements must be finite")
    rotations = matrices[:, :3, :3]
    gram = np.einsum("kji,kjl->kil", rotations, rotations)
    drift = np.linalg.norm(gram - np.eye(3), axis=(1, 2))
    bad = np.flatnonzero(drift > ORTHOGONALITY_TOL)
    if bad.size:
        raise ValueError(f"Rotation block at index {bad[0]} is not orthogonal")
    dets = np.linalg.det(rotations)
    bad = np.flatnonzero(np.abs(dets - 1.0) > ORTHOGONALITY_TOL)
    if bad.size:
        raise ValueError(f"Rotation block at index {bad[0]} has determinant != 1")
    if kind is GroupKind.SE3:
        bottom = matrices[:, 3, :]
        bad = np.flatnonzero(np.any(bottom != np.array([0.0, 0.0, 0.0, 1.0]), axis=1))
        if bad.size:
            raise ValueError(f"Homogeneous matrix at index {bad[0]} has bad bottom row")


def _frozen(array) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GroupElement:
    """
    An element of SO(3) (3x3 rotation) or SE(3) (4x4 homogeneous rigid motion).

    Attributes:
        matrix: The group element as a matrix
        kind: Which group the element belongs to
    """
    matrix: np.ndarray
    kind: GroupKind

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        _check_group_matrices(matrix[None], self.kind)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, kind: GroupKind) -> "GroupElement":
        return cls(np.eye(kind.matrix_size), kind)

    def inverse(self) -> "GroupElement":
        return GroupElement(invert_matrices(self.matrix[None], self.kind)[0], self.kind)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if other.kind is not self.kind:
            raise GroupKindMismatch(f"Cannot multiply {self.kind.value} by {other.kind.value}")
        return GroupElement(self.matrix @ other.matrix, self.kind)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """
    A Lie algebra element in coordinates.

    so(3) uses the axis vector (ω1, ω2, ω3); se(3) the twist (ω1, ω2, ω3, v1, v2, v3).
    """
    coords: np.ndarray
    kind: GroupKind

    def __post_init__(self):
        coords = _frozen(self.coords).reshape(-1)
        if coords.shape[0] != self.kind.algebra_dim:
            raise ValueError(
                f"{self.kind.value} algebra elements need {self.kind.algebra_dim} coordinates"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("Algebra coordinates must be finite")
        object.__setattr__(self, "coords", coords)


def invert_matrices(matrices: np.ndarray, kind: GroupKind) -> np.ndarray:
    """Closed-form inverse of a stack of group matrices"""
    rot_t = np.swapaxes(matrices[:, :3, :3], 1, 2)
    if kind is GroupKind.SO3:
        return rot_t.copy()
    out = np.zeros_like(matrices)
    out[:, :3, :3] = rot_t
    out[:, :3, 3] = -np.einsum("kij,kj->ki", rot_t, matrices[:, :3, 3])
    out[:, 3, 3] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class GroupCurve:
    """
    A group-valued curve sampled at N+1 uniform grid times.

    Attributes:
        matrices: Array of shape (N+1, n, n)
        kind: Shared group of all samples
    """
    matrices: np.ndarray
    kind: GroupKind

    def __post_init__(self):
        matrices = _frozen(self.matrices)
        if matrices.ndim != 3 or matrices.shape[0] < 2:
            raise ValueError("Group curve needs at least 2 samples (N >= 1)")
        _check_group_matrices(matrices, self.kind)
        object.__setattr__(self, "matrices", matrices)

    @property
    def n_intervals(self) -> int:
        return self.matrices.shape[0] - 1

    @property
    def start(self) -> GroupElement:
        return GroupElement(self.matrices[0], self.kind)

    def inverse(self) -> "GroupCurve":
        """Pointwise inverse"""
        return GroupCurve(invert_matrices(self.matrices, self.kind), self.kind)

    def _operand(self, other: Union["GroupCurve", GroupElement]) -> np.ndarray:
        if other.kind is not self.kind:
            raise GroupKindMismatch(f"Cannot combine {self.kind.value} with {other.kind.value}")
        if isinstance(other, GroupElement):
            return other.matrix[None]
        if other.n_intervals != self.n_intervals:
            raise ValueError("Group curves must share the grid")
        return other.matrices

    def __mul__(self, other: Union["GroupCurve", GroupElement]) -> "GroupCurve":
        """Pointwise product self(t)·other(t); a GroupElement acts as a constant curve"""
        return GroupCurve(self.matrices @ self._operand(other), self.kind)

    def __rmul__(self, other: GroupElement) -> "GroupCurve":
        return GroupCurve(self._operand(other) @ self.matrices, self.kind)


@dataclass(frozen=True, eq=False)
class AlgebraStepFunction(StepFunction):
    """A step function with values in the Lie algebra coordinates of `kind`"""
    kind: GroupKind = GroupKind.SO3

    def __post_init__(self):
        super().__post_init__()
        if self.dim != self.kind.algebra_dim:
            raise ValueError(
                f"{self.kind.value} step functions need {self.kind.algebra_dim} components"
            )

    def _check_compatible(self, other: StepFunction):
        super()._check_compatible(other)
        if isinstance(other, AlgebraStepFunction) and other.kind is not self.kind:
            raise GroupKindMismatch(f"Cannot combine {self.kind.value} with {other.kind.value}")

    @classmethod
    def _like(cls, template: "AlgebraStepFunction", values: np.ndarray) -> "AlgebraStepFunction":
        return cls(values, template.kind)
