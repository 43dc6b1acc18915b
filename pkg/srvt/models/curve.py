"""Curve and step-function models - discrete AC^p curves and L^p classes on [0, 1]"""

from dataclasses import dataclass
from typing import Union

import numpy as np


def _frozen_array(values, name: str) -> np.ndarray:
    """Copy values into a read-only 2-D float array, rejecting non-finite entries"""
    array = np.array(values, dtype=float)
    if array.ndim == 1:
        array = array[:, None]
    if array.ndim != 2 or array.shape[1] < 1:
        raise ValueError(f"{name} values must be a list of vectors")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} values must be finite")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """
    A curve on I = [0, 1] sampled at the N+1 uniform grid times t_i = i/N.

    Attributes:
        values: Array of shape (N+1, dim); row i is the value at t_i
    """
    values: np.ndarray

    def __post_init__(self):
        array = _frozen_array(self.values, "Curve")
        if array.shape[0] < 2:
            raise ValueError("Curve needs at least 2 samples (N >= 1)")
        object.__setattr__(self, "values", array)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_intervals(self) -> int:
        return self.values.shape[0] - 1

    @property
    def start(self) -> np.ndarray:
        return self.values[0]

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_intervals + 1)

    def translated(self, offset) -> "SampledCurve":
        """Return the curve shifted by a constant vector"""
        return SampledCurve(self.values + np.asarray(offset, dtype=float))

    def transformed(self, matrix) -> "SampledCurve":
        """Return the curve with a linear map applied pointwise"""
        return SampledCurve(self.values @ np.asarray(matrix, dtype=float).T)


@dataclass(frozen=True, eq=False)
class BasedCurve(SampledCurve):
    """A sampled curve whose first sample is the origin"""

    def __post_init__(self):
        super().__post_init__()
        if np.max(np.abs(self.values[0])) > 1e-12:
            raise ValueError("Based curve must start at the origin")

    @classmethod
    def from_curve(cls, curve: SampledCurve) -> "BasedCurve":
        """Translate a curve so that it starts at the origin"""
        return cls(curve.values - curve.values[0])


@dataclass(frozen=True, eq=False)
class StepFunction:
    """
    A piecewise-constant function on the N uniform subintervals of I.

    Attributes:
        values: Array of shape (N, dim); row i is the value on [t_i, t_{i+1})
    """
    values: np.ndarray

    def __post_init__(self):
        array = _frozen_array(self.values, "Step function")
        if array.shape[0] < 1:
            raise ValueError("Step function needs at least one subinterval (N >= 1)")
        object.__setattr__(self, "values", array)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_intervals(self) -> int:
        return self.values.shape[0]

    def _check_compatible(self, other: "StepFunction"):
        if self.values.shape != other.values.shape:
            raise ValueError(
                f"Step functions differ in shape: {self.values.shape} vs {other.values.shape}"
            )

    def __add__(self, other: "StepFunction") -> "StepFunction":
        self._check_compatible(other)
        return type(self)._like(self, self.values + other.values)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        self._check_compatible(other)
        return type(self)._like(self, self.values - other.values)

    def __mul__(self, factor: float) -> "StepFunction":
        return type(self)._like(self, self.values * float(factor))

    __rmul__ = __mul__

    @classmethod
    def _like(cls, template: "StepFunction", values: np.ndarray) -> "StepFunction":
        return cls(values)


@dataclass(frozen=True)
class PExponent:
    """Integrability exponent p in [1, ∞)"""
    p: float

    def __post_init__(self):
        if not np.isfinite(self.p) or self.p < 1:
            raise ValueError(f"Exponent must lie in [1, inf), got {self.p}")

    @classmethod
    def coerce(cls, p: Union[float, "PExponent"]) -> "PExponent":
        return p if isinstance(p, PExponent) else cls(float(p))
