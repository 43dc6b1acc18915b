"""Warping function model - monotone reparametrizations of [0, 1]"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class WarpingFunction:
    """
    A weakly increasing map φ of [0, 1] with φ(0) = 0 and φ(1) = 1,
    sampled on the uniform grid and linear in between.

    Attributes:
        values: Array of N+1 samples φ_i = φ(t_i)
    """
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape[0] < 2:
            raise ValueError("Warping function needs at least 2 samples")
        if not np.all(np.isfinite(values)):
            raise ValueError("Warping function values must be finite")
        if values[0] != 0.0 or values[-1] != 1.0:
            raise ValueError("Warping function must fix the endpoints 0 and 1")
        if np.any(np.diff(values) < 0):
            raise ValueError("Warping function must be weakly increasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_intervals(self) -> int:
        return self.values.shape[0] - 1

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_intervals + 1)

    @classmethod
    def identity(cls, n_intervals: int) -> "WarpingFunction":
        return cls(np.linspace(0.0, 1.0, n_intervals + 1))

    @classmethod
    def from_function(cls, func, n_intervals: int) -> "WarpingFunction":
        """Sample a callable on the grid, pinning the endpoints"""
        values = np.asarray(func(np.linspace(0.0, 1.0, n_intervals + 1)), dtype=float)
        values = np.clip(values, 0.0, 1.0)
        values[0], values[-1] = 0.0, 1.0
        return cls(values)

    def slopes(self) -> np.ndarray:
        """Derivative φ̇ on each subinterval"""
        return self.n_intervals * np.diff(self.values)

    def __call__(self, t) -> np.ndarray:
        return np.interp(t, self.times, self.values)

    def compose(self, inner: "WarpingFunction") -> "WarpingFunction":
        """Return φ∘ψ sampled on ψ's grid"""
        values = self(inner.values)
        values[0], values[-1] = 0.0, 1.0
        return WarpingFunction(values)
