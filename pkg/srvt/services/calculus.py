"""Calculus service - derivative, antiderivative and norms of discrete curves"""

from typing import Optional, Tuple, Union

import numpy as np

from ..errors import DimensionMismatch
from ..models import SampledCurve, StepFunction, PExponent
from ..utils.grid import interpolate_samples, refine_step_values, uniform_times

# Rows whose largest entry lies outside this band are rescaled before squaring
_SQUARE_SAFE = (1e-150, 1e150)


def row_norms(values: np.ndarray, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Norms of the rows of values without overflow or underflow in the squares.

    Args:
        values: Array of shape (k, dim)
        weights: Optional diagonal inner product, ‖x‖² = Σ_j w_j x_j²
    """
    values = np.asarray(values, dtype=float)
    if weights is not None:
        values = values * np.sqrt(np.asarray(weights, dtype=float))
    norms = np.linalg.norm(values, axis=1)
    peaks = np.max(np.abs(values), axis=1) if values.size else np.zeros(values.shape[0])
    risky = (peaks > _SQUARE_SAFE[1]) | ((peaks > 0.0) & (peaks < _SQUARE_SAFE[0]))
    if np.any(risky):
        rows = values[risky] / peaks[risky, None]
        norms[risky] = peaks[risky] * np.linalg.norm(rows, axis=1)
    return norms


class CalculusService:
    """
    Discrete stand-ins for AC^p curves and L^p functions on [0, 1].

    Curves are piecewise linear between grid samples; L^p classes are
    represented by their piecewise-constant member. Forward differences
    and the left Riemann sum are an exact inverse pair on these.
    """

    @staticmethod
    def derivative(curve: SampledCurve) -> StepFunction:
        """
        Forward-difference derivative d_i = N·(c_{i+1} − c_i).

        Args:
            curve: Sampled curve with N+1 values

        Returns:
            StepFunction with N values
        """
        return StepFunction(curve.n_intervals * np.diff(curve.values, axis=0))

    @staticmethod
    def antiderivative(func: StepFunction, start) -> SampledCurve:
        """
        Cumulative left Riemann sum c_0 = start, c_{i+1} = c_i + f_i/N.

        Raises:
            DimensionMismatch: if start and func have different dimension
        """
        start = np.asarray(start, dtype=float).reshape(-1)
        if start.shape[0] != func.dim:
            raise DimensionMismatch(
                f"Start point has dimension {start.shape[0]}, function has {func.dim}"
            )
        increments = func.values / func.n_intervals
        values = np.empty((func.n_intervals + 1, func.dim))
        values[0] = start
        values[1:] = start + np.cumsum(increments, axis=0)
        return SampledCurve(values)

    @staticmethod
    def pointwise_norms(func: StepFunction) -> np.ndarray:
        """Euclidean norm of each subinterval value"""
        return row_norms(func.values)

    @staticmethod
    def lp_norm(
        func: StepFunction,
        p: Union[float, PExponent] = 2.0,
        weights: Optional[np.ndarray] = None
    ) -> float:
        """
        Discrete L^p norm (Σ_i ‖f_i‖^p / N)^{1/p}.

        Args:
            func: Step function
            p: Exponent in [1, ∞)
            weights: Optional positive per-subinterval factors turning the
                Euclidean norm into a pointwise Riemannian one, ‖f_i‖_i = w_i·‖f_i‖

        Returns:
            Nonnegative scalar
        """
        p = PExponent.coerce(p).p
        norms = CalculusService.pointwise_norms(func)
        if weights is not None:
            weights = np.asarray(weights, dtype=float).reshape(-1)
            if weights.shape[0] != func.n_intervals:
                raise DimensionMismatch("Need one weight per subinterval")
            if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
                raise ValueError("Weights must be positive")
            norms = norms * weights
        if p == 1.0:
            return float(np.sum(norms) / func.n_intervals)
        if p == 2.0 and _SQUARE_SAFE[0] < np.max(norms) < _SQUARE_SAFE[1]:
            return float(np.sqrt(np.sum(norms * norms) / func.n_intervals))
        scale = np.max(norms) if norms.size else 0.0
        if scale == 0.0:
            return 0.0
        return float(scale * (np.sum((norms / scale) ** p) / func.n_intervals) ** (1.0 / p))

    @staticmethod
    def l2_inner(f: StepFunction, g: StepFunction) -> float:
        """Discrete L² inner product ∫⟨f(t), g(t)⟩ dt"""
        f, g = CalculusService.harmonize_steps(f, g)
        return float(np.sum(f.values * g.values) / f.n_intervals)

    @staticmethod
    def ac_norm(curve: SampledCurve, p: Union[float, PExponent] = 1.0) -> float:
        """‖c‖_{p,1} = ‖c(0)‖ + ‖ċ‖_p"""
        derivative = CalculusService.derivative(curve)
        return float(np.linalg.norm(curve.start)) + CalculusService.lp_norm(derivative, p)

    @staticmethod
    def sup_norm(curve: SampledCurve) -> float:
        """Maximum Euclidean norm over the grid samples"""
        return float(np.max(row_norms(curve.values)))

    @staticmethod
    def resample(curve: SampledCurve, times) -> np.ndarray:
        """
        Piecewise-linear evaluation of the curve at times in [0, 1].

        Returns:
            Array of shape (len(times), dim); exact at grid times

        Raises:
            ValueError: if a time lies outside [0, 1]
        """
        return interpolate_samples(curve.values, times)

    @staticmethod
    def resample_curve(curve: SampledCurve, n_intervals: int) -> SampledCurve:
        """Resample onto the uniform grid with n_intervals subintervals"""
        if n_intervals == curve.n_intervals:
            return curve
        return SampledCurve(interpolate_samples(curve.values, uniform_times(n_intervals)))

    @staticmethod
    def harmonize_curves(a: SampledCurve, c: SampledCurve) -> Tuple[SampledCurve, SampledCurve]:
        """Bring two curves onto the finer of their grids"""
        if a.dim != c.dim:
            raise DimensionMismatch(f"Curves have dimensions {a.dim} and {c.dim}")
        n = max(a.n_intervals, c.n_intervals)
        return CalculusService.resample_curve(a, n), CalculusService.resample_curve(c, n)

    @staticmethod
    def harmonize_steps(f: StepFunction, g: StepFunction) -> Tuple[StepFunction, StepFunction]:
        """Bring two step functions onto the finer of their grids"""
        if f.dim != g.dim:
            raise DimensionMismatch(f"Step functions have dimensions {f.dim} and {g.dim}")
        n = max(f.n_intervals, g.n_intervals)
        return (
            type(f)._like(f, refine_step_values(f.values, n)),
            type(g)._like(g, refine_step_values(g.values, n)),
        )
