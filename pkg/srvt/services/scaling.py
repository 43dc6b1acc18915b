"""Scaling service - the pointwise homeomorphism sc: L¹ → L² and its inverse"""

from typing import Optional

import numpy as np

from ..models import StepFunction
from .calculus import row_norms

ZERO_THRESHOLD = 1e-300


class ScalingService:
    """
    Pointwise scaling v ↦ v/√‖v‖ (zero stays zero) and its inverse q ↦ q·‖q‖.

    The norm is Euclidean in the value coordinates unless `inner_weights`
    gives a diagonal inner product ⟨x, y⟩ = Σ_k w_k x_k y_k.
    """

    def __init__(
        self,
        inner_weights: Optional[np.ndarray] = None,
        zero_threshold: float = ZERO_THRESHOLD
    ):
        self.inner_weights = None if inner_weights is None else np.asarray(inner_weights, dtype=float)
        self.zero_threshold = zero_threshold

    def norms(self, values: np.ndarray) -> np.ndarray:
        """Pointwise norms of the rows of values"""
        return row_norms(values, self.inner_weights)

    def scale(self, func: StepFunction) -> StepFunction:
        """
        Apply sc per subinterval: f_i/√‖f_i‖, or 0 when ‖f_i‖ is below the zero threshold.
        """
        norms = self.norms(func.values)
        out = np.zeros_like(func.values)
        nonzero = norms >= self.zero_threshold
        out[nonzero] = func.values[nonzero] / np.sqrt(norms[nonzero])[:, None]
        return type(func)._like(func, out)

    def unscale(self, func: StepFunction) -> StepFunction:
        """Apply sc⁻¹ per subinterval: q_i·‖q_i‖"""
        norms = self.norms(func.values)
        return type(func)._like(func, func.values * norms[:, None])
