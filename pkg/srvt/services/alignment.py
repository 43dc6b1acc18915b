"""Alignment service - warping action, dynamic-programming warp search and shape distance"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULT_SLOPES, SRVTConfig
from ..errors import DimensionMismatch
from ..models import (
    GroupCurve,
    ManifoldCurve,
    SampledCurve,
    StepFunction,
    WarpingFunction,
)
from .calculus import CalculusService
from .euclidean import EuclideanSRVTService
from .lie import LieSRVTService
from .scaling import ScalingService

logger = logging.getLogger(__name__)

Curve = Union[SampledCurve, ManifoldCurve, GroupCurve]


def _pieces(slope: Fraction) -> List[Tuple[float, int, int]]:
    """
    Split a lattice segment with run a and rise b into pieces on which both
    step functions are constant.

    Returns:
        List of (length in grid units, offset into qa, offset into qc)
    """
    a, b = slope.denominator, slope.numerator
    breaks = sorted({Fraction(k) for k in range(a + 1)} | {Fraction(k * a, b) for k in range(b + 1)})
    pieces = []
    for left, right in zip(breaks[:-1], breaks[1:]):
        middle = (left + right) / 2
        pieces.append((float(right - left), int(middle), int(middle * slope)))
    return pieces


class AlignmentService:
    """
    Quotient by reparametrization. Warps act on curves by precomposition and
    on SRVTs by q ↦ √φ̇·(q∘φ), an L² isometry; the optimal warp is searched
    over lattice paths whose segments have slopes from a finite set.
    """

    def __init__(self, slopes: Sequence[Fraction] = DEFAULT_SLOPES, config: Optional[SRVTConfig] = None):
        slopes = [Fraction(s) for s in slopes]
        if Fraction(1) not in slopes:
            raise ValueError("Slope set must contain 1 (identity warp)")
        # Candidates are tried closest to slope 1 first; exact ties keep the first.
        self.slopes = sorted(set(slopes), key=lambda s: (abs(np.log(float(s))), s))
        self.calculus = CalculusService()
        self.config = config or SRVTConfig()

    def warp(self, curve: Curve, phi: WarpingFunction) -> Curve:
        """
        Right action c ↦ c∘φ, sampled on φ's grid.

        Interpolation between samples follows the curve kind: linear in R^d,
        geodesic on a manifold, right-invariant geodesic in a group.
        """
        if isinstance(curve, ManifoldCurve):
            return ManifoldCurve(curve.spec.resample(curve.points, phi.values), curve.spec)
        if isinstance(curve, GroupCurve):
            return GroupCurve(LieSRVTService(curve.kind, self.config).resample(curve, phi.values), curve.kind)
        if isinstance(curve, SampledCurve):
            return SampledCurve(self.calculus.resample(curve, phi.values))
        raise TypeError(f"Cannot warp {type(curve).__name__}")

    def srvt_warp_action(self, q: StepFunction, phi: WarpingFunction) -> StepFunction:
        """
        √φ̇·(q∘φ) on φ's grid, with q averaged over each image subinterval.

        Subintervals that φ collapses to a point get the value 0.
        """
        n = phi.n_intervals
        primitive = self.calculus.antiderivative(q, np.zeros(q.dim))
        increments = np.diff(self.calculus.resample(primitive, phi.values), axis=0)
        lengths = np.diff(phi.values)
        values = np.zeros((n, q.dim))
        moving = lengths > 0
        values[moving] = np.sqrt(n) * increments[moving] / np.sqrt(lengths[moving])[:, None]
        return type(q)._like(q, values)

    def edge_cost_table(self, qa: StepFunction, qc: StepFunction, slope: Fraction) -> np.ndarray:
        """
        Local mismatch ∫‖qa(t) − √m·qc(φ(t))‖² dt of every lattice segment with
        slope m = b/a.

        Returns:
            Array of shape (N+1−a, N+1−b); entry (i, j) is the cost of the
            segment from node (i, j) to (i+a, j+b)
        """
        n = qa.n_intervals
        a, b = slope.denominator, slope.numerator
        if a > n or b > n:
            return np.empty((0, 0))
        root = np.sqrt(float(slope))
        rows, cols = n + 1 - a, n + 1 - b
        table = np.zeros((rows, cols))
        for length, offset_a, offset_c in _pieces(slope):
            diff = (qa.values[offset_a:offset_a + rows][:, None, :]
                    - root * qc.values[offset_c:offset_c + cols][None, :, :])
            table += (length / n) * np.einsum("ijk,ijk->ij", diff, diff)
        return table

    def optimal_warp(self, qa: StepFunction, qc: StepFunction) -> Tuple[WarpingFunction, float]:
        """
        Minimize ‖qa − √φ̇·(qc∘φ)‖_{L²} over lattice paths from (0, 0) to (N, N).

        Ties in cost go to the path whose slopes deviate least from 1.

        Returns:
            Tuple of (optimal warp, its cost)
        """
        if qa.dim != qc.dim:
            raise DimensionMismatch(f"SRVTs have dimensions {qa.dim} and {qc.dim}")
        qa, qc = self.calculus.harmonize_steps(qa, qc)
        n = qa.n_intervals
        moves = []
        for slope in self.slopes:
            if slope.denominator <= n and slope.numerator <= n:
                a, b = slope.denominator, slope.numerator
                moves.append((a, b, self.edge_cost_table(qa, qc, slope), a * abs(np.log(float(slope)))))

        total = np.full((n + 1, n + 1), np.inf)
        deviation = np.full((n + 1, n + 1), np.inf)
        choice = np.full((n + 1, n + 1), -1, dtype=int)
        total[0, 0] = 0.0
        deviation[0, 0] = 0.0
        for i in range(1, n + 1):
            for index, (a, b, table, bend) in enumerate(moves):
                if i < a:
                    continue
                cost = total[i - a, :n + 1 - b] + table[i - a]
                dev = deviation[i - a, :n + 1 - b] + bend
                best, best_dev = total[i, b:], deviation[i, b:]
                better = (cost < best) | ((cost == best) & (dev < best_dev))
                best[better] = cost[better]
                best_dev[better] = dev[better]
                choice[i, b:][better] = index

        values = np.empty(n + 1)
        i, j = n, n
        values[n] = 1.0
        while i > 0:
            a, b = moves[choice[i, j]][:2]
            for k in range(1, a + 1):
                values[i - k] = (j - k * b / a) / n
            i, j = i - a, j - b
        values[0] = 0.0
        cost = float(np.sqrt(total[n, n]))
        logger.debug("optimal warp on %d subintervals, cost %.6g", n, cost)
        return WarpingFunction(values), cost

    def identity_cost(self, qa: StepFunction, qc: StepFunction) -> float:
        """Cost of the identity warp, summed as the warp search sums it"""
        qa, qc = self.calculus.harmonize_steps(qa, qc)
        table = self.edge_cost_table(qa, qc, Fraction(1))
        total = 0.0
        for i in range(qa.n_intervals):
            total = total + table[i, i]
        return float(np.sqrt(total))

    def shape_distance(
        self,
        a: Curve,
        c: Curve,
        srvt: Optional[Callable[[Curve], StepFunction]] = None
    ) -> float:
        """
        Distance between the shapes of a and c, averaged over both
        alignment directions.

        Args:
            a: First curve
            c: Second curve of the same kind
            srvt: Transform into SRVT space; required for manifold curves

        Returns:
            Nonnegative scalar
        """
        if srvt is None:
            srvt = self._default_srvt(a)
        qa, qc = srvt(a), srvt(c)
        forward = self.optimal_warp(qa, qc)[1]
        backward = self.optimal_warp(qc, qa)[1]
        return 0.5 * (forward + backward)

    def _default_srvt(self, curve: Curve) -> Callable[[Curve], StepFunction]:
        if isinstance(curve, GroupCurve):
            return LieSRVTService(curve.kind, self.config).srvt_lie
        if isinstance(curve, ManifoldCurve):
            raise ValueError("Manifold curves need an SRVT with a reference point")
        return EuclideanSRVTService(ScalingService(zero_threshold=self.config.zero_threshold)).srvt
