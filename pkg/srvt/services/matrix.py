"""Distance matrix service - pairwise distances over a set of curves"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from ..utils.formatting import format_row
from .backends import Curve, CurveBackend, Metric

logger = logging.getLogger(__name__)


@dataclass
class PairFailure:
    """A pair whose distance raised"""
    first: str
    second: str
    error: Exception

    def __str__(self) -> str:
        return f"{self.first} / {self.second}: {self.error}"


@dataclass
class DistanceMatrix:
    """
    Symmetric matrix of pairwise distances with zero diagonal.

    Attributes:
        labels: Curve names in row order
        values: (n, n) array; NaN where a pair failed
        failures: Pairs that raised, in row order
    """
    labels: List[str]
    values: np.ndarray
    failures: List[PairFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        lines = [",".join(self.labels)]
        lines.extend(format_row(row) for row in self.values)
        return "\n".join(lines) + "\n"

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(), encoding="utf-8")
        return path


class DistanceMatrixService:
    """
    Computes the upper triangle on a thread pool and mirrors it.

    Each pair only reads its two curves; the backend holds no mutable
    state, so pairs run independently.
    """

    def __init__(self, backend: CurveBackend, workers: int = 4):
        if workers < 1:
            raise ValueError("Need at least one worker")
        self.backend = backend
        self.workers = workers

    def compute(
        self,
        labels: Sequence[str],
        curves: Sequence[Curve],
        metric: Metric = Metric.BASED
    ) -> DistanceMatrix:
        if len(labels) != len(curves):
            raise ValueError("Need one label per curve")
        if len(curves) < 2:
            raise ValueError("Distance matrix needs at least 2 curves")
        pairs = list(combinations(range(len(curves)), 2))

        def run(pair):
            i, j = pair
            try:
                return self.backend.distance(curves[i], curves[j], metric), None
            except ValueError as e:
                return np.nan, e

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            results = list(pool.map(run, pairs))

        values = np.zeros((len(curves), len(curves)))
        failures = []
        for (i, j), (value, error) in zip(pairs, results):
            values[i, j] = values[j, i] = value
            if error is not None:
                failures.append(PairFailure(labels[i], labels[j], error))
        logger.debug("distance matrix of %d curves, %d failed pairs", len(curves), len(failures))
        return DistanceMatrix(list(labels), values, failures)
