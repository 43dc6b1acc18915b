"""Uniform grid utilities"""

from typing import Tuple

import numpy as np


def uniform_times(n_intervals: int) -> np.ndarray:
    """Grid times t_i = i/N for i = 0..N"""
    return np.linspace(0.0, 1.0, n_intervals + 1)


def check_times(times) -> np.ndarray:
    """
    Validate query times.

    Raises:
        ValueError: if a time lies outside [0, 1]
    """
    times = np.asarray(times, dtype=float).reshape(-1)
    if not np.all(np.isfinite(times)) or np.any(times < 0.0) or np.any(times > 1.0):
        raise ValueError("Query times must lie in [0, 1]")
    return times


def interpolate_samples(samples: np.ndarray, times) -> np.ndarray:
    """Piecewise-linear evaluation of grid samples (N+1, d) at the given times"""
    times = check_times(times)
    grid = uniform_times(samples.shape[0] - 1)
    return np.column_stack([np.interp(times, grid, samples[:, k]) for k in range(samples.shape[1])])


def locate(times, n_intervals: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Find the subinterval index and local fraction of each time.

    Returns:
        Tuple of (index in 0..N-1, fraction in [0, 1])
    """
    scaled = np.asarray(times, dtype=float) * n_intervals
    index = np.minimum(np.floor(scaled).astype(int), n_intervals - 1)
    return index, scaled - index


def step_values_at(values: np.ndarray, times) -> np.ndarray:
    """Evaluate a piecewise-constant function (N, d) at times, right-continuous"""
    index, _ = locate(check_times(times), values.shape[0])
    return values[index]


def refine_step_values(values: np.ndarray, n_intervals: int) -> np.ndarray:
    """Resample a step function onto a finer grid by midpoint evaluation"""
    if values.shape[0] == n_intervals:
        return values
    midpoints = (np.arange(n_intervals) + 0.5) / n_intervals
    return step_values_at(values, midpoints)
