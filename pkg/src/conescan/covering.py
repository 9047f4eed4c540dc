from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np
import pandas as pd

from src.conescan import kernels
from src.errors import DomainError, EmptySetError


@dataclass(frozen=True, eq=False)
class CoveringCurve:
    """Minimal numbers N_eps of length-eps intervals covering a set, on an increasing eps grid."""
    epsilons: np.ndarray
    counts: np.ndarray

    def __len__(self):
        return self.epsilons.size

    def __iter__(self):
        return iter(zip(self.epsilons.tolist(), self.counts.tolist()))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'epsilon': self.epsilons, 'count': self.counts})

    def to_csv(self, destination: Union[str, Path]):
        self.to_frame().to_csv(destination, index=False)


def dyadic_grid(span: float, min_exponent: int, max_exponent: int) -> np.ndarray:
    """
    eps = 2**-k * span for k from max_exponent down to min_exponent, increasing.
    """
    if min_exponent > max_exponent:
        raise DomainError(f"empty dyadic grid: min exponent {min_exponent} > max exponent {max_exponent}")
    exponents = np.arange(max_exponent, min_exponent - 1, -1)
    return span * np.power(2., -exponents)


def covering_count(index_set: np.ndarray, epsilons: Sequence[float], dt: float = 1.) -> CoveringCurve:
    """
    Greedy left-to-right covers with half-open intervals [x, x + eps), which are optimal in one dimension.

    :param index_set: strictly increasing indices.
    :param epsilons: positive interval lengths in time units.
    :param dt: time per index.
    :return: the covering curve sorted by eps.
    """
    index_set = np.asarray(index_set)
    if index_set.size == 0:
        raise EmptySetError("cannot cover an empty set")
    epsilons = np.sort(np.asarray(epsilons, dtype=np.float64))
    if epsilons.size == 0 or np.any(epsilons <= 0):
        raise DomainError("interval lengths must be positive")
    times = index_set.astype(np.float64) * dt
    counts = np.array([kernels.greedy_cover(times, eps) for eps in epsilons], dtype=np.int64)
    return CoveringCurve(epsilons=epsilons, counts=counts)
