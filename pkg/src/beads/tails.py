from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from src.conescan import AMBIGUOUS, ConeIntervalTable
from src.errors import DomainError, EmptySetError


@dataclass(frozen=True, eq=False)
class TailSample:
    """Sorted positive sample (bubble boundary lengths, gap lengths, ...) whose tail exponent is estimated."""
    values: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=np.float64))
        if np.any(values <= 0):
            raise DomainError("tail samples must be strictly positive")
        object.__setattr__(self, 'values', values)

    def __len__(self):
        return self.values.size

    @classmethod
    def pooled(cls, samples: Iterable['TailSample']) -> 'TailSample':
        samples = list(samples)
        if not samples:
            return cls(np.empty(0))
        return cls(np.concatenate([s.values for s in samples]))


def bubble_tail_sample(intervals: Union[ConeIntervalTable, list]) -> TailSample:
    """
    Boundary lengths |dL| + |dR| of maximal cone excursions. Ambiguous intervals are left out, so the sample can be
    smaller than the input.
    """
    if not isinstance(intervals, ConeIntervalTable):
        intervals = ConeIntervalTable.from_intervals(intervals)
    if len(intervals) == 0:
        raise EmptySetError("no cone intervals to sample from")
    kept = intervals.select(intervals.side != ConeIntervalTable.side_codes[AMBIGUOUS])
    lengths = kept.boundary_length
    return TailSample(lengths[lengths > 0])


def infima_gap_sample(index_set: np.ndarray, dt: float = 1.) -> TailSample:
    """Lengths of the gaps between consecutive points of an index set, in time units."""
    index_set = np.asarray(index_set)
    if index_set.size < 2:
        raise EmptySetError("a gap sample needs at least two points")
    return TailSample(np.diff(index_set) * dt)
