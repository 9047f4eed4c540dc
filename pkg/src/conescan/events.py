from typing import Sequence

import numpy as np

from src.conescan.cones import ConeIntervalTable, maximal_cone_intervals
from src.corrpath import PathPair, Window
from src.errors import DomainError


def cone_gap_events(intervals: ConeIntervalTable, t: int, eps: Sequence[int], w: Window) -> np.ndarray:
    """
    Vectorized form of `cone_gap_event` over several eps for one set of maximal intervals of w.

    Every cone interval inside w lies in a maximal one, and the half-open maximal intervals [v, t) are disjoint, so
    only the maximal interval whose [v, t) holds t can contain [t, t + eps].
    """
    eps = np.asarray(eps, dtype=np.int64)
    if np.any(eps < 0) or t < w.a or np.any(t + eps > w.b):
        raise DomainError(f"[t, t + eps] must lie in [{w.a}, {w.b}] for t={t}")
    k = np.searchsorted(intervals.t, t, side='right')
    if k == len(intervals) or intervals.v[k] > t:
        events = np.ones(eps.shape, dtype=bool)
    else:
        events = intervals.t[k] < t + eps
    # a single point is also covered when it closes an interval
    k = np.searchsorted(intervals.t, t, side='left')
    if k < len(intervals) and intervals.v[k] <= t:
        events[eps == 0] = False
    return events


def cone_gap_event(path: PathPair, t: int, eps: int, w: Window) -> bool:
    """
    True iff there is no cone time s with [t, t + eps] in [v(s), s] in [a, b] (eps in index units).
    """
    w = path.check_window(w)
    intervals = maximal_cone_intervals(path, w)
    return bool(cone_gap_events(intervals, t, [eps], w)[0])


def overshoot_probability_bound(t: float, eps: float, T: float, kappa_prime: float) -> float:
    """
    Upper bound eps^(1 - kappa'/8) (T - t)^-(1 - kappa'/8) on the probability that the first simultaneous-infimum
    time relative to t after t + eps is at least T.
    """
    if not eps > 0 or not T > t + eps:
        raise DomainError(f"need eps > 0 and T > t + eps, got t={t}, eps={eps}, T={T}")
    index = 1 - kappa_prime / 8
    return min(1., (eps / (T - t)) ** index)
