import numpy as np

from src.corrpath import PathPair, Window
from src.errors import DomainError


def simultaneous_infima(path: PathPair, t: int, end: int = None) -> np.ndarray:
    """
    Times s >= t at which L and R both sit at their running minimum relative to time t, i.e. L_s = min L[t..s] and
    R_s = min R[t..s]. These times delimit the beads of the future surface.

    :param path: the path.
    :param t: base index.
    :param end: last index to scan (defaults to the end of the path).
    :return: strictly increasing index array, always starting with t.
    """
    end = path.n if end is None else end
    if not 0 <= t <= end <= path.n:
        raise DomainError(f"base time {t} / end {end} outside path of length {path.n}")
    L = path.L[t:end + 1]
    R = path.R[t:end + 1]
    at_min = (L == np.minimum.accumulate(L)) & (R == np.minimum.accumulate(R))
    return np.flatnonzero(at_min) + t


def window_argmins(path: PathPair, w: Window):
    """First times in [a, b] at which L (resp. R) attains its minimum over [a, b]."""
    w = path.check_window(w)
    x_l = int(np.argmin(path.L[w.a:w.b + 1])) + w.a
    x_r = int(np.argmin(path.R[w.a:w.b + 1])) + w.a
    return x_l, x_r


def infimum_straddle(path: PathPair, t: int, eps: int):
    """
    The last simultaneous-infimum time (relative to t) at or before t + eps and the first one at or after it.

    :return: (last, first); `first` is None when no infimum time follows before the end of the path.
    """
    if t + eps > path.n:
        raise DomainError(f"t + eps = {t + eps} exceeds path length {path.n}")
    times = simultaneous_infima(path, t)
    k = np.searchsorted(times, t + eps, side='right')
    last = int(times[k - 1])
    if last == t + eps:
        return last, last
    first = int(times[k]) if k < times.size else None
    return last, first
