from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np
import pandas as pd

from src.conescan import kernels
from src.corrpath import PathPair, Window

LEFT = 'left'
RIGHT = 'right'
AMBIGUOUS = 'ambiguous'
SIDES = (LEFT, RIGHT, AMBIGUOUS)
SENTINEL = -1


@dataclass(frozen=True, eq=False)
class EntranceMap:
    """
    Cone entrance times v_Z(t) for every t of a window, stored as absolute indices (`v[t - a]`). An entry equals
    `SENTINEL` when the cone of t reaches past the left end of the window.
    """
    window: Window
    v: np.ndarray
    prev_L: np.ndarray
    prev_R: np.ndarray

    def __getitem__(self, t: int) -> int:
        return int(self.v[t - self.window.a])

    def cone_times(self) -> np.ndarray:
        """Times t of the window whose cone interval [v(t), t] is non-degenerate and lies in the window."""
        t = self.window.indices()
        return t[(self.v >= self.window.a) & (self.v < t)]

    def __eq__(self, other):
        if not isinstance(other, EntranceMap):
            return NotImplemented
        return self.window == other.window and np.array_equal(self.v, other.v)

    __hash__ = None


@dataclass(frozen=True)
class ConeInterval:
    v: int
    t: int
    side: str
    jump: Tuple[float, float]

    @property
    def area(self) -> int:
        return self.t - self.v

    @property
    def boundary_length(self) -> float:
        return abs(self.jump[0]) + abs(self.jump[1])

    def contains(self, other: 'ConeInterval') -> bool:
        return self.v <= other.v and other.t <= self.t


class ConeIntervalTable:
    """
    Column store of cone intervals sorted by right endpoint. Behaves as a sequence of `ConeInterval` while keeping
    the columns available as arrays for the estimators.
    """
    side_codes = {LEFT: 0, RIGHT: 1, AMBIGUOUS: 2}

    def __init__(self, v: np.ndarray, t: np.ndarray, dL: np.ndarray, dR: np.ndarray, side: np.ndarray):
        self.v = np.asarray(v, dtype=np.int64)
        self.t = np.asarray(t, dtype=np.int64)
        self.dL = np.asarray(dL, dtype=np.float64)
        self.dR = np.asarray(dR, dtype=np.float64)
        self.side = np.asarray(side, dtype=np.int8)

    @classmethod
    def empty(cls) -> 'ConeIntervalTable':
        return cls(np.empty(0), np.empty(0), np.empty(0), np.empty(0), np.empty(0))

    @classmethod
    def from_intervals(cls, intervals) -> 'ConeIntervalTable':
        intervals = sorted(intervals, key=lambda c: c.t)
        if not intervals:
            return cls.empty()
        return cls(v=[c.v for c in intervals], t=[c.t for c in intervals], dL=[c.jump[0] for c in intervals],
                   dR=[c.jump[1] for c in intervals], side=[cls.side_codes[c.side] for c in intervals])

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, k: int) -> ConeInterval:
        return ConeInterval(v=int(self.v[k]), t=int(self.t[k]), side=SIDES[self.side[k]],
                            jump=(float(self.dL[k]), float(self.dR[k])))

    def __iter__(self) -> Iterator[ConeInterval]:
        for k in range(len(self)):
            yield self[k]

    def __eq__(self, other):
        if not isinstance(other, ConeIntervalTable):
            return NotImplemented
        return all(np.array_equal(getattr(self, c), getattr(other, c)) for c in ('v', 't', 'dL', 'dR', 'side'))

    __hash__ = None

    @property
    def area(self) -> np.ndarray:
        return self.t - self.v

    @property
    def boundary_length(self) -> np.ndarray:
        return np.abs(self.dL) + np.abs(self.dR)

    def sides(self) -> np.ndarray:
        return np.asarray(SIDES, dtype=object)[self.side]

    def select(self, mask: np.ndarray) -> 'ConeIntervalTable':
        return ConeIntervalTable(self.v[mask], self.t[mask], self.dL[mask], self.dR[mask], self.side[mask])

    def to_frame(self, dt: float = 1.) -> pd.DataFrame:
        return pd.DataFrame({'v': self.v, 't': self.t, 'side': self.sides(), 'dL': self.dL, 'dR': self.dR,
                             'area': self.area * dt})


def entrance_times(path: PathPair, w: Window) -> EntranceMap:
    """
    Cone entrance times on a window via two previous-smaller-element sweeps and their pointwise maximum.
    """
    w = path.check_window(w)
    prev_l = kernels.previous_smaller(path.L, w.a, w.b)
    prev_r = kernels.previous_smaller(path.R, w.a, w.b)
    v = kernels.entrance_from_previous(path.L, path.R, w.a, w.b, prev_l, prev_r)
    return EntranceMap(window=w, v=v, prev_L=prev_l, prev_R=prev_r)


def classify_sides(dL: np.ndarray, dR: np.ndarray, l_binding: np.ndarray, r_binding: np.ndarray) -> np.ndarray:
    """
    Side of each bubble: left when R returns to its entrance value, right when L does. Exact zeros decide (lattice
    paths); otherwise the coordinate that bounds the cone at its entrance decides. Both or neither is ambiguous.
    """
    l_zero = dL == 0
    r_zero = dR == 0
    exact = l_zero | r_zero
    left = np.where(exact, r_zero & ~l_zero, r_binding & ~l_binding)
    right = np.where(exact, l_zero & ~r_zero, l_binding & ~r_binding)
    side = np.full(dL.shape, ConeIntervalTable.side_codes[AMBIGUOUS], dtype=np.int8)
    side[left] = ConeIntervalTable.side_codes[LEFT]
    side[right] = ConeIntervalTable.side_codes[RIGHT]
    return side


def intervals_from_entrance(path: PathPair, entrance: EntranceMap) -> ConeIntervalTable:
    w = entrance.window
    starts, ends = kernels.maximal_intervals(entrance.v, w.a, w.b)
    dL = path.L[ends] - path.L[starts]
    dR = path.R[ends] - path.R[starts]
    l_binding = entrance.prev_L[ends - w.a] + 1 == starts
    r_binding = entrance.prev_R[ends - w.a] + 1 == starts
    return ConeIntervalTable(v=starts, t=ends, dL=dL, dR=dR, side=classify_sides(dL, dR, l_binding, r_binding))


def maximal_cone_intervals(path: PathPair, w: Window) -> ConeIntervalTable:
    """
    Maximal cone intervals inside the window: cone intervals [v(t), t] within [a, b] not contained in another one.
    They have pairwise disjoint interiors and are returned sorted by t.
    """
    return intervals_from_entrance(path, entrance_times(path, w))


def covered_mask(intervals: ConeIntervalTable, w: Window) -> np.ndarray:
    """Indicator over the window of the union of the open maximal intervals (v, t)."""
    diff = np.zeros(len(w) + 1, dtype=np.int64)
    inner = intervals.t - intervals.v >= 2
    np.add.at(diff, intervals.v[inner] + 1 - w.a, 1)
    np.add.at(diff, intervals.t[inner] - w.a, -1)
    return np.cumsum(diff[:-1]) > 0


def non_cone_set(path: PathPair, w: Window, intervals: ConeIntervalTable = None) -> np.ndarray:
    """
    Ancestor-free times: the window minus the union of the open maximal cone intervals; interval endpoints stay.

    :return: strictly increasing index array.
    """
    w = path.check_window(w)
    if intervals is None:
        intervals = maximal_cone_intervals(path, w)
    return w.indices()[~covered_mask(intervals, w)]


def bubble_envelope(path: PathPair, w: Window, intervals: ConeIntervalTable = None):
    """
    sigma_{a,b}(t), tau_{a,b}(t) for every t of the window: the endpoints of the largest bubble in [a, b] containing t,
    or t itself when t lies in no bubble.
    """
    w = path.check_window(w)
    if intervals is None:
        intervals = maximal_cone_intervals(path, w)
    return kernels.envelope(intervals.v, intervals.t, w.a, w.b)


def skip_bubbles(path: PathPair, w: Window, intervals: ConeIntervalTable = None) -> np.ndarray:
    """
    The bubble-skipping curve as an index map: each window index is sent to the closing time tau_{a,b}(t) of the
    bubble it lies in. Indices in no bubble are fixed points.
    """
    _, tau = bubble_envelope(path, w, intervals=intervals)
    return tau
