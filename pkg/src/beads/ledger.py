from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np
import pandas as pd

from src.conescan import simultaneous_infima
from src.corrpath import PathPair
from src.errors import DomainError, IncompleteError, NotFound


@dataclass(frozen=True, eq=False)
class BeadLedger:
    """
    Beads of the future surface seen from time `origin`: consecutive simultaneous-infimum times delimit records
    (start, end, area = end - start, dL = L_start - L_end, dR = R_start - R_end).

    When fewer than two infimum times exist the ledger holds a single open record reaching the end of the path with
    undefined boundary lengths, and `complete` is False.
    """
    origin: int
    start: np.ndarray
    end: np.ndarray
    dL: np.ndarray
    dR: np.ndarray
    complete: bool = True

    @property
    def area(self) -> np.ndarray:
        return self.end - self.start

    def __len__(self):
        return self.start.size

    def record(self, k: int):
        return int(self.start[k]), int(self.end[k]), int(self.area[k]), float(self.dL[k]), float(self.dR[k])

    def records(self):
        return [self.record(k) for k in range(len(self))]

    def _containing(self, s: int) -> int:
        if not self.complete or s >= self.end[-1]:
            raise IncompleteError(f"time {s} lies beyond the last complete bead of the ledger from {self.origin}")
        return int(np.searchsorted(self.start, s, side='right')) - 1

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'start': self.start, 'end': self.end, 'area': self.area, 'dL': self.dL, 'dR': self.dR})

    def to_csv(self, destination: Union[str, Path]):
        self.to_frame().to_csv(destination, index=False)


def bead_ledger(path: PathPair, t: int) -> BeadLedger:
    if not 0 <= t < path.n:
        raise DomainError(f"bead origin {t} must lie in [0, {path.n})")
    times = simultaneous_infima(path, t)
    if times.size < 2:
        return BeadLedger(origin=t, start=np.array([t]), end=np.array([path.n]), dL=np.array([np.nan]),
                          dR=np.array([np.nan]), complete=False)
    start, end = times[:-1], times[1:]
    return BeadLedger(origin=t, start=start, end=end, dL=path.L[start] - path.L[end], dR=path.R[start] - path.R[end])


def p_function(ledger: BeadLedger, s: int):
    """
    (area, dL, dR) of the bead containing s; right-continuous at shared bead boundaries, zero before the origin.
    """
    if s < ledger.origin:
        return 0, 0., 0.
    _, _, area, dl, dr = ledger.record(ledger._containing(s))
    return area, dl, dr


def reconstruct(ledger: BeadLedger, s: int):
    """
    Sums of (area, dL, dR) over the beads up to and including the one containing s. This equals
    (T - origin, L_origin - L_T, R_origin - R_T) with T the first infimum time after s.
    """
    if s < ledger.origin:
        return 0, 0., 0.
    k = ledger._containing(s)
    return int(ledger.area[:k + 1].sum()), float(ledger.dL[:k + 1].sum()), float(ledger.dR[:k + 1].sum())


def first_bead_in(ledger: BeadLedger, target: Callable[[int, float, float], bool]) -> int:
    """Index of the first bead whose (area, dL, dR) satisfies `target`."""
    if len(ledger) == 0:
        raise DomainError("empty ledger")
    if ledger.complete:
        for k in range(len(ledger)):
            _, _, area, dl, dr = ledger.record(k)
            if target(area, dl, dr):
                return k
    raise NotFound(f"no complete bead of the ledger from {ledger.origin} satisfies the target")
