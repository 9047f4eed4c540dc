from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from src.conescan import (AMBIGUOUS, LEFT, RIGHT, ConeIntervalTable, bubble_envelope, covered_mask,
                          maximal_cone_intervals)
from src.corrpath import PathPair, Window
from src.errors import DomainError, IncompleteError

JUMP_COORDINATES = {LEFT: 'L', RIGHT: 'R', AMBIGUOUS: 'LR'}
PROXY_LABEL = 'jump_ordinal_proxy'


@dataclass(frozen=True, eq=False)
class ChordalProcess:
    """
    Boundary length process Z^b = (L^b, R^b) of a chordal exploration of one bead, indexed by disconnected mass
    0..area. Between bubbles Z^b follows Z - Z_end; on each bubble [sigma, tau) it is constant and it jumps down by the
    bubble boundary length at tau.
    """
    start: int
    end: int
    Lb: np.ndarray
    Rb: np.ndarray
    bubbles: ConeIntervalTable

    @property
    def area(self) -> int:
        return self.end - self.start

    @property
    def mass_time(self) -> np.ndarray:
        return np.arange(self.area + 1)

    @property
    def sigma_b(self) -> np.ndarray:
        return self.bubbles.v - self.start

    @property
    def tau_b(self) -> np.ndarray:
        return self.bubbles.t - self.start

    @property
    def is_jump(self) -> np.ndarray:
        flags = np.zeros(self.area + 1, dtype=bool)
        flags[self.tau_b] = True
        return flags

    def jumps(self) -> pd.DataFrame:
        """Jump ledger: mass time, jumping coordinate and magnitude of every bubble closing."""
        coordinates = [JUMP_COORDINATES[side] for side in self.bubbles.sides()]
        return pd.DataFrame({'time': self.tau_b, 'coordinate': coordinates,
                             'magnitude': self.bubbles.boundary_length})

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'mass_time': self.mass_time, 'Lb': self.Lb, 'Rb': self.Rb, 'is_jump': self.is_jump})

    def to_csv(self, destination: Union[str, Path]):
        self.to_frame().to_csv(destination, index=False)


def chordal_boundary_process(path: PathPair, record, complete: bool = True) -> ChordalProcess:
    """
    Builds Z^b for the bead [start, end]. The bubbles are the maximal cone intervals inside the open bead (start, end).

    :param path: the path the bead was read from.
    :param record: (start, end, ...) tuple of a ledger record.
    :param complete: whether the record is a complete bead.
    """
    start, end = int(record[0]), int(record[1])
    if not complete:
        raise IncompleteError(f"bead [{start}, {end}] is not complete")
    if not 0 <= start < end <= path.n:
        raise DomainError(f"invalid bead [{start}, {end}]")
    if end - start >= 2:
        bubbles = maximal_cone_intervals(path, Window(start + 1, end - 1))
    else:
        bubbles = ConeIntervalTable.empty()
    bead = Window(start, end)
    hold = bead.indices()
    inside = covered_mask(bubbles, bead)
    sigma, _ = bubble_envelope(path, bead, intervals=bubbles)
    hold[inside] = sigma[inside]
    return ChordalProcess(start=start, end=end, Lb=path.L[hold] - path.L[end], Rb=path.R[hold] - path.R[end],
                          bubbles=bubbles)


@dataclass(frozen=True, eq=False)
class JumpOrdinalClock:
    """
    Discrete stand-in for quantum natural time: bubble closings are counted instead of measured by a local time, and
    every constancy interval of Z^b is collapsed to its first point. `label` marks all outputs as a proxy.
    """
    mass_times: np.ndarray
    collapsed_Lb: np.ndarray
    collapsed_Rb: np.ndarray
    hold_lengths: np.ndarray
    label: str = PROXY_LABEL

    @property
    def ordinals(self) -> np.ndarray:
        return np.arange(self.mass_times.size)

    def __len__(self):
        return self.mass_times.size

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'ordinal': self.ordinals, 'mass_time': self.mass_times, 'clock': self.label})


def mass_to_jumpcount_reparam(cp: ChordalProcess) -> JumpOrdinalClock:
    """
    Maps the k-th bubble to the mass time sigma^b_k at which Z^b freezes, and collapses each constancy interval.
    """
    bead = Window(cp.start, cp.end)
    keep = ~covered_mask(cp.bubbles, bead)
    lengths = np.ones(cp.area + 1, dtype=np.int64)
    lengths[cp.sigma_b] = cp.tau_b - cp.sigma_b
    return JumpOrdinalClock(mass_times=cp.sigma_b.copy(), collapsed_Lb=cp.Lb[keep], collapsed_Rb=cp.Rb[keep],
                            hold_lengths=lengths[keep])


def restore_constancy(clock: JumpOrdinalClock):
    """Inverse of the collapse: re-inserts every constancy interval and returns (Lb, Rb) in mass time."""
    return np.repeat(clock.collapsed_Lb, clock.hold_lengths), np.repeat(clock.collapsed_Rb, clock.hold_lengths)
