from dataclasses import dataclass

import numpy as np
from numba import njit

from src.errors import DomainError, StructureError

LOWER = 'lower'
UPPER = 'upper'


@njit(nogil=True, cache=True)
def _ladder_matches(x):
    n = x.size - 1
    stack = np.empty(n + 1, dtype=np.int64)
    out = np.empty((n + 1, 2), dtype=np.int64)
    top = 0
    count = 0
    for j in range(1, n + 1):
        if x[j] > x[j - 1]:
            stack[top] = j - 1
            top += 1
        elif top > 0:
            top -= 1
            out[count, 0] = stack[top]
            out[count, 1] = j
            count += 1
    return out[:count].copy()


@dataclass(frozen=True, eq=False)
class ChordSystem:
    """
    Non-crossing matches (i, j), i < j, of a +-1 walk X with X_i = X_j < X_s for all i < s < j, sorted by i.
    The lower system is read from R, the upper one from L.
    """
    side: str
    n: int
    matches: np.ndarray

    def __len__(self):
        return self.matches.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ChordSystem):
            return NotImplemented
        return self.side == other.side and self.n == other.n and np.array_equal(self.matches, other.matches)

    __hash__ = None


def assert_non_crossing(matches: np.ndarray):
    """Raises `StructureError` if two matches (i, j), (k, l) satisfy i < k < j < l."""
    open_ends = []
    for i, j in matches[np.argsort(matches[:, 0], kind='stable')]:
        while open_ends and open_ends[-1] <= i:
            open_ends.pop()
        if open_ends and open_ends[-1] < j:
            raise StructureError(f"chord ({i}, {j}) crosses a chord ending at {open_ends[-1]}")
        open_ends.append(j)


def tree_chords(walk: np.ndarray, side: str) -> ChordSystem:
    """
    Matches every down-step of the walk with the most recent unmatched up-step (a Dyck-style stack), which pairs
    i < j with equal values and strictly larger values in between.
    """
    if side not in (LOWER, UPPER):
        raise DomainError(f"side must be {LOWER!r} or {UPPER!r}, got {side!r}")
    walk = np.asarray(walk, dtype=np.float64)
    if walk.ndim != 1 or walk.size < 1:
        raise DomainError("walk must be a non-empty 1-d array")
    if walk.size > 1 and not np.all(np.abs(np.diff(walk)) == 1):
        raise DomainError("chords are only defined for +-1 walks")
    matches = _ladder_matches(walk)
    matches = matches[np.argsort(matches[:, 0], kind='stable')]
    assert_non_crossing(matches)
    return ChordSystem(side=side, n=walk.size - 1, matches=matches)
