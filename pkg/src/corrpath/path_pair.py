from dataclasses import dataclass

import numpy as np

from src.corrpath.cov_spec import CovSpec
from src.errors import DomainError, ShapeError

BROWNIAN = 'brownian'
LATTICE = 'lattice'
KINDS = (BROWNIAN, LATTICE)


@dataclass(frozen=True)
class Window:
    """Closed index window [a, b] of a path."""
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < self.a:
            raise DomainError(f"invalid window [{self.a}, {self.b}]")

    def __len__(self):
        return self.b - self.a + 1

    def indices(self) -> np.ndarray:
        return np.arange(self.a, self.b + 1)

    def contains(self, a: int, b: int) -> bool:
        return self.a <= a and b <= self.b

    @classmethod
    def from_fractions(cls, n: int, a: float, b: float) -> 'Window':
        return cls(int(round(a * n)), int(round(b * n)))


@dataclass(frozen=True, eq=False)
class PathPair:
    """
    A sampled two-dimensional path Z = (L, R) on the index grid 0..n, index k sitting at time k * dt.

    The value arrays are made read-only on construction.
    """
    spec: CovSpec
    dt: float
    L: np.ndarray
    R: np.ndarray
    kind: str = BROWNIAN

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown path kind {self.kind!r}, choose one of {KINDS}")
        if not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        L = np.ascontiguousarray(self.L, dtype=np.float64)
        R = np.ascontiguousarray(self.R, dtype=np.float64)
        if L.ndim != 1 or L.shape != R.shape:
            raise ShapeError(f"L and R must be 1-d arrays of identical length, got {L.shape} and {R.shape}")
        if L.size < 1:
            raise ShapeError("a path needs at least one value")
        L.setflags(write=False)
        R.setflags(write=False)
        object.__setattr__(self, 'L', L)
        object.__setattr__(self, 'R', R)

    @property
    def n(self) -> int:
        return self.L.size - 1

    @property
    def full_window(self) -> Window:
        return Window(0, self.n)

    def increments(self):
        return np.diff(self.L), np.diff(self.R)

    def check_window(self, w: Window) -> Window:
        if w.b > self.n:
            raise DomainError(f"window [{w.a}, {w.b}] exceeds path length {self.n}")
        return w

    def __eq__(self, other):
        if not isinstance(other, PathPair):
            return NotImplemented
        return (self.spec == other.spec and self.dt == other.dt and self.kind == other.kind
                and np.array_equal(self.L, other.L) and np.array_equal(self.R, other.R))

    __hash__ = None
