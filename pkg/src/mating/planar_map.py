import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.errors import ShapeError, StructureError
from src.mating.chords import LOWER, UPPER, ChordSystem

# counterclockwise order of the half-edge directions at a spine vertex, starting east
EAST, UPPER_RIGHT, UPPER_LEFT, WEST, LOWER_LEFT, LOWER_RIGHT = range(6)


def _orbit_count(permutation: np.ndarray) -> int:
    size = permutation.size
    if size == 0:
        return 0
    graph = csr_matrix((np.ones(size), (np.arange(size), permutation)), shape=(size, size))
    count, _ = connected_components(graph, directed=True, connection='weak')
    return int(count)


@dataclass(frozen=True, eq=False)
class PlanarMap:
    """
    Rotation system on half-edges: `sigma[h]` is the next half-edge counterclockwise around the vertex of h and
    `iota[h]` the other half of the edge of h. Faces are the orbits of sigma after iota.
    """
    sigma: np.ndarray
    iota: np.ndarray
    vertex: np.ndarray

    @property
    def half_edge_count(self) -> int:
        return self.sigma.size

    @property
    def E(self) -> int:
        return self.half_edge_count // 2

    @property
    def V(self) -> int:
        return int(np.unique(self.vertex).size)

    @property
    def F(self) -> int:
        return _orbit_count(self.sigma[self.iota])

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]], iota: Sequence[int]) -> 'PlanarMap':
        """
        :param rotations: for every vertex, its half-edges in counterclockwise order.
        :param iota: twin of every half-edge.
        """
        iota = np.asarray(iota, dtype=np.int64)
        sigma = np.full(iota.size, -1, dtype=np.int64)
        vertex = np.full(iota.size, -1, dtype=np.int64)
        for v, rotation in enumerate(rotations):
            rotation = np.asarray(rotation, dtype=np.int64)
            sigma[rotation] = np.roll(rotation, -1)
            vertex[rotation] = v
        return cls(sigma=sigma, iota=iota, vertex=vertex)

    def validate(self):
        size = self.half_edge_count
        ids = np.arange(size)
        if self.iota.shape != (size,) or self.vertex.shape != (size,):
            raise StructureError("sigma, iota and vertex must have one entry per half-edge")
        if size % 2:
            raise StructureError(f"odd number of half-edges: {size}")
        if np.any((self.iota < 0) | (self.iota >= size)) or np.any(self.iota[self.iota] != ids) \
                or np.any(self.iota == ids):
            raise StructureError("iota is not a fixed-point-free involution")
        if np.any(self.sigma < 0) or np.any(np.sort(self.sigma) != ids):
            raise StructureError("sigma is not a permutation of the half-edges")
        if np.any(self.vertex[self.sigma] != self.vertex):
            raise StructureError("sigma moves a half-edge to another vertex")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'half_edge': np.arange(self.half_edge_count), 'twin': self.iota,
                             'next_at_vertex': self.sigma, 'vertex': self.vertex})

    def export(self, edges_destination: Union[str, Path], summary_destination: Union[str, Path]):
        self.to_frame().to_csv(edges_destination, index=False)
        V, E, F, genus = euler_genus(self)
        with open(summary_destination, 'w') as handle:
            json.dump({'V': V, 'E': E, 'F': F, 'genus': genus}, handle, indent=4)


def euler_genus(planar_map: PlanarMap):
    """
    :return: (V, E, F, genus) with genus = (2 - V + E - F) / 2.
    """
    planar_map.validate()
    V, E, F = planar_map.V, planar_map.E, planar_map.F
    twice_genus = 2 - V + E - F
    if twice_genus % 2:
        raise StructureError(f"odd Euler defect {twice_genus} for V={V}, E={E}, F={F}")
    return V, E, F, twice_genus // 2


def _rotation_system(n: int, lower: np.ndarray, upper: np.ndarray) -> PlanarMap:
    """
    Half-edge numbering: edge e has half-edges 2e (smaller endpoint) and 2e + 1 (larger endpoint); spine edges
    (i, i + 1) come first, then lower chords, then upper chords, each in the given order.
    """
    spine = np.column_stack([np.arange(n), np.arange(1, n + 1)])
    edges = np.vstack([spine, lower.reshape(-1, 2), upper.reshape(-1, 2)]).astype(np.int64)
    kinds = np.concatenate([np.zeros(n, dtype=np.int64), np.ones(len(lower), dtype=np.int64),
                            np.full(len(upper), 2, dtype=np.int64)])
    size = 2 * edges.shape[0]
    vertex = edges.reshape(-1)
    other = edges[:, ::-1].reshape(-1)
    kind = np.repeat(kinds, 2)
    to_right = other > vertex

    direction = np.empty(size, dtype=np.int64)
    direction[(kind == 0) & to_right] = EAST
    direction[(kind == 0) & ~to_right] = WEST
    direction[(kind == 2) & to_right] = UPPER_RIGHT
    direction[(kind == 2) & ~to_right] = UPPER_LEFT
    direction[(kind == 1) & ~to_right] = LOWER_LEFT
    direction[(kind == 1) & to_right] = LOWER_RIGHT
    # nested arcs leave a vertex in order of their far endpoint; the sign turns that into counterclockwise order
    within = np.where((direction == LOWER_LEFT) | (direction == LOWER_RIGHT), -other, other)

    order = np.lexsort((within, direction, vertex))
    group_start = np.r_[True, vertex[order][1:] != vertex[order][:-1]]
    starts = np.flatnonzero(group_start)
    ends = np.r_[starts[1:], size]
    successor = np.roll(order, -1)
    successor[ends - 1] = order[starts]
    sigma = np.empty(size, dtype=np.int64)
    sigma[order] = successor
    iota = np.arange(size) ^ 1
    return PlanarMap(sigma=sigma, iota=iota, vertex=vertex)


def mate(lower: ChordSystem, upper: ChordSystem, n: int) -> PlanarMap:
    """
    Discrete mating: vertices 0..n on a horizontal spine, one edge per spine step, lower chords drawn below the spine
    and upper chords above it.
    """
    if lower.side != LOWER or upper.side != UPPER:
        raise ShapeError(f"expected a lower and an upper chord system, got {lower.side} and {upper.side}")
    if lower.n != n or upper.n != n:
        raise ShapeError(f"chord systems of lengths {lower.n} and {upper.n} cannot be mated on {n} steps")
    if n < 1:
        raise ShapeError("mating needs at least one step")
    return _rotation_system(n, lower.matches, upper.matches)


def rotation_lists(planar_map: PlanarMap) -> List[List[int]]:
    """Counterclockwise half-edge lists per vertex, starting from the smallest half-edge."""
    rotations = []
    for v in np.unique(planar_map.vertex):
        first = int(np.flatnonzero(planar_map.vertex == v)[0])
        rotation = [first]
        h = int(planar_map.sigma[first])
        while h != first:
            rotation.append(h)
            h = int(planar_map.sigma[h])
        rotations.append(rotation)
    return rotations
