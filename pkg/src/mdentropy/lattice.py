"""Box and torus cross-section geometry.

A cross-section is a box <m> = <m_1> x ... x <m_k> of lattice points.
Points are indexed row-major with the first coordinate varying fastest,
so subsets of the section are plain bitmasks over point indices.

Adjacency comes in three modes: plain box edges, torus edges (every
direction wraps around), and a mixed form that wraps the first direction
only.  Wrapping a direction of extent 2 yields a single edge of
multiplicity 2, because the two wrap-around dimer placements between the
same pair of points are distinct configurations; extent 1 yields no edge
in that direction.  Protrusion slots count, per point, the outward dimer
placements available through the boundary faces of selected directions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import prod

MAX_MASK_POINTS = 64


class CapacityError(ValueError):
    """A requested computation exceeds the supported problem size."""


class AdjacencyMode(enum.Enum):
    BOX = "box"
    TORUS = "torus"
    WRAP_FIRST = "wrap_first"


@dataclass(frozen=True)
class LatticeShape:
    """Box of positive extents. Point index = sum_k (c_k - 1) * prod_{j<k} m_j."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(m) for m in self.dims))
        if not self.dims:
            raise ValueError("shape needs at least one dimension")
        if any(m < 1 for m in self.dims):
            raise ValueError(f"extents must be positive, got {self.dims}")
        if self.n > MAX_MASK_POINTS:
            raise CapacityError(
                f"{self.n} points exceed the {MAX_MASK_POINTS}-point mask limit"
            )

    @property
    def n(self) -> int:
        return prod(self.dims)

    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for m in self.dims:
            out.append(s)
            s *= m
        return tuple(out)

    def point_index(self, coords) -> int:
        """Index of the point with 1-based coordinates."""
        coords = tuple(coords)
        if len(coords) != len(self.dims):
            raise ValueError(f"expected {len(self.dims)} coordinates, got {coords}")
        index = 0
        for c, m, s in zip(coords, self.dims, self.strides()):
            if not 1 <= c <= m:
                raise ValueError(f"coordinate {c} outside 1..{m}")
            index += (c - 1) * s
        return index

    def point_coords(self, index: int) -> tuple[int, ...]:
        """1-based coordinates of a point index; inverse of point_index."""
        if not 0 <= index < self.n:
            raise ValueError(f"point index {index} outside 0..{self.n - 1}")
        coords = []
        for m in self.dims:
            index, c = divmod(index, m)
            coords.append(c + 1)
        return tuple(coords)


@dataclass(frozen=True)
class Adjacency:
    """Undirected multigraph on section points; each unordered pair stored once."""

    mode: AdjacencyMode
    n: int
    edges: tuple[tuple[int, int, int], ...]  # (i, j, multiplicity) with i < j

    def neighbor_lists(self) -> list[list[tuple[int, int]]]:
        """Per-point list of (neighbor, multiplicity), both directions."""
        nbr: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, j, mult in self.edges:
            nbr[i].append((j, mult))
            nbr[j].append((i, mult))
        return nbr


def build_adjacency(shape: LatticeShape, mode: AdjacencyMode) -> Adjacency:
    """Edges of the box, torus, or wrap-first multigraph on the section."""
    edges: list[tuple[int, int, int]] = []
    strides = shape.strides()
    for index in range(shape.n):
        coords = shape.point_coords(index)
        for k, m in enumerate(shape.dims):
            s = strides[k]
            wraps = mode is AdjacencyMode.TORUS or (
                mode is AdjacencyMode.WRAP_FIRST and k == 0
            )
            if wraps:
                if m >= 3:
                    if coords[k] < m:
                        edges.append((index, index + s, 1))
                    else:
                        edges.append((index - (m - 1) * s, index, 1))
                elif m == 2 and coords[k] == 1:
                    edges.append((index, index + s, 2))
                # m == 1: a wrapped dimer would cover one point twice
            elif coords[k] < m:
                edges.append((index, index + s, 1))
    edges.sort()
    pairs = [(i, j) for i, j, _ in edges]
    if len(set(pairs)) != len(pairs):
        raise AssertionError("duplicate edge pair in adjacency construction")
    return Adjacency(mode=mode, n=shape.n, edges=tuple(edges))


def protrusion_slots(shape: LatticeShape, directions) -> tuple[int, ...]:
    """Per-point count of outward dimer slots through the faces of `directions`.

    Directions are 1-based.  A point on the low face of a direction gets one
    slot, on the high face another; extent 1 puts the point on both faces.
    """
    dirs = sorted(set(int(k) for k in directions))
    for k in dirs:
        if not 1 <= k <= len(shape.dims):
            raise ValueError(f"direction {k} outside 1..{len(shape.dims)}")
    slots = [0] * shape.n
    for index in range(shape.n):
        coords = shape.point_coords(index)
        for k in dirs:
            if coords[k - 1] == 1:
                slots[index] += 1
            if coords[k - 1] == shape.dims[k - 1]:
                slots[index] += 1
    return tuple(slots)
