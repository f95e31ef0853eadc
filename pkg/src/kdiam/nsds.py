"""Neighbour-set structures: persistent families of vertex sets under
AddNeighbours / ListDifferences, plus the naive reference implementation.

The implicit diameter algorithm is written against the abstract interface
only; the geometric structure in :mod:`kdiam.plane` is the other
implementation.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .hashing import draw_fingerprints

_structure_ids = itertools.count()


@dataclass(frozen=True)
class SetHandle:
    """Opaque immutable reference to a registered set.  Index 0 is the empty
    set; the set a handle denotes never changes."""

    owner_id: int
    index: int


class NeighbourSetStructure(ABC):
    """Persistent family of vertex subsets of a fixed graph.

    Supports exactly two operations: extend a set by a closed neighborhood,
    and list the symmetric difference of two sets (output-sensitively for
    the efficient implementations).
    """

    def __init__(self, n: int):
        self.n = n
        self._id = next(_structure_ids)
        self.add_count = 0
        self.list_count = 0

    @property
    def empty(self) -> SetHandle:
        return SetHandle(self._id, 0)

    def _check_handle(self, h: SetHandle, n_versions: int) -> None:
        if not isinstance(h, SetHandle) or h.owner_id != self._id:
            raise ValueError("handle belongs to a different structure")
        if not 0 <= h.index < n_versions:
            raise ValueError(f"invalid handle index {h.index}")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    @abstractmethod
    def add_neighbours(self, h: SetHandle, v: int) -> SetHandle:
        """New handle denoting set(h) union N[v]; ``h`` stays valid."""

    @abstractmethod
    def list_differences(self, h1: SetHandle, h2: SetHandle) -> list:
        """The symmetric difference set(h1) symdiff set(h2), each element
        exactly once, in no particular order."""


class NaiveNeighbourSets(NeighbourSetStructure):
    """Reference implementation backed by frozensets plus XOR fingerprints.

    Meets the interface contract but not the sub-linear cost bounds; it is
    the oracle for the efficient structure and the backend for running the
    implicit algorithm on explicit graphs.
    """

    def __init__(self, g: Graph, seed: int = 0):
        super().__init__(g.n)
        rng = np.random.default_rng(seed)
        self._hash = draw_fingerprints(rng, g.n)
        self._closed = [frozenset(g.adjacency[v]) | {v} for v in range(g.n)]
        self._sets = [frozenset()]
        self._fps = [0]

    def add_neighbours(self, h: SetHandle, v: int) -> SetHandle:
        self._check_handle(h, len(self._sets))
        self._check_vertex(v)
        self.add_count += 1
        base = self._sets[h.index]
        new = base | self._closed[v]
        fp = self._fps[h.index]
        for u in new - base:
            fp ^= self._hash[u]
        self._sets.append(new)
        self._fps.append(fp)
        return SetHandle(self._id, len(self._sets) - 1)

    def list_differences(self, h1: SetHandle, h2: SetHandle) -> list:
        self._check_handle(h1, len(self._sets))
        self._check_handle(h2, len(self._sets))
        self.list_count += 1
        if self._fps[h1.index] == self._fps[h2.index]:
            return []
        return sorted(self._sets[h1.index] ^ self._sets[h2.index])

    def set_of(self, h: SetHandle) -> frozenset:
        """Test hook: the actual set behind a handle."""
        self._check_handle(h, len(self._sets))
        return self._sets[h.index]
