"""Interconnection data model: one vertex set, two labeled edge sets.

Vertices are numbered 1..q.  Edges are unordered pairs stored as (k, l) with
k < l; the incidence convention puts +1 at the smaller endpoint, so column
(k, l) is e_k - e_l.  Edge lists keep their input order, which fixes column
order everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


def _check_vertex(q: int, v: int) -> None:
    if not isinstance(v, (int, np.integer)):
        raise TypeError(f"vertex index must be an integer, got {v!r}")
    if not 1 <= v <= q:
        raise ValueError(f"vertex {v} out of range [1, {q}]")


def normalize_edge(q: int, i: int, j: int) -> Edge:
    """Validate and return the pair as (min, max)."""
    _check_vertex(q, i)
    _check_vertex(q, j)
    if i == j:
        raise ValueError(f"self-loop at vertex {i} is not allowed")
    return (i, j) if i < j else (j, i)


def normalize_edges(q: int, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    """Normalize an edge list, rejecting duplicates within the list."""
    out: list[Edge] = []
    seen: set[Edge] = set()
    for e in edges:
        i, j = e
        ne = normalize_edge(q, int(i), int(j))
        if ne in seen:
            raise ValueError(f"duplicate edge {{{ne[0]},{ne[1]}}}")
        seen.add(ne)
        out.append(ne)
    return tuple(out)


@dataclass(frozen=True)
class Interconnection:
    """A vertex set with a dissipative and a restorative edge list.

    The two lists may overlap; ``reduce`` removes shared pairs from the
    restorative side.  q >= 2.
    """

    q: int
    dissipative_edges: tuple[Edge, ...]
    restorative_edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        object.__setattr__(
            self, "dissipative_edges", normalize_edges(self.q, self.dissipative_edges)
        )
        object.__setattr__(
            self, "restorative_edges", normalize_edges(self.q, self.restorative_edges)
        )

    @property
    def p_d(self) -> int:
        return len(self.dissipative_edges)

    @property
    def p_r(self) -> int:
        return len(self.restorative_edges)

    @property
    def union_edges(self) -> tuple[Edge, ...]:
        """Dissipative edges, then restorative edges not already present."""
        seen = set(self.dissipative_edges)
        extra = tuple(e for e in self.restorative_edges if e not in seen)
        return self.dissipative_edges + extra

    @property
    def is_reduced(self) -> bool:
        return not set(self.dissipative_edges) & set(self.restorative_edges)


def incidence(q: int, edges: Sequence[Sequence[int]]) -> np.ndarray:
    """q x p incidence matrix; column (k, l), k < l, equals e_k - e_l.

    Returns an int64 array; shape (q, 0) for an empty edge list.
    """
    norm = normalize_edges(q, edges)
    g = np.zeros((q, len(norm)), dtype=np.int64)
    for c, (k, l) in enumerate(norm):
        g[k - 1, c] = 1
        g[l - 1, c] = -1
    return g


@dataclass(frozen=True)
class ComponentPartition:
    """Connected-component labeling; component ids are 1-based and ordered
    by each component's smallest vertex."""

    count: int
    assignment: tuple[int, ...]  # assignment[v-1] = component id of vertex v

    def members(self, cid: int) -> tuple[int, ...]:
        return tuple(v + 1 for v, c in enumerate(self.assignment) if c == cid)


def components(q: int, edges: Sequence[Sequence[int]]) -> ComponentPartition:
    """Connected components of (V, edges) over all q vertices."""
    norm = normalize_edges(q, edges)
    parent = list(range(q + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, l in norm:
        ra, rb = find(k), find(l)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    label: dict[int, int] = {}
    assignment = []
    for v in range(1, q + 1):
        r = find(v)
        if r not in label:
            label[r] = len(label) + 1
        assignment.append(label[r])
    return ComponentPartition(count=len(label), assignment=tuple(assignment))


def is_connected(q: int, edges: Sequence[Sequence[int]]) -> bool:
    """True iff (V, edges) has a single connected component."""
    return components(q, edges).count == 1


def reduce(ic: Interconnection) -> Interconnection:
    """Drop restorative edges that also appear dissipatively.

    Keeps restorative order; idempotent; leaves the union graph unchanged.
    """
    shared = set(ic.dissipative_edges)
    kept = tuple(e for e in ic.restorative_edges if e not in shared)
    return Interconnection(ic.q, ic.dissipative_edges, kept)
