"""Edge orderings and the adic successor machine on finite paths.

An ordering labels the incoming edges of every vertex bijectively with
1..indegree.  Root-to-v paths then carry the usual odometer structure: the
successor finds the lowest non-maximal edge, bumps it to the next label, and
restarts everything below it at the minimal path into the new source.  Paths
to the same terminal vertex form a tower, ordered by deepest-differing-edge
comparison; rank and unrank convert between a path and its tower position.

All of this is finite-horizon: a path maximal up to its terminal vertex has
no successor here, because the infinite-diagram successor would depend on
edges below the horizon.  Callers that simulate orbits must treat those
boundaries as censoring (see the probe module).
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import chain
from typing import Iterator, Mapping

from .core import Diagram, EdgeRef, Vertex
from .errors import (
    MaximalAtHorizon,
    MinimalAtHorizon,
    NonBijectiveLabeling,
    RankOutOfRange,
    TowerTooLarge,
)

DEFAULT_TOWER_BUDGET = 10**6


@dataclass(frozen=True)
class FinitePath:
    """A root-to-`terminal` edge path; empty exactly at the root itself."""

    terminal: Vertex
    edges: tuple[EdgeRef, ...]

    def __post_init__(self) -> None:
        if self.edges:
            if self.edges[0].source.level != 0:
                raise ValueError("path must start at the root")
            if self.edges[-1].target != self.terminal:
                raise ValueError("path does not end at its terminal vertex")
            for a, b in zip(self.edges, self.edges[1:]):
                if a.target != b.source:
                    raise ValueError("path edges are not contiguous")
        elif self.terminal.level != 0:
            raise ValueError("empty path must sit at the root")

    @property
    def level(self) -> int:
        return len(self.edges)

    def vertices(self) -> tuple[Vertex, ...]:
        """Root through terminal, one vertex per level."""
        if not self.edges:
            return (self.terminal,)
        return (self.edges[0].source,) + tuple(e.target for e in self.edges)

    def to_json(self) -> list:
        return [e.to_json() for e in self.edges]


def k_coding_symbol(x: FinitePath, k: int) -> tuple:
    """The first k edges of x as a hashable, comparable symbol.

    Two paths get equal symbols exactly when their first k edges coincide.
    """
    if not 0 <= k <= x.level:
        raise ValueError(f"k must lie in 0..{x.level}, got {k}")
    return tuple((e.target.coords, e.copy) for e in x.edges[:k])


@dataclass(frozen=True)
class Tower:
    """All dim(v) root-to-v paths in successor order (rank 0 is minimal)."""

    vertex: Vertex
    paths: tuple[FinitePath, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self) -> Iterator[FinitePath]:
        return iter(self.paths)

    def __getitem__(self, rank: int) -> FinitePath:
        return self.paths[rank]


def _mix(seed: int, v: Vertex) -> int:
    """Stable per-vertex RNG seed, independent of traversal order."""
    key = (seed or 0) & 0xFFFFFFFFFFFFFFFF
    for part in (v.level, *v.coords):
        key = (key * 1000003 + part + 0x9E3779B9) & 0xFFFFFFFFFFFFFFFF
    return key


class Ordering:
    """A labeling of every vertex's incoming edges with 1..indegree.

    Presets: "source-lex" (sources in ascending lexicographic order, then
    copy), "source-revlex" (sources in canonical descending order), and
    "random" (a seeded shuffle, derived per vertex so labels do not depend
    on evaluation order).  An explicit table overrides chosen vertices: it
    maps "level:c1,c2,..." to the list of labels given to the source-lex
    enumeration of incoming edges.
    """

    def __init__(
        self,
        diagram: Diagram,
        preset: str = "source-lex",
        seed: int | None = None,
        table: Mapping[str, list[int]] | None = None,
    ) -> None:
        if preset not in ("source-lex", "source-revlex", "random", "explicit"):
            raise ValueError(f"unknown ordering preset {preset!r}")
        if preset == "random" and seed is None:
            seed = 0
        if preset == "explicit" and table is None:
            raise ValueError("explicit ordering needs a table")
        self.diagram = diagram
        self.preset = preset
        self.seed = seed
        self.table = dict(table) if table else {}
        self._edges_in: dict[Vertex, tuple[EdgeRef, ...]] = {}
        self._label: dict[Vertex, dict[EdgeRef, int]] = {}
        self._minimal: dict[Vertex, FinitePath] = {}
        self._maximal: dict[Vertex, FinitePath] = {}
        self._prefix_dims: dict[Vertex, list[int]] = {}
        self._coding: dict[tuple[Vertex, int], tuple[Vertex, ...]] = {}

    def describe(self) -> dict:
        if self.preset == "explicit":
            return {"explicit": self.table}
        out: dict = {"preset": self.preset}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def _base_edges(self, w: Vertex) -> list[EdgeRef]:
        sources = sorted(self.diagram.source_set(w), key=lambda v: v.coords)
        return [
            EdgeRef(u, w, c)
            for u in sources
            for c in range(1, self.diagram.multiplicity(u, w) + 1)
        ]

    def edges_in(self, w: Vertex) -> tuple[EdgeRef, ...]:
        """Incoming edges of w in label order (position k holds label k + 1)."""
        if w not in self._edges_in:
            base = self._base_edges(w)
            key = f"{w.level}:{','.join(map(str, w.coords))}"
            if key in self.table:
                perm = self.table[key]
                if sorted(perm) != list(range(1, len(base) + 1)):
                    raise NonBijectiveLabeling(
                        f"labels for {key} are {perm}, not a permutation of 1..{len(base)}"
                    )
                ordered: list[EdgeRef | None] = [None] * len(base)
                for edge, label in zip(base, perm):
                    ordered[label - 1] = edge
                base = ordered  # type: ignore[assignment]
            elif self.preset == "source-revlex":
                base.reverse()
            elif self.preset == "random":
                random.Random(_mix(self.seed, w)).shuffle(base)
            self._edges_in[w] = tuple(base)
            self._label[w] = {e: i + 1 for i, e in enumerate(base)}
        return self._edges_in[w]

    def label_of(self, edge: EdgeRef) -> int:
        self.edges_in(edge.target)
        return self._label[edge.target][edge]

    def indegree(self, w: Vertex) -> int:
        return len(self.edges_in(w))

    def minimal_path(self, v: Vertex) -> FinitePath:
        """The all-label-1 path into v."""
        if v not in self._minimal:
            edges = []
            current = v
            while current.level > 0:
                e = self.edges_in(current)[0]
                edges.append(e)
                current = e.source
            self._minimal[v] = FinitePath(v, tuple(reversed(edges)))
        return self._minimal[v]

    def maximal_path(self, v: Vertex) -> FinitePath:
        """The all-maximal-label path into v."""
        if v not in self._maximal:
            edges = []
            current = v
            while current.level > 0:
                e = self.edges_in(current)[-1]
                edges.append(e)
                current = e.source
            self._maximal[v] = FinitePath(v, tuple(reversed(edges)))
        return self._maximal[v]

    def successor(self, x: FinitePath) -> FinitePath:
        """Next path in the tower of x's terminal vertex.

        Finds the lowest edge with a higher-labeled sibling, advances it, and
        prepends the minimal path into the advanced edge's source.
        """
        for k, edge in enumerate(x.edges):
            labels = self.edges_in(edge.target)
            lab = self._label[edge.target][edge]
            if lab < len(labels):
                nxt = labels[lab]
                prefix = self.minimal_path(nxt.source).edges
                return FinitePath(x.terminal, prefix + (nxt,) + x.edges[k + 1 :])
        raise MaximalAtHorizon(f"no successor within the tower of {x.terminal}")

    def predecessor(self, x: FinitePath) -> FinitePath:
        """Inverse of successor; the advanced edge's source gets a maximal prefix."""
        for k, edge in enumerate(x.edges):
            self.edges_in(edge.target)
            lab = self._label[edge.target][edge]
            if lab > 1:
                prv = self.edges_in(edge.target)[lab - 2]
                prefix = self.maximal_path(prv.source).edges
                return FinitePath(x.terminal, prefix + (prv,) + x.edges[k + 1 :])
        raise MinimalAtHorizon(f"no predecessor within the tower of {x.terminal}")

    def _prefix(self, w: Vertex) -> list[int]:
        # prefix sums of source dimensions in label order; length indegree + 1
        if w not in self._prefix_dims:
            sums = [0]
            for e in self.edges_in(w):
                sums.append(sums[-1] + self.diagram.dimension(e.source))
            self._prefix_dims[w] = sums
        return self._prefix_dims[w]

    def path_rank(self, x: FinitePath) -> int:
        """Tower position of x: 0 for the minimal path, dim - 1 for the maximal."""
        rank = 0
        for edge in x.edges:
            self.edges_in(edge.target)
            rank += self._prefix(edge.target)[self._label[edge.target][edge] - 1]
        return rank

    def path_unrank(self, v: Vertex, rank: int) -> FinitePath:
        """The rank-th path of v's tower; inverse of path_rank."""
        if not 0 <= rank < self.diagram.dimension(v):
            raise RankOutOfRange(
                f"rank {rank} outside 0..{self.diagram.dimension(v) - 1} for {v}"
            )
        edges = []
        current = v
        while current.level > 0:
            sums = self._prefix(current)
            idx = bisect_right(sums, rank) - 1
            edge = self.edges_in(current)[idx]
            rank -= sums[idx]
            edges.append(edge)
            current = edge.source
        return FinitePath(v, tuple(reversed(edges)))

    def iter_tower(self, v: Vertex) -> Iterator[FinitePath]:
        """Yield the tower of v in successor order without materializing it."""
        x = self.minimal_path(v)
        yield x
        for _ in range(self.diagram.dimension(v) - 1):
            x = self.successor(x)
            yield x

    def tower(self, v: Vertex, budget: int = DEFAULT_TOWER_BUDGET) -> Tower:
        dim = self.diagram.dimension(v)
        if dim > budget:
            raise TowerTooLarge(f"dimension {dim} of {v} exceeds budget {budget}")
        return Tower(v, tuple(self.iter_tower(v)))

    def vertex_coding(self, w: Vertex, j: int) -> tuple[Vertex, ...]:
        """The level-j sources of all level-j-to-w segments, in segment order.

        Segments are ordered by their deepest differing edge, which makes the
        word the label-order concatenation of the codings of w's sources.  At
        j = level - 1 this is just the incoming sources in label order, each
        repeated by multiplicity.
        """
        if not 0 <= j < w.level:
            raise ValueError(f"need 0 <= j < level {w.level}, got {j}")
        key = (w, j)
        if key not in self._coding:
            if w.level == j + 1:
                word = tuple(e.source for e in self.edges_in(w))
            else:
                word = tuple(
                    chain.from_iterable(
                        self.vertex_coding(e.source, j) for e in self.edges_in(w)
                    )
                )
            self._coding[key] = word
        return self._coding[key]

    def basic_block(self, v: Vertex, k: int, budget: int = DEFAULT_TOWER_BUDGET) -> tuple[tuple, ...]:
        """k-symbols of the tower of v, rank by rank."""
        return tuple(k_coding_symbol(x, k) for x in self.tower(v, budget))


def make_ordering(diagram: Diagram, spec: str | Mapping | None = None) -> Ordering:
    """Build an ordering from a preset name or its JSON description."""
    if spec is None:
        return Ordering(diagram)
    if isinstance(spec, str):
        return Ordering(diagram, preset=spec)
    if "explicit" in spec:
        return Ordering(diagram, preset="explicit", table=spec["explicit"])
    return Ordering(diagram, preset=spec.get("preset", "source-lex"), seed=spec.get("seed"))
