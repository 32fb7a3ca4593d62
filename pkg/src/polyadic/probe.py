"""Exhaustive finite-horizon search for depth-i coding conflicts.

A depth-i pair is two points on distinct orbits whose i-codings (the sequence
of first-i-edge symbols along the orbit) agree everywhere while their
(i+1)-codings differ.  At a finite horizon L we can only approximate this:
every pair of level-L paths sharing their first i edges is simulated forward
with the successor and backward with the predecessor, simultaneously on both
paths, within their terminal vertices' towers.

The first simulated time whose i-symbols differ kills the pair: no infinite
extensions of these two paths can form a depth-i pair, which is the evidence
the search accumulates.  A pair that reaches a tower boundary in both
directions without a mismatch is censored: the horizon ran out before the
pair was resolved.  Censored survivors whose (i+1)-symbols differ somewhere
in the observed window are reported as genuine conflicts - they look exactly
like depth-i pairs as far as this horizon can see.  An uncensored genuine
conflict would need an infinite window, so any entry in that bucket is a
soundness bug; reports keep the bucket so the claim is checkable.

The per-pair simulation never builds paths: the i-symbol of the rank-m tower
path is position m of the tower's i-symbol block, so stepping a pair is
scanning two integer arrays at rank offsets.  The test suite replays sampled
pairs with the raw successor machine to pin the equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import Vertex
from .vershik import Ordering


@dataclass(frozen=True)
class PathRef:
    """A level-L path named by its terminal vertex and tower rank."""

    terminal: Vertex
    rank: int

    def to_json(self) -> dict:
        return {"terminal": list(self.terminal.coords), "rank": self.rank}


@dataclass(frozen=True)
class ProbeCandidate:
    """One surviving pair with everything observed about it."""

    x: PathRef
    x_prime: PathRef
    divergence_level: int
    forward_steps: int
    backward_steps: int
    censored_forward: bool
    censored_backward: bool
    conflict_times: tuple[int, ...]
    min_coord_trace: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def same_terminal(self) -> bool:
        return self.x.terminal == self.x_prime.terminal

    @property
    def censored(self) -> bool:
        return self.censored_forward or self.censored_backward

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "x_prime": self.x_prime.to_json(),
            "divergence_level": self.divergence_level,
            "window": [-self.backward_steps, self.forward_steps],
            "censored": {
                "forward": self.censored_forward,
                "backward": self.censored_backward,
            },
            "conflict_times": list(self.conflict_times),
            "min_coord_trace": [list(t) for t in self.min_coord_trace],
        }


@dataclass(frozen=True)
class ProbeReport:
    """Outcome counts plus every surviving pair, for one (i, L, floor) run."""

    i: int
    horizon: int
    floor: int
    budget: int
    candidates: int
    coding_killed: int
    censored: int
    skipped_towers: int
    survivors: tuple[ProbeCandidate, ...]
    max_killed_window: int

    @property
    def genuine_conflicts(self) -> tuple[ProbeCandidate, ...]:
        return tuple(c for c in self.survivors if c.conflict_times)

    @property
    def uncensored_genuine_conflicts(self) -> tuple[ProbeCandidate, ...]:
        return tuple(c for c in self.genuine_conflicts if not c.censored)

    @property
    def same_terminal_survivors(self) -> tuple[ProbeCandidate, ...]:
        return tuple(c for c in self.survivors if c.same_terminal)

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "L": self.horizon,
            "floor": self.floor,
            "budget": self.budget,
            "candidates": self.candidates,
            "coding_killed": self.coding_killed,
            "censored": self.censored,
            "skipped_towers": self.skipped_towers,
            "max_killed_window": self.max_killed_window,
            "genuine_conflicts": [c.to_json() for c in self.genuine_conflicts],
            "uncensored_genuine_conflicts": [
                c.to_json() for c in self.uncensored_genuine_conflicts
            ],
            "survivors_without_conflict": sum(
                1 for c in self.survivors if not c.conflict_times
            ),
            "same_terminal_survivors": len(self.same_terminal_survivors),
        }


def _symbol_blocks(
    ordering: Ordering, k: int, horizon: int, admitted: list[Vertex], budget: int
) -> dict[Vertex, np.ndarray]:
    """Tower k-symbol blocks for the admitted level-`horizon` vertices.

    Symbols are integer ids, one per distinct level-k path; block position m
    holds the id of the first k edges of the rank-m tower path.  Built level
    by level: a block is the label-order concatenation of its sources' blocks.
    """
    diagram = ordering.diagram
    blocks: dict[Vertex, np.ndarray] = {}
    offset = 0
    for v in diagram.vertices(k):
        dim = diagram.dimension(v)
        blocks[v] = np.arange(offset, offset + dim, dtype=np.int64)
        offset += dim
    for level in range(k + 1, horizon + 1):
        nxt: dict[Vertex, np.ndarray] = {}
        for v in diagram.vertices(level):
            if diagram.dimension(v) > budget:
                continue
            nxt[v] = np.concatenate([blocks[e.source] for e in ordering.edges_in(v)])
        blocks = nxt
    return {v: blocks[v] for v in admitted}


def _divergence_level(ordering: Ordering, a: PathRef, b: PathRef) -> int:
    xa = ordering.path_unrank(a.terminal, a.rank)
    xb = ordering.path_unrank(b.terminal, b.rank)
    for idx, (ea, eb) in enumerate(zip(xa.edges, xb.edges)):
        if ea != eb:
            return idx + 1
    return max(xa.level, xb.level)


def _trace(ordering: Ordering, ref: PathRef) -> tuple[int, ...]:
    path = ordering.path_unrank(ref.terminal, ref.rank)
    return tuple(v.min_coord for v in path.vertices())


def probe_depth_pairs(
    ordering: Ordering,
    i: int,
    horizon: int,
    min_coord_floor: int = 0,
    budget: int = 10**6,
) -> ProbeReport:
    """Simulate every admissible pair of level-`horizon` paths sharing i edges.

    Pairs are enumerated over terminal vertices whose minimum coordinate is
    at least `min_coord_floor` (a finite stand-in for restricting to dense
    orbits) and whose towers fit the `budget`; oversized towers are counted
    as skipped, not errors.  See the module docstring for kill and censor
    semantics.
    """
    if i < 0 or horizon < 1:
        raise ValueError("need i >= 0 and horizon >= 1")
    diagram = ordering.diagram
    all_terminals = diagram.vertices(horizon)
    skipped = sum(1 for v in all_terminals if diagram.dimension(v) > budget)
    admitted = [
        v
        for v in all_terminals
        if v.min_coord >= min_coord_floor and diagram.dimension(v) <= budget
    ]
    if i >= horizon:
        return ProbeReport(i, horizon, min_coord_floor, budget, 0, 0, 0, skipped, (), 0)

    blocks_i = _symbol_blocks(ordering, i, horizon, admitted, budget)
    blocks_i1 = _symbol_blocks(ordering, i + 1, horizon, admitted, budget)
    dims = {v: diagram.dimension(v) for v in admitted}

    # group every (terminal, rank) by its i-symbol id; pairs live inside groups
    groups: dict[int, list[tuple[int, int]]] = {}
    for vi, v in enumerate(admitted):
        for rank, sym in enumerate(blocks_i[v]):
            groups.setdefault(int(sym), []).append((vi, rank))

    candidates = 0
    killed = 0
    max_killed_window = 0
    survivors: list[ProbeCandidate] = []

    for sym in sorted(groups):
        members = groups[sym]
        for p in range(len(members)):
            vi_a, r_a = members[p]
            va = admitted[vi_a]
            a_i, a_i1 = blocks_i[va], blocks_i1[va]
            dim_a = dims[va]
            for q in range(p + 1, len(members)):
                vi_b, r_b = members[q]
                vb = admitted[vi_b]
                b_i, b_i1 = blocks_i[vb], blocks_i1[vb]
                candidates += 1

                fwd_room = min(dim_a - 1 - r_a, dims[vb] - 1 - r_b)
                back_room = min(r_a, r_b)

                kill_fwd = 0  # first forward step with an i-mismatch, 0 if none
                if fwd_room:
                    seg = a_i[r_a + 1 : r_a + 1 + fwd_room] != b_i[r_b + 1 : r_b + 1 + fwd_room]
                    hit = np.argmax(seg)
                    if seg[hit]:
                        kill_fwd = int(hit) + 1
                kill_back = 0
                if back_room:
                    seg = (
                        a_i[r_a - back_room : r_a][::-1]
                        != b_i[r_b - back_room : r_b][::-1]
                    )
                    hit = np.argmax(seg)
                    if seg[hit]:
                        kill_back = int(hit) + 1

                if kill_fwd or kill_back:
                    killed += 1
                    lived_fwd = kill_fwd - 1 if kill_fwd else fwd_room
                    lived_back = kill_back - 1 if kill_back else back_room
                    max_killed_window = max(max_killed_window, lived_fwd + lived_back + 1)
                    continue

                lo_a, lo_b = r_a - back_room, r_b - back_room
                span = back_room + fwd_room + 1
                diff = np.nonzero(
                    a_i1[lo_a : lo_a + span] != b_i1[lo_b : lo_b + span]
                )[0]
                ref_a, ref_b = PathRef(va, r_a), PathRef(vb, r_b)
                survivors.append(
                    ProbeCandidate(
                        x=ref_a,
                        x_prime=ref_b,
                        divergence_level=_divergence_level(ordering, ref_a, ref_b),
                        forward_steps=fwd_room,
                        backward_steps=back_room,
                        censored_forward=True,
                        censored_backward=True,
                        conflict_times=tuple(int(t) - back_room for t in diff),
                        min_coord_trace=(_trace(ordering, ref_a), _trace(ordering, ref_b)),
                    )
                )

    return ProbeReport(
        i=i,
        horizon=horizon,
        floor=min_coord_floor,
        budget=budget,
        candidates=candidates,
        coding_killed=killed,
        censored=len(survivors),
        skipped_towers=skipped,
        survivors=tuple(survivors),
        max_killed_window=max_killed_window,
    )


def survival_profile(
    ordering: Ordering,
    i: int,
    horizons: Iterable[int],
    min_coord_floor: int = 0,
    budget: int = 10**6,
) -> list[dict]:
    """Probe a range of horizons and tabulate how fast pairs get killed."""
    rows = []
    for horizon in horizons:
        report = probe_depth_pairs(ordering, i, horizon, min_coord_floor, budget)
        max_censored = max(
            (c.forward_steps + c.backward_steps + 1 for c in report.survivors),
            default=0,
        )
        rows.append(
            {
                "L": horizon,
                "candidates": report.candidates,
                "coding_killed": report.coding_killed,
                "censored": report.censored,
                "genuine_conflicts": len(report.genuine_conflicts),
                "uncensored_genuine_conflicts": len(report.uncensored_genuine_conflicts),
                "same_terminal_survivors": len(report.same_terminal_survivors),
                "max_killed_window": report.max_killed_window,
                "max_censored_window": max_censored,
            }
        )
    return rows
