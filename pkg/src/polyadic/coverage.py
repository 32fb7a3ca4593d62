"""Covered vertices and source-set containment.

A vertex w is covered when some other vertex w' on the same level satisfies
S(w) subset-of S(w').  Covered vertices admit a closed form once the level
exceeds the number of variables: w is covered iff some coordinate exceeds
(level - 1) * d.  The oracle here recomputes coverage by exhaustive source-set
comparison so the closed form can be checked level by level; everything
downstream (chains, probes) consumes the oracle, not the formula.

Coverage depends only on the diagram shape, never on edge multiplicities.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

from .core import Coords, Diagram, Vertex, compositions_desc
from .errors import LadderPreconditionViolated, PreconditionNotMet

_COVER_CACHE: "weakref.WeakKeyDictionary[Diagram, dict[int, dict[Vertex, tuple[Vertex, ...]]]]"
_COVER_CACHE = weakref.WeakKeyDictionary()


def _covering_map(diagram: Diagram, level: int) -> dict[Vertex, tuple[Vertex, ...]]:
    """For each level-`level` vertex, the tuple of vertices covering it."""
    per_diagram = _COVER_CACHE.setdefault(diagram, {})
    if level not in per_diagram:
        vertices = diagram.vertices(level)
        sources = {w: frozenset(diagram.source_set(w)) for w in vertices}
        per_diagram[level] = {
            w: tuple(v for v in vertices if v != w and sources[w] <= sources[v])
            for w in vertices
        }
    return per_diagram[level]


def covering_vertices(diagram: Diagram, w: Vertex) -> tuple[Vertex, ...]:
    """All same-level vertices whose source set contains S(w), canonical order."""
    return _covering_map(diagram, w.level)[w]


def is_covered_oracle(diagram: Diagram, w: Vertex) -> bool:
    """Exhaustive covered test by direct source-set comparison."""
    return bool(_covering_map(diagram, w.level)[w])


def is_covered_formula(diagram: Diagram, w: Vertex) -> bool | None:
    """Closed-form covered test; None when the level is too low to apply.

    Valid for level > q: covered iff some coordinate exceeds (level - 1) * d.
    """
    if w.level <= diagram.arity:
        return None
    bound = (w.level - 1) * diagram.degree
    return any(c > bound for c in w.coords)


@dataclass(frozen=True)
class VertexCoverage:
    vertex: Vertex
    formula: bool | None
    oracle: bool
    covered_by: tuple[Vertex, ...]


@dataclass(frozen=True)
class CoverageReport:
    """Per-vertex coverage at one level, with formula-vs-oracle discrepancies."""

    level: int
    entries: tuple[VertexCoverage, ...]
    discrepancies: tuple[Vertex, ...]

    @property
    def covered_count(self) -> int:
        return sum(1 for e in self.entries if e.oracle)

    @property
    def uncovered_count(self) -> int:
        return len(self.entries) - self.covered_count

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "vertices": [
                {
                    "v": list(e.vertex.coords),
                    "formula": e.formula,
                    "oracle": e.oracle,
                    "covered_by": [list(c.coords) for c in e.covered_by],
                }
                for e in self.entries
            ],
            "discrepancies": [list(v.coords) for v in self.discrepancies],
        }


def coverage_report(diagram: Diagram, level: int) -> CoverageReport:
    entries = []
    bad = []
    for w in diagram.vertices(level):
        formula = is_covered_formula(diagram, w)
        oracle = is_covered_oracle(diagram, w)
        entries.append(VertexCoverage(w, formula, oracle, covering_vertices(diagram, w)))
        if formula is not None and formula != oracle:
            bad.append(w)
    return CoverageReport(level, tuple(entries), tuple(bad))


def _excess_direction(diagram: Diagram, w: Vertex) -> int | None:
    """The unique direction with w(j) > (level - 1) * d, if one exists."""
    bound = (w.level - 1) * diagram.degree
    for j in range(1, diagram.arity + 1):
        if w.coord(j) > bound:
            return j
    return None


def slack(diagram: Diagram, w: Vertex, j: int) -> int:
    """d minus the off-j coordinate sum; in 1..d when w(j) > (level - 1) * d."""
    return diagram.degree - (sum(w.coords) - w.coord(j))


def _predicted_cover_forward(diagram: Diagram, w: Vertex, j: int) -> set[Vertex]:
    """Covering set predicted with sigma = w' - w, sigma(j) in [-slack, -1]."""
    out = set()
    for b in range(1, slack(diagram, w, j) + 1):
        for spread in compositions_desc(b, diagram.arity - 1):
            coords = list(w.coords)
            coords[j - 1] -= b
            it = iter(spread)
            for idx in range(diagram.arity):
                if idx != j - 1:
                    coords[idx] += next(it)
            if all(c >= 0 for c in coords):
                out.add(Vertex(w.level, tuple(coords)))
    return out


def _predicted_cover_reverse(diagram: Diagram, w: Vertex, j: int) -> set[Vertex]:
    """Covering set read with sigma = w - w', sigma(j) in [-d, -1] literally."""
    out = set()
    for b in range(1, diagram.degree + 1):
        for spread in compositions_desc(b, diagram.arity - 1):
            coords = list(w.coords)
            coords[j - 1] += b
            it = iter(spread)
            ok = True
            for idx in range(diagram.arity):
                if idx != j - 1:
                    coords[idx] -= next(it)
                    ok = ok and coords[idx] >= 0
            if ok:
                out.add(Vertex(w.level, tuple(coords)))
    return out


@dataclass(frozen=True)
class Cov2Report:
    """Both sign conventions of the covering-set description against the oracle.

    The description fixes the direction j with w(j) > (level - 1) * d and
    claims the covering vertices are exactly w shifted by a vector sigma that
    drains 1..slack from coordinate j into the others.  Whether sigma means
    w' - w or w - w' changes the prediction; this report scores each reading
    over every covered vertex of the level.
    """

    level: int
    checked: int
    mismatches_forward: tuple[tuple[Vertex, tuple[Vertex, ...], tuple[Vertex, ...]], ...]
    mismatches_reverse: tuple[tuple[Vertex, tuple[Vertex, ...], tuple[Vertex, ...]], ...]

    @property
    def matching_convention(self) -> str | None:
        if not self.mismatches_forward:
            return "sigma = w' - w"
        if not self.mismatches_reverse:
            return "sigma = w - w'"
        return None

    def to_json(self) -> dict:
        def fmt(rows):
            return [
                {
                    "v": list(w.coords),
                    "missing": [list(v.coords) for v in missing],
                    "spurious": [list(v.coords) for v in spurious],
                }
                for w, missing, spurious in rows
            ]

        return {
            "level": self.level,
            "checked": self.checked,
            "mismatches": {
                "sigma = w' - w": fmt(self.mismatches_forward),
                "sigma = w - w'": fmt(self.mismatches_reverse),
            },
            "matching_convention": self.matching_convention,
        }


def check_cov2(diagram: Diagram, level: int) -> Cov2Report:
    """Score both sigma orientations of the covering-set formula at one level."""
    if level <= diagram.arity:
        raise PreconditionNotMet(f"need level > q = {diagram.arity}, got {level}")
    checked = 0
    fwd_rows = []
    rev_rows = []
    for w in diagram.vertices(level):
        j = _excess_direction(diagram, w)
        if j is None:
            continue
        checked += 1
        truth = set(covering_vertices(diagram, w))
        for predict, rows in (
            (_predicted_cover_forward, fwd_rows),
            (_predicted_cover_reverse, rev_rows),
        ):
            predicted = predict(diagram, w, j)
            if predicted != truth:
                missing = tuple(sorted(truth - predicted, key=lambda v: v.coords, reverse=True))
                spurious = tuple(sorted(predicted - truth, key=lambda v: v.coords, reverse=True))
                rows.append((w, missing, spurious))
    return Cov2Report(level, checked, tuple(fwd_rows), tuple(rev_rows))


@dataclass(frozen=True)
class SourceUncoveredReport:
    """Whether every source of one vertex is uncovered, with the witnesses."""

    vertex: Vertex
    all_uncovered: bool
    covered_sources: tuple[Vertex, ...]
    # sufficient condition: every coordinate at most (level - 2) * d
    bound_condition: bool
    # sufficient condition: some direction j with 2d <= w(j) <= (level - 2) * d
    direction_condition: bool


def source_all_uncovered(diagram: Diagram, w: Vertex) -> SourceUncoveredReport:
    """Check each source of w against the coverage oracle, plus both sufficient conditions."""
    if w.level <= diagram.arity:
        raise PreconditionNotMet(f"need level > q = {diagram.arity}, got {w.level}")
    d = diagram.degree
    bound = (w.level - 2) * d
    covered = tuple(u for u in diagram.source_set(w) if is_covered_oracle(diagram, u))
    return SourceUncoveredReport(
        vertex=w,
        all_uncovered=not covered,
        covered_sources=covered,
        bound_condition=all(c <= bound for c in w.coords),
        direction_condition=any(2 * d <= c <= bound for c in w.coords),
    )


def target_uncovered_check(diagram: Diagram, level: int) -> tuple[tuple[Vertex, Vertex], ...]:
    """Counterexamples to: an uncovered source forces the target uncovered.

    Scans every level-`level` vertex with at least one uncovered source and
    returns (target, uncovered source) pairs where the target is nevertheless
    covered.  Expected empty whenever level - 1 > q.
    """
    if level - 1 <= diagram.arity:
        raise PreconditionNotMet(f"need level - 1 > q = {diagram.arity}, got level {level}")
    bad = []
    for w in diagram.vertices(level):
        witness = next(
            (u for u in diagram.source_set(w) if not is_covered_oracle(diagram, u)), None
        )
        if witness is not None and is_covered_oracle(diagram, w):
            bad.append((w, witness))
    return tuple(bad)


def source_ladder(diagram: Diagram, z: Vertex, j: int) -> tuple[Vertex, ...]:
    """Sources w_0..w_d of z with j-th coordinates z(j), z(j) - 1, ..., z(j) - d.

    Requires d <= z(j) <= (level - 1) * d.  Built by starting from a source
    vector with nothing in direction j and shuffling one unit at a time into
    direction j; the intermediate subtrahends stay within z, so every rung is
    a genuine source of z.
    """
    if not 1 <= j <= diagram.arity:
        raise ValueError(f"direction {j} out of range 1..{diagram.arity}")
    d = diagram.degree
    if not d <= z.coord(j) <= (z.level - 1) * d:
        raise LadderPreconditionViolated(
            f"need {d} <= z({j}) <= {(z.level - 1) * d}, got {z.coord(j)}"
        )
    # fill a degree-d subtrahend from the coordinates other than j, left to right
    take = [0] * diagram.arity
    need = d
    for idx in range(diagram.arity):
        if idx == j - 1:
            continue
        grab = min(z.coords[idx], need)
        take[idx] = grab
        need -= grab
        if need == 0:
            break
    assert need == 0, "off-j coordinates sum to at least d under the precondition"
    rungs = [Vertex(z.level - 1, tuple(a - t for a, t in zip(z.coords, take)))]
    for _ in range(d):
        donor = next(idx for idx in range(diagram.arity) if idx != j - 1 and take[idx] > 0)
        take[donor] -= 1
        take[j - 1] += 1
        rungs.append(Vertex(z.level - 1, tuple(a - t for a, t in zip(z.coords, take))))
    return tuple(rungs)
