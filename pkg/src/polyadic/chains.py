"""Chains of splitting vertices linked through shared sources.

A chain alternates vertices w_0..w_k on one level with vertices u_0..u_{k-1}
one level down, where each u_l is a source of both w_l and w_{l+1}.  It is
straight when no vertex repeats, and distinguished in direction j when every
u_l with l >= 1 is the j-drop source of w_l (coordinate j reduced by d).
Distinguished chains can be grown mechanically: drop w_l by d in direction j,
then move to the other target of that source with the largest j coordinate.
The j coordinates then fall by 1..d per step, so straightness comes free
until the chain collides with its own start.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Diagram, Vertex
from .coverage import is_covered_oracle
from .errors import DsvAbsent, HypothesisNotMet, LengthMismatch, NoExtension


@dataclass(frozen=True)
class Chain:
    """Splitting vertices with the shared sources between consecutive ones."""

    level: int
    splitting: tuple[Vertex, ...]
    shared: tuple[Vertex, ...]
    direction: int | None = None

    def __post_init__(self) -> None:
        if not self.splitting or len(self.shared) != len(self.splitting) - 1:
            raise LengthMismatch(
                f"{len(self.splitting)} splitting vertices need "
                f"{max(len(self.splitting) - 1, 0)} shared, got {len(self.shared)}"
            )

    @property
    def length(self) -> int:
        """Number of links, one less than the splitting count."""
        return len(self.splitting) - 1

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "splitting": [list(v.coords) for v in self.splitting],
            "shared": [list(u.coords) for u in self.shared],
            "direction": self.direction,
        }


@dataclass(frozen=True)
class ChainCheck:
    is_chain: bool
    is_straight: bool
    is_link: bool
    distinguished_direction: int | None


def validate_chain(diagram: Diagram, chain: Chain) -> ChainCheck:
    """Check the chain conditions and find the distinguished direction, if any."""
    ok = all(v.level == chain.level for v in chain.splitting) and all(
        u.level == chain.level - 1 for u in chain.shared
    )
    if ok:
        for l, u in enumerate(chain.shared):
            srcs = diagram.source_set(chain.splitting[l])
            nxt = diagram.source_set(chain.splitting[l + 1])
            if u not in srcs or u not in nxt:
                ok = False
                break
    straight = ok and (
        len(set(chain.splitting)) == len(chain.splitting)
        and len(set(chain.shared)) == len(chain.shared)
    )
    direction = None
    if straight and chain.length >= 2:
        for j in range(1, diagram.arity + 1):
            if all(
                diagram.dsv(chain.splitting[l], j) == chain.shared[l]
                for l in range(1, chain.length)
            ):
                direction = j
                break
    return ChainCheck(
        is_chain=ok,
        is_straight=straight,
        is_link=ok and chain.length == 1,
        distinguished_direction=direction,
    )


def build_distinguished_chain(
    diagram: Diagram,
    w0: Vertex,
    w1: Vertex,
    u0: Vertex,
    j: int,
    target_len: int,
) -> Chain:
    """Grow a distinguished chain from the link (w0, u0, w1) in direction j.

    `target_len` counts splitting vertices in the finished chain.  Each step
    takes u_l as the j-drop source of w_l and moves to the target of u_l,
    other than w_l, with the largest j coordinate.  Raises DsvAbsent when a
    j-drop source is missing and NoExtension when no new target exists or a
    vertex would repeat.
    """
    if target_len < 2:
        raise ValueError("target_len counts splitting vertices and must be >= 2")
    if w0.level != w1.level or w0 == w1:
        raise HypothesisNotMet("w0 and w1 must be distinct vertices on one level")
    if u0 not in diagram.source_set(w0) or u0 not in diagram.source_set(w1):
        raise HypothesisNotMet(f"{u0} is not a shared source of {w0} and {w1}")
    splitting = [w0, w1]
    shared = [u0]
    while len(splitting) < target_len:
        w = splitting[-1]
        u = diagram.dsv(w, j)
        if u is None:
            raise DsvAbsent(
                f"{w} has no j-drop source in direction {j} "
                f"(chain reached {len(splitting)} splitting vertices)"
            )
        candidates = [t for t in diagram.targets(u) if t != w]
        if not candidates:
            raise NoExtension(f"{u} has no target besides {w}")
        candidates.sort(key=lambda t: (t.coord(j), t.coords), reverse=True)
        nxt = candidates[0]
        if nxt in splitting or u in shared:
            raise NoExtension(
                f"straightness breaks at {nxt} "
                f"(chain reached {len(splitting)} splitting vertices)"
            )
        shared.append(u)
        splitting.append(nxt)
    return Chain(w0.level, tuple(splitting), tuple(shared), direction=j)


@dataclass(frozen=True)
class ChainStart:
    v: Vertex
    v_prime: Vertex
    direction: int
    shared: Vertex


def find_chain_start(diagram: Diagram, level: int) -> tuple[ChainStart, ...]:
    """All uncovered pairs with a shared source and well-separated j coordinates.

    Returns (v, v', j, u) for every ordered pair of distinct uncovered
    vertices at `level` with a common source and a direction j satisfying
    2d^2 + 4d <= v'(j) < v(j) <= (level - 2) * d.  These are the seeds from
    which long distinguished chains grow.
    """
    d = diagram.degree
    lo = 2 * d * d + 4 * d
    hi = (level - 2) * d
    vertices = diagram.vertices(level)
    uncovered = [v for v in vertices if not is_covered_oracle(diagram, v)]
    sources = {v: frozenset(diagram.source_set(v)) for v in uncovered}
    out = []
    for v in uncovered:
        for vp in uncovered:
            if vp == v:
                continue
            common = sources[v] & sources[vp]
            if not common:
                continue
            witness = max(common, key=lambda u: u.coords)
            for j in range(1, diagram.arity + 1):
                if lo <= vp.coord(j) < v.coord(j) <= hi:
                    out.append(ChainStart(v, vp, j, witness))
    return tuple(out)


@dataclass(frozen=True)
class LinkReport:
    """Static consequences of one link (w0, w1) in direction j.

    Each status is "pass", "fail", or "not applicable" when its hypothesis
    does not hold.  `candidates` lists the targets of w1's j-drop source
    other than w0 and w1 (the possible next splitting vertices).
    """

    w0: Vertex
    w1: Vertex
    direction: int
    drop_source_absent_status: str
    sources_uncovered_status: str
    targets_uncovered_status: str
    candidates: tuple[Vertex, ...]
    candidates_status: str


def check_link_consequences(diagram: Diagram, w0: Vertex, w1: Vertex, j: int) -> LinkReport:
    """Check what a single shared-source link forces, piece by piece.

    (a) if w1(j) <= w0(j), the j-drop source of w1 cannot be a source of w0;
    (b) if 2d <= w1(j) <= (level - 2) * d, every source of w1 is uncovered and
        so is every target of such a source;
    (c) inside the window 2d <= w1(j) <= w0(j) <= (level - 1) * d, the j-drop
        source of w1 has some target besides w0 and w1.

    Claim (c) needs its window: at a corner pair such as (5,0), (4,1) with
    d = 1 the drop source (4,0) feeds only those two vertices.
    """
    if w0.level != w1.level or w0 == w1:
        raise HypothesisNotMet("w0 and w1 must be distinct vertices on one level")
    if not set(diagram.source_set(w0)) & set(diagram.source_set(w1)):
        raise HypothesisNotMet(f"{w0} and {w1} share no source")
    d = diagram.degree
    level = w1.level

    if w1.coord(j) <= w0.coord(j):
        u = diagram.dsv(w1, j)
        if u is None:
            a_status = "pass"
        else:
            a_status = "fail" if u in diagram.source_set(w0) else "pass"
    else:
        a_status = "not applicable"

    if 2 * d <= w1.coord(j) <= (level - 2) * d:
        srcs = diagram.source_set(w1)
        b_sources = "pass" if not any(is_covered_oracle(diagram, u) for u in srcs) else "fail"
        targets_ok = all(
            not is_covered_oracle(diagram, t) for u in srcs for t in diagram.targets(u)
        )
        b_targets = "pass" if targets_ok else "fail"
    else:
        b_sources = b_targets = "not applicable"

    u1 = diagram.dsv(w1, j)
    in_window = 2 * d <= w1.coord(j) <= w0.coord(j) <= (level - 1) * d
    if u1 is None:
        candidates: tuple[Vertex, ...] = ()
        c_status = "not applicable"
    else:
        candidates = tuple(t for t in diagram.targets(u1) if t not in (w0, w1))
        if not in_window:
            c_status = "not applicable"
        else:
            c_status = "pass" if candidates else "fail"

    return LinkReport(
        w0=w0,
        w1=w1,
        direction=j,
        drop_source_absent_status=a_status,
        sources_uncovered_status=b_sources,
        targets_uncovered_status=b_targets,
        candidates=candidates,
        candidates_status=c_status,
    )
