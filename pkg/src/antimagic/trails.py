"""Open-trail decompositions with endpoint-side bookkeeping.

A decomposition is *good* when it uses exactly ``|V_odd| / 2`` open trails.
Trails are classified against a designated vertex set ``x_side``: both ends in
it gives an X-trail, neither gives a Y-trail, one of each an XY-trail.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ContractError
from .graph import EdgeSubset, Graph, Trail, connected_components

__all__ = [
    "Trail",
    "TrailDecomposition",
    "classify",
    "good_open_trail_decomposition",
    "splice_for_xy",
    "order_and_orient",
    "prepared_decomposition",
]

_KIND_RANK = {"Y": 0, "XY": 1, "X": 2}


def classify(start: int, end: int, x_side: frozenset[int]) -> str:
    a, b = start in x_side, end in x_side
    if a and b:
        return "X"
    if not a and not b:
        return "Y"
    return "XY"


@dataclass(frozen=True)
class TrailDecomposition:
    trails: tuple[Trail, ...]
    x_side: frozenset[int]

    @property
    def r(self) -> int:
        return len(self.trails)

    @property
    def r1(self) -> int:
        return sum(1 for t in self.trails if t.kind == "Y")

    @property
    def r2(self) -> int:
        return sum(1 for t in self.trails if t.kind == "XY")

    def edge_set(self) -> set[int]:
        out: set[int] = set()
        for t in self.trails:
            out.update(t.edge_seq)
        return out

    def dump(self) -> list[list[int]]:
        return [list(t.vertex_seq) for t in self.trails]


def _members(g: Graph, s) -> frozenset[int]:
    if isinstance(s, EdgeSubset):
        return s.members
    return frozenset(s)


def good_open_trail_decomposition(
    g: Graph, s: EdgeSubset | Iterable[int], x_side: Iterable[int] | None = None
) -> TrailDecomposition:
    """Split ``s`` into exactly ``|V_odd| / 2`` open trails.

    Every odd vertex is joined to one auxiliary vertex; an Euler circuit of the
    result, cut wherever it passes the auxiliary vertex, yields the trails.
    ``x_side`` defaults to side A of a bipartite host.
    """
    mem = _members(g, s)
    if x_side is None:
        n_a = getattr(g, "n_a", None)
        if n_a is None:
            raise ContractError("x_side is required for a non-bipartite host")
        xs = frozenset(range(n_a))
    else:
        xs = frozenset(x_side)
    if not mem:
        return TrailDecomposition((), xs)

    edges = g.edges
    deg: dict[int, int] = {}
    for e in mem:
        u, v = edges[e]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    for comp in connected_components(g, mem):
        if all(deg[v] % 2 == 0 for v in comp.vertices):
            raise ContractError(
                f"component containing vertex {min(comp.vertices)} is Eulerian"
            )

    odd = sorted(v for v, d in deg.items() if d % 2)
    aux = -1
    # endpoints per edge id; auxiliary edges get ids after the host's
    ends: dict[int, tuple[int, int]] = {e: edges[e] for e in mem}
    base = g.m
    for i, v in enumerate(odd):
        ends[base + i] = (aux, v)
    adj: dict[int, list[int]] = {}
    for e in sorted(ends):
        u, v = ends[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)

    ptr = dict.fromkeys(adj, 0)
    used: set[int] = set()
    stack: list[tuple[int, int]] = [(aux, -1)]
    circuit: list[tuple[int, int]] = []
    while stack:
        v, ein = stack[-1]
        lst = adj[v]
        i = ptr[v]
        while i < len(lst) and lst[i] in used:
            i += 1
        ptr[v] = i
        if i == len(lst):
            stack.pop()
            circuit.append((v, ein))
            continue
        f = lst[i]
        used.add(f)
        a, b = ends[f]
        stack.append((b if a == v else a, f))
    circuit.reverse()

    trails: list[Trail] = []
    verts: list[int] = []
    seq: list[int] = []
    for v, ein in circuit[1:]:
        if v == aux:
            trails.append(_make(seq, verts, xs))
            verts, seq = [], []
        elif ein >= base:
            verts = [v]
        else:
            verts.append(v)
            seq.append(ein)
    if len(trails) != len(odd) // 2 or sum(len(t) for t in trails) != len(mem):
        raise AssertionError("trail split did not cover the subset")
    return TrailDecomposition(tuple(trails), xs)


def _make(seq, verts, xs) -> Trail:
    return Trail(tuple(seq), tuple(verts), classify(verts[0], verts[-1], xs))


def _splice(t1: Trail, t2: Trail, u: int, xs) -> tuple[Trail, Trail]:
    i = t1.vertex_seq.index(u)
    j = t2.vertex_seq.index(u)
    a = Trail(
        t1.edge_seq[:i] + t2.edge_seq[j:],
        t1.vertex_seq[: i + 1] + t2.vertex_seq[j + 1 :],
    )
    b = Trail(
        t2.edge_seq[:j] + t1.edge_seq[i:],
        t2.vertex_seq[: j + 1] + t1.vertex_seq[i + 1 :],
    )
    return (
        Trail(a.edge_seq, a.vertex_seq, classify(a.start, a.end, xs)),
        Trail(b.edge_seq, b.vertex_seq, classify(b.start, b.end, xs)),
    )


def splice_for_xy(d: TrailDecomposition) -> TrailDecomposition:
    """Exchange tails of crossing X- and Y-trails until no such pair is left.

    Each exchange turns one X-trail and one Y-trail into two XY-trails, so the
    number of XY-trails rises by two per step and the loop ends.
    """
    xs = d.x_side
    trails = list(d.trails)
    while True:
        found = None
        seen: dict[int, int] = {}
        for idx, t in enumerate(trails):
            if t.kind == "X":
                for v in t.vertex_seq:
                    seen.setdefault(v, idx)
        if seen:
            best = None
            for jdx, t in enumerate(trails):
                if t.kind != "Y":
                    continue
                for v in t.vertex_seq:
                    if v in seen and (best is None or v < best[0]):
                        best = (v, seen[v], jdx)
                if best is not None:
                    found = best
                    break
        if found is None:
            break
        u, i1, i2 = found
        before = trails[i1].kind, trails[i2].kind
        a, b = _splice(trails[i1], trails[i2], u, xs)
        assert before == ("X", "Y") and a.kind == b.kind == "XY"
        trails[i1], trails[i2] = a, b
    return TrailDecomposition(tuple(trails), xs)


def order_and_orient(d: TrailDecomposition) -> TrailDecomposition:
    """Sort trails Y, XY, X (stable) and start XY-trails at their Y end."""
    xs = d.x_side
    out = []
    for t in sorted(d.trails, key=lambda t: _KIND_RANK[t.kind]):
        if t.kind == "XY" and t.start in xs:
            t = t.reversed()
        out.append(t)
    return TrailDecomposition(tuple(out), xs)


def prepared_decomposition(g: Graph, s, x_side) -> TrailDecomposition:
    """Good decomposition, spliced for XY-trails, ordered and oriented."""
    return order_and_orient(splice_for_xy(good_open_trail_decomposition(g, s, x_side)))
