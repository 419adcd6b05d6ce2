"""Graph representation and structural queries.

Vertices and edges carry dense integer ids. For bipartite graphs side-A ids
come first (``0 .. n_a-1``) and side-B ids follow (``n_a .. n_a+n_b-1``), which
gives every later "pick any" choice a canonical order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ContractError

__all__ = [
    "Graph",
    "BipartiteGraph",
    "EdgeSubset",
    "Component",
    "Trail",
    "connected_components",
    "isolated_vertices",
    "bridges",
    "edge_blocks",
    "is_even_subgraph",
    "euler_tour",
    "two_removable_edges",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "write_edge_list",
    "to_dot",
]


class Graph:
    """Immutable simple undirected graph with dense vertex and edge ids."""

    __slots__ = ("n", "edges", "incidence", "_index", "_arrays")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ContractError("vertex count must be non-negative")
        normalized: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ContractError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise ContractError(f"parallel edge {key}")
            index[key] = len(normalized)
            normalized.append(key)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self._index = index
        inc: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(normalized):
            inc[u].append(e)
            inc[v].append(e)
        self.incidence: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in inc)
        self._arrays = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def min_degree(self) -> int:
        return min((len(x) for x in self.incidence), default=0)

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._index[key]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incidence[v]]

    def endpoint_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoints as two int64 arrays (cached)."""
        if self._arrays is None:
            arr = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
            self._arrays = (np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]))
        return self._arrays

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class BipartiteGraph(Graph):
    """Simple bipartite graph; every edge joins side A to side B."""

    __slots__ = ("n_a", "n_b")

    def __init__(self, n_a: int, n_b: int, edges: Iterable[tuple[int, int]]):
        if n_a < 0 or n_b < 0:
            raise ContractError("side sizes must be non-negative")
        super().__init__(n_a + n_b, edges)
        self.n_a = n_a
        self.n_b = n_b
        for u, v in self.edges:
            # normalized so u < v; both on one side iff v < n_a or u >= n_a
            if v < n_a or u >= n_a:
                raise ContractError(f"edge ({u}, {v}) does not join side A to side B")

    def side(self, v: int) -> int:
        return 0 if v < self.n_a else 1

    @classmethod
    def from_sides(cls, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Build from ``(a, b)`` pairs given as side-local indices."""
        pairs = [(int(a), int(b)) for a, b in edges]
        n_a = 1 + max((a for a, _ in pairs), default=-1)
        n_b = 1 + max((b for _, b in pairs), default=-1)
        return cls(n_a, n_b, [(a, n_a + b) for a, b in pairs])


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edge ids of a host graph."""

    host: Graph
    members: frozenset[int]

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        m = self.host.m
        for e in self.members:
            if not 0 <= e < m:
                raise ContractError(f"edge id {e} is not an edge of the host graph")

    @classmethod
    def full(cls, host: Graph) -> "EdgeSubset":
        return cls(host, frozenset(range(host.m)))

    def __contains__(self, e: object) -> bool:
        return e in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def incident(self, v: int) -> list[int]:
        mem = self.members
        return [e for e in self.host.incidence[v] if e in mem]

    def degree(self, v: int) -> int:
        mem = self.members
        return sum(1 for e in self.host.incidence[v] if e in mem)

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for e in self.members:
            out.update(self.host.edges[e])
        return out


@dataclass(frozen=True)
class Component:
    """A connected piece of an edge subset."""

    host: Graph
    vertices: frozenset[int]
    edges: frozenset[int]

    def incident(self, v: int) -> list[int]:
        es = self.edges
        return [e for e in self.host.incidence[v] if e in es]

    def degree(self, v: int) -> int:
        es = self.edges
        return sum(1 for e in self.host.incidence[v] if e in es)

    def as_subset(self) -> EdgeSubset:
        return EdgeSubset(self.host, self.edges)


@dataclass(frozen=True)
class Trail:
    """An edge sequence with its vertex sequence (``len(vertex_seq) == len(edge_seq) + 1``).

    ``kind`` is ``"X"``, ``"Y"`` or ``"XY"`` for open trails classified against a
    bipartition, and ``None`` otherwise.
    """

    edge_seq: tuple[int, ...]
    vertex_seq: tuple[int, ...]
    kind: str | None = field(default=None)

    @property
    def closed(self) -> bool:
        return self.vertex_seq[0] == self.vertex_seq[-1]

    @property
    def start(self) -> int:
        return self.vertex_seq[0]

    @property
    def end(self) -> int:
        return self.vertex_seq[-1]

    def __len__(self) -> int:
        return len(self.edge_seq)

    def reversed(self) -> "Trail":
        return Trail(self.edge_seq[::-1], self.vertex_seq[::-1], self.kind)


def _subset_members(g: Graph, s: EdgeSubset | Iterable[int] | None) -> frozenset[int]:
    if s is None:
        return frozenset(range(g.m))
    if isinstance(s, EdgeSubset):
        if s.host is not g:
            raise ContractError("edge subset belongs to a different graph")
        return s.members
    return frozenset(s)


def connected_components(g: Graph, s: EdgeSubset | Iterable[int] | None = None) -> list[Component]:
    """Components of the subgraph formed by the edges of ``s``.

    Vertices touched by no edge of ``s`` are not part of any component; see
    :func:`isolated_vertices`. Components are ordered by their lowest vertex id.
    """
    mem = _subset_members(g, s)
    seen = [False] * g.n
    out: list[Component] = []
    inc = g.incidence
    edges = g.edges
    for root in range(g.n):
        if seen[root]:
            continue
        if not any(e in mem for e in inc[root]):
            continue
        seen[root] = True
        stack = [root]
        verts = [root]
        ces: set[int] = set()
        while stack:
            v = stack.pop()
            for e in inc[v]:
                if e not in mem:
                    continue
                ces.add(e)
                a, b = edges[e]
                w = b if a == v else a
                if not seen[w]:
                    seen[w] = True
                    verts.append(w)
                    stack.append(w)
        out.append(Component(g, frozenset(verts), frozenset(ces)))
    return out


def isolated_vertices(g: Graph, s: EdgeSubset | Iterable[int] | None = None) -> list[int]:
    mem = _subset_members(g, s)
    return [v for v in range(g.n) if not any(e in mem for e in g.incidence[v])]


def _dfs_lowlink(g: Graph, mem: frozenset[int], want_blocks: bool):
    """Iterative low-link DFS. Returns (bridges, blocks)."""
    n = g.n
    inc = g.incidence
    edges = g.edges
    disc = [-1] * n
    low = [0] * n
    timer = 0
    found_bridges: set[int] = set()
    blocks: list[frozenset[int]] = []
    estack: list[int] = []
    for root in range(n):
        if disc[root] != -1:
            continue
        adj = [e for e in inc[root] if e in mem]
        if not adj:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj))]
        while stack:
            v, pe, it = stack[-1]
            pushed = False
            for e in it:
                if e == pe:
                    continue
                a, b = edges[e]
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if want_blocks:
                        estack.append(e)
                    stack.append((w, e, iter([f for f in inc[w] if f in mem])))
                    pushed = True
                    break
                if disc[w] < disc[v]:
                    if want_blocks:
                        estack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if pushed:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] > disc[u]:
                found_bridges.add(pe)
            if want_blocks and low[v] >= disc[u]:
                block = []
                while True:
                    f = estack.pop()
                    block.append(f)
                    if f == pe:
                        break
                blocks.append(frozenset(block))
    return found_bridges, blocks


def bridges(g: Graph, s: EdgeSubset | Iterable[int] | None = None) -> set[int]:
    """Edges of ``s`` whose removal increases the number of components."""
    return _dfs_lowlink(g, _subset_members(g, s), want_blocks=False)[0]


def edge_blocks(g: Graph, s: EdgeSubset | Iterable[int] | None = None) -> list[frozenset[int]]:
    """Biconnected blocks of the subgraph formed by ``s``, as edge sets.

    A bridge forms a block of its own.
    """
    return _dfs_lowlink(g, _subset_members(g, s), want_blocks=True)[1]


def is_even_subgraph(g: Graph, s: EdgeSubset | Iterable[int] | None = None) -> bool:
    mem = _subset_members(g, s)
    deg = [0] * g.n
    for e in mem:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def _hierholzer(g: Graph, es: frozenset[int] | set[int], start: int) -> Trail:
    inc = g.incidence
    edges = g.edges
    adj = {}
    ptr = {}
    for e in sorted(es):
        for v in edges[e]:
            adj.setdefault(v, []).append(e)
            ptr.setdefault(v, 0)
    used: set[int] = set()
    stack: list[tuple[int, int]] = [(start, -1)]
    out: list[tuple[int, int]] = []
    while stack:
        v, ein = stack[-1]
        lst = adj[v]
        i = ptr[v]
        while i < len(lst) and lst[i] in used:
            i += 1
        ptr[v] = i
        if i == len(lst):
            stack.pop()
            out.append((v, ein))
            continue
        f = lst[i]
        used.add(f)
        a, b = edges[f]
        stack.append((b if a == v else a, f))
    del inc
    out.reverse()
    verts = tuple(v for v, _ in out)
    seq = tuple(e for _, e in out[1:])
    return Trail(seq, verts)


def euler_tour(c: Component) -> Trail:
    """Closed trail through every edge of an Eulerian component.

    Starts at the lowest vertex id and always leaves by the lowest unused edge id.
    """
    if not c.edges:
        raise ContractError("component has no edges")
    for v in c.vertices:
        if c.degree(v) % 2:
            raise ContractError(f"vertex {v} has odd degree {c.degree(v)} in the component")
    tour = _hierholzer(c.host, c.edges, min(c.vertices))
    if len(tour.edge_seq) != len(c.edges):
        raise ContractError("component is not connected")
    return tour


def two_removable_edges(c: Component, v: int) -> tuple[int, int]:
    """Two edges at ``v`` whose joint removal keeps ``c`` connected.

    Requires at least three non-bridge edges of ``c`` at ``v``. If they all lie
    in one biconnected block any two of them work; otherwise one is taken from
    each of two distinct blocks.
    """
    g = c.host
    cut = bridges(g, c.edges)
    candidates = [e for e in sorted(c.incident(v)) if e not in cut]
    if len(candidates) < 3:
        raise ContractError(f"vertex {v} has only {len(candidates)} non-cut edges (need 3)")
    block_of: dict[int, int] = {}
    for i, blk in enumerate(edge_blocks(g, c.edges)):
        for e in blk:
            block_of[e] = i
    pairs = [
        (a, b)
        for i, a in enumerate(candidates)
        for b in candidates[i + 1 :]
        if block_of[a] != block_of[b]
    ]
    pairs += [
        (a, b)
        for i, a in enumerate(candidates)
        for b in candidates[i + 1 :]
        if block_of[a] == block_of[b]
    ]
    base = len(connected_components(g, c.edges))
    for a, b in pairs:
        if len(connected_components(g, c.edges - {a, b})) == base:
            return a, b
    raise AssertionError(f"no removable pair at vertex {v}")  # pragma: no cover


# ---------------------------------------------------------------- file formats


def parse_edge_list(text: str, source: str = "<string>") -> BipartiteGraph:
    """Parse the ``bip <n_a> <n_b> <m>`` edge-list format.

    Blank lines and lines starting with ``#`` are ignored. Errors carry the
    line and column of the offending token.
    """
    header = None
    pairs: list[tuple[int, int]] = []
    expected_m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        col = 0
        for tok in raw.split():
            col = raw.index(tok, col)
            tokens.append((tok, col + 1))
            col += len(tok)
        if header is None:
            if tokens[0][0] != "bip" or len(tokens) != 4:
                raise ContractError(
                    f"{source}:{lineno}:{tokens[0][1]}: expected header 'bip <n_a> <n_b> <m>'"
                )
            vals = []
            for tok, c in tokens[1:]:
                try:
                    val = int(tok)
                except ValueError:
                    raise ContractError(f"{source}:{lineno}:{c}: expected an integer, got {tok!r}") from None
                if val < 0:
                    raise ContractError(f"{source}:{lineno}:{c}: negative count {val}")
                vals.append(val)
            header = vals
            expected_m = vals[2]
            continue
        if len(tokens) != 2:
            col = tokens[2][1] if len(tokens) > 2 else len(raw) + 1
            raise ContractError(f"{source}:{lineno}:{col}: expected exactly two vertex ids")
        ids = []
        for tok, c in tokens:
            try:
                ids.append(int(tok))
            except ValueError:
                raise ContractError(f"{source}:{lineno}:{c}: expected an integer, got {tok!r}") from None
        n_a, n_b = header[0], header[1]
        u, v = ids
        for val, (_, c) in zip(ids, tokens):
            if not 0 <= val < n_a + n_b:
                raise ContractError(f"{source}:{lineno}:{c}: vertex id {val} outside [0, {n_a + n_b})")
        if (u < n_a) == (v < n_a):
            raise ContractError(f"{source}:{lineno}:1: edge ({u}, {v}) does not join the two sides")
        pairs.append((u, v))
    if header is None:
        raise ContractError(f"{source}:1:1: missing 'bip' header")
    if len(pairs) != expected_m:
        raise ContractError(f"{source}: header declares {expected_m} edges but {len(pairs)} were given")
    try:
        return BipartiteGraph(header[0], header[1], pairs)
    except ContractError as exc:
        raise ContractError(f"{source}: {exc}") from None


def read_edge_list(path: str | Path) -> BipartiteGraph:
    p = Path(path)
    return parse_edge_list(p.read_text(), source=str(p))


def format_edge_list(g: BipartiteGraph) -> str:
    lines = [f"bip {g.n_a} {g.n_b} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: BipartiteGraph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def to_dot(g: Graph, labels: Sequence[int] | None = None, name: str = "G") -> str:
    """Graphviz rendering; side-A vertices are drawn as boxes."""
    out = [f"graph {name} {{"]
    n_a = getattr(g, "n_a", None)
    for v in range(g.n):
        shape = "box" if n_a is not None and v < n_a else "ellipse"
        out.append(f"  {v} [shape={shape}];")
    for e, (u, v) in enumerate(g.edges):
        attr = f' [label="{labels[e]}"]' if labels is not None else ""
        out.append(f"  {u} -- {v}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"
