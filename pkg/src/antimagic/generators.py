"""Graph corpora: complete bipartite, seeded random with a degree floor, a
structured family with a nontrivial cover, and tiny exhaustive enumeration."""
from __future__ import annotations

from typing import Iterator

import networkx as nx
import numpy as np

from .errors import ContractError
from .graph import BipartiteGraph

__all__ = ["complete_bipartite", "random_min_degree", "split_cover", "tiny_enumerate"]


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    if a < 1 or b < 1:
        raise ContractError("both sides need at least one vertex")
    return BipartiteGraph(a, b, [(i, a + j) for i in range(a) for j in range(b)])


def _patch(adj: np.ndarray, delta: int, rng, rows_ok=None, cols_ok=None) -> None:
    """Add random edges at vertices whose degree is below ``delta``."""
    n_a, n_b = adj.shape
    rows_ok = np.ones((n_a, n_b), bool) if rows_ok is None else rows_ok
    for i in range(n_a):
        need = delta - int(adj[i].sum())
        if need > 0:
            cand = np.flatnonzero(~adj[i] & rows_ok[i])
            adj[i, rng.choice(cand, size=need, replace=False)] = True
    for j in range(n_b):
        need = delta - int(adj[:, j].sum())
        if need > 0:
            cand = np.flatnonzero(~adj[:, j] & rows_ok[:, j])
            adj[rng.choice(cand, size=need, replace=False), j] = True


def _from_matrix(adj: np.ndarray) -> BipartiteGraph:
    n_a, n_b = adj.shape
    ii, jj = np.nonzero(adj)
    return BipartiteGraph(n_a, n_b, [(int(i), n_a + int(j)) for i, j in zip(ii, jj)])


def random_min_degree(n_a: int, n_b: int, delta: int = 15, extra: float = 0.0, seed: int = 0) -> BipartiteGraph:
    """Random simple bipartite graph with minimum degree at least ``delta``.

    ``delta`` rounds of random matchings that cover every vertex are overlaid,
    duplicates dropped, deficient vertices patched, and each remaining pair is
    then added with probability ``extra``.
    """
    if delta < 0 or delta > min(n_a, n_b):
        raise ContractError(f"delta = {delta} is infeasible for sides {n_a}, {n_b}")
    if not 0.0 <= extra <= 1.0:
        raise ContractError("extra must be a probability")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n_a, n_b), bool)
    big = max(n_a, n_b)
    for _ in range(delta):
        pa = rng.permutation(big) % n_a
        pb = rng.permutation(big) % n_b
        adj[pa, pb] = True
    _patch(adj, delta, rng)
    adj |= rng.random((n_a, n_b)) < extra
    return _from_matrix(adj)


def split_cover(core_a: int = 20, core_b: int = 20, pendant_a: int = 3, pendant_b: int = 3,
                density: float = 0.7, seed: int = 0) -> BipartiteGraph:
    """Graph whose minimum vertex cover meets both sides.

    Side A is ``A1 ∪ A2`` and side B is ``B1 ∪ B2`` with ``|A2| > |B1|`` and
    ``|B2| > |A1|``; edges run only inside ``A1×B1``, ``A1×B2`` and ``A2×B1``,
    so ``A1 ∪ B1`` is the unique minimum cover and ``G[A1 ∪ B1]`` is dense.
    The first ``pendant_a`` vertices of A1 (and ``pendant_b`` of B1) get a
    single neighbour outside the cover, which makes them fully matched.
    """
    a1, b1 = core_a, core_b
    a2, b2 = b1 + 2, a1 + 2
    if a1 - pendant_a < 15 or b1 - pendant_b < 15:
        raise ContractError("cores need at least 15 vertices and 15 non-pendant vertices")
    rng = np.random.default_rng(seed)
    n_a, n_b = a1 + a2, b1 + b2
    allowed = np.zeros((n_a, n_b), bool)
    allowed[:a1, :b1] = True
    allowed[:a1, b1:] = True
    allowed[a1:, :b1] = True
    allowed[:pendant_a, b1:] = False
    allowed[a1:, :pendant_b] = False
    adj = (rng.random((n_a, n_b)) < density) & allowed
    for i in range(pendant_a):
        adj[i, b1 + i] = allowed[i, b1 + i] = True
    for j in range(pendant_b):
        adj[a1 + j, j] = allowed[a1 + j, j] = True
    _patch(adj, 15, rng, allowed)
    return _from_matrix(adj)


def _to_bipartite(h: nx.Graph) -> BipartiteGraph:
    color = nx.bipartite.color(h)
    a = sorted(v for v in h if color[v] == 0)
    b = sorted(v for v in h if color[v] == 1)
    ids = {v: i for i, v in enumerate(a + b)}
    return BipartiteGraph(len(a), len(b), sorted((ids[u], ids[v]) if color[u] == 0 else (ids[v], ids[u])
                                                 for u, v in h.edges))


def tiny_enumerate(max_edges: int) -> Iterator[BipartiteGraph]:
    """All connected bipartite graphs with 1..``max_edges`` edges, one per
    isomorphism class, in order of edge count."""
    if not 1 <= max_edges <= 7:
        raise ContractError("max_edges must lie in [1, 7]")
    level = [nx.Graph([(0, 1)])]
    for size in range(1, max_edges + 1):
        for h in level:
            yield _to_bipartite(h)
        if size == max_edges:
            break
        nxt: list[nx.Graph] = []
        buckets: dict[str, list[nx.Graph]] = {}
        for h in level:
            n = h.number_of_nodes()
            color = nx.bipartite.color(h)
            cands = [(v, n) for v in range(n)]
            cands += [(u, v) for u in range(n) for v in range(u + 1, n)
                      if color[u] != color[v] and not h.has_edge(u, v)]
            for u, v in cands:
                h2 = h.copy()
                h2.add_edge(u, v)
                key = nx.weisfeiler_lehman_graph_hash(h2)
                same = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h2, o) for o in same):
                    same.append(h2)
                    nxt.append(h2)
        level = nxt
