"""Vertex partition and edge decomposition that the labeling is built on.

The pipeline is :func:`konig_partition`, :func:`choose_E1_E2`,
:func:`build_forests`, :func:`build_G3`, :func:`build_E4`; :func:`decompose`
runs them in order and returns a :class:`DecompositionPlan`.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import ConstructionError, ContractError
from .graph import BipartiteGraph, Component, connected_components, is_even_subgraph, two_removable_edges

__all__ = [
    "Counts",
    "DecompositionPlan",
    "konig_partition",
    "choose_E1_E2",
    "build_forests",
    "build_G3",
    "build_E4",
    "choose_E40",
    "compute_counts",
    "label_class_counts",
    "g4_status",
    "decompose",
    "check_plan",
]


@dataclass(frozen=True)
class Counts:
    n_X: int
    n_Y: int
    n_Y_odd: int
    n_Y_even: int
    m: int
    m1: int
    m2: int
    m11: int
    m10: int
    m21: int
    m20: int
    k1: int
    k2: int
    k3: int
    s1: int
    s2: int
    eps1: int
    gamma: int
    l0: int
    l1: int
    l2: int
    l10: int
    l11: int
    l12: int
    l20: int
    l21: int
    l22: int

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class DecompositionPlan:
    g: BipartiteGraph
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]
    I1: frozenset[int]
    I2: frozenset[int]
    I21: frozenset[int]
    Y_odd: frozenset[int]
    Y_even: frozenset[int]
    M: frozenset[int]
    E1: frozenset[int]
    E2: frozenset[int]
    G1: frozenset[int]
    GX: frozenset[int]
    F1: frozenset[int]
    F2: frozenset[int]
    F3: frozenset[int]
    G3: frozenset[int]
    E4: frozenset[int]
    counts: Counts
    Y0: frozenset[int] = frozenset()
    E40: frozenset[int] = frozenset()
    notes: tuple[str, ...] = field(default=())

    @property
    def E3(self) -> frozenset[int]:
        return self.G3 | self.F2 | self.F3

    @property
    def X_core(self) -> frozenset[int]:
        """``X \\ I2``: the X vertices with at least one G1 edge."""
        return self.X - self.I2

    @property
    def G4(self) -> frozenset[int]:
        return self.E4 | self.F3

    def mate(self) -> dict[int, int]:
        out = {}
        for e in self.M:
            u, v = self.g.edges[e]
            out[u], out[v] = e, e
        return out

    def to_json(self) -> str:
        sets = {}
        for name in (
            "X", "Y", "Z", "I1", "I2", "I21", "Y_odd", "Y_even", "Y0",
            "M", "E1", "E2", "G1", "GX", "F1", "F2", "F3", "G3", "E4", "E40",
        ):
            sets[name] = sorted(getattr(self, name))
        sets["E3"] = sorted(self.E3)
        return json.dumps(
            {"sets": sets, "counts": self.counts.to_dict(), "notes": list(self.notes)},
            indent=1,
        )


# ---------------------------------------------------------------- König


def _max_matching(g: BipartiteGraph) -> dict[int, int]:
    """Maximum matching by BFS augmenting paths; returns vertex -> mate edge."""
    mate_v = [-1] * g.n
    mate_e = [-1] * g.n
    inc = g.incidence
    for a in range(g.n_a):
        if mate_v[a] != -1 or not inc[a]:
            continue
        parent = {a: (-1, -1)}
        q = deque([a])
        free_b = -1
        while q and free_b < 0:
            u = q.popleft()
            for e in inc[u]:
                b = g.other(e, u)
                if b in parent:
                    continue
                parent[b] = (u, e)
                if mate_v[b] == -1:
                    free_b = b
                    break
                w = mate_v[b]
                parent[w] = (b, mate_e[b])
                q.append(w)
        if free_b < 0:
            continue
        b = free_b
        while b != -1:
            u, e = parent[b]
            prev = mate_v[u]
            mate_v[u], mate_v[b] = b, u
            mate_e[u] = mate_e[b] = e
            b = prev
    return {v: mate_e[v] for v in range(g.n) if mate_e[v] != -1}


def konig_partition(g: BipartiteGraph) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """``(X, Y, M)``: X a minimum vertex cover, Y its independent complement,
    M a maximum matching, which saturates X."""
    mate = _max_matching(g)
    reach: set[int] = set()
    q = deque(a for a in range(g.n_a) if a not in mate)
    reach.update(q)
    while q:
        a = q.popleft()
        for e in g.incidence[a]:
            b = g.other(e, a)
            if b in reach:
                continue
            reach.add(b)
            w = g.other(mate[b], b)
            if w not in reach:
                reach.add(w)
                q.append(w)
    X = frozenset(
        [a for a in range(g.n_a) if a not in reach] + [b for b in range(g.n_a, g.n) if b in reach]
    )
    Y = frozenset(range(g.n)) - X
    M = frozenset(mate[x] for x in X)
    return X, Y, M


# ---------------------------------------------------------------- E1, E2


def choose_E1_E2(
    g: BipartiteGraph,
    X: frozenset[int],
    Y: frozenset[int],
    M: frozenset[int],
    rng: np.random.Generator | None = None,
) -> tuple[frozenset[int], frozenset[int]]:
    """Pick E1 (one edge per unsaturated Y vertex) and E2 (one edge per
    even-degree Y vertex) so that no G[X]-isolated X vertex is left without a
    G0 edge.

    Greedy first, preferring X endpoints with the most remaining G0 edges; then
    prefix switches along alternating trails, each of which removes one vertex
    from the isolated set.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    matched = set()
    for e in M:
        matched.update(g.edges[e])
    Z = sorted(y for y in Y if y not in matched)
    Y_even = sorted(y for y in Y if g.degree(y) % 2 == 0)
    g0deg = Counter()
    for x in X:
        g0deg[x] = sum(1 for e in g.incidence[x] if e not in M and g.other(e, x) in Y)
    chosen: dict[int, str] = {}
    tiebreak = rng.permutation(g.n)
    targets = [(y, "E1") for y in Z] + [(y, "E2") for y in Y_even]
    targets.sort()
    for y, role in targets:
        cand = [e for e in g.incidence[y] if e not in M and e not in chosen]
        if not cand:
            raise ConstructionError(f"no free edge at {y} for {role}")
        e = max(cand, key=lambda f: (g0deg[g.other(f, y)], tiebreak[g.other(f, y)]))
        chosen[e] = role
        g0deg[g.other(e, y)] -= 1

    gx_deg = {x: sum(1 for e in g.incidence[x] if g.other(e, x) in X) for x in X}
    I1 = {x for x in X if gx_deg[x] == 0}

    def isolated():
        return sorted(x for x in I1 if g0deg[x] == 0)

    i0 = isolated()
    while i0:
        x1 = i0[0]
        # BFS over X vertices: x --(E1∪E2)--> y --(G0)--> x'
        prev: dict[int, tuple[int, int, int]] = {x1: (-1, -1, -1)}
        q = deque([x1])
        target = -1
        while q and target < 0:
            x = q.popleft()
            for e in g.incidence[x]:
                if e not in chosen:
                    continue
                y = g.other(e, x)
                for f in g.incidence[y]:
                    if f in M or f in chosen:
                        continue
                    x2 = g.other(f, y)
                    if x2 in prev:
                        continue
                    prev[x2] = (x, e, f)
                    if g0deg[x2] >= 2 or x2 not in I1:
                        target = x2
                        break
                    q.append(x2)
                if target >= 0:
                    break
        if target < 0:
            raise ConstructionError(f"no alternating trail from isolated vertex {x1}")
        x = target
        while x != x1:
            px, e, f = prev[x]
            role = chosen.pop(e)
            chosen[f] = role
            g0deg[px] += 1
            g0deg[x] -= 1
            x = px
        nxt = isolated()
        if len(nxt) >= len(i0):
            raise AssertionError("alternating-trail switch did not shrink the isolated set")
        i0 = nxt
    E1 = frozenset(e for e, r in chosen.items() if r == "E1")
    E2 = frozenset(e for e, r in chosen.items() if r == "E2")
    return E1, E2


# ---------------------------------------------------------------- forests


def build_forests(g: BipartiteGraph, X, Y, M, E1, E2):
    """``(I2, I21, G1, F1, F2, F3)``.

    F1 gives each vertex of ``X \\ I2`` one G1 edge, spreading them over Y;
    F2 is a star forest on ``I2 \\ I21`` obtained by pruning a BFS spanning
    forest; F3 ties each ``I21`` vertex to one neighbour in ``X \\ I2``.
    """
    taken = set(M) | set(E1) | set(E2)
    G0 = frozenset(e for e in range(g.m) if e not in taken and (g.edges[e][0] in Y) != (g.edges[e][1] in Y))
    g0deg = Counter()
    for e in G0:
        for v in g.edges[e]:
            g0deg[v] += 1
    I2 = frozenset(x for x in X if g0deg[x] == 0)
    GX = frozenset(e for e in range(g.m) if g.edges[e][0] in X and g.edges[e][1] in X)
    I21 = frozenset(x for x in I2 if not any(g.other(e, x) in I2 for e in g.incidence[x] if e in GX))
    G1 = G0
    core = X - I2

    load = Counter()
    F1 = set()
    for x in sorted(core):
        opts = [e for e in g.incidence[x] if e in G1]
        e = min(opts, key=lambda f: (load[g.other(f, x)], f))
        F1.add(e)
        load[g.other(e, x)] += 1

    rest = I2 - I21
    forest: set[int] = set()
    seen: set[int] = set()
    for r in sorted(rest):
        if r in seen:
            continue
        seen.add(r)
        q = deque([r])
        while q:
            u = q.popleft()
            for e in g.incidence[u]:
                w = g.other(e, u)
                if w in rest and w not in seen:
                    seen.add(w)
                    forest.add(e)
                    q.append(w)
    fdeg = Counter()
    for e in forest:
        for v in g.edges[e]:
            fdeg[v] += 1
    changed = True
    while changed:
        changed = False
        for e in sorted(forest):
            u, v = g.edges[e]
            if fdeg[u] >= 2 and fdeg[v] >= 2:
                forest.discard(e)
                fdeg[u] -= 1
                fdeg[v] -= 1
                changed = True
    F2 = frozenset(forest)

    F3 = set()
    for v in sorted(I21):
        opts = [e for e in g.incidence[v] if g.other(e, v) in core]
        if not opts:
            raise ConstructionError(f"I21 vertex {v} has no neighbour outside I2")
        F3.add(min(opts))
    return I2, I21, G1, frozenset(F1), F2, frozenset(F3)


def star_sizes(g: BipartiteGraph, forest) -> list[int]:
    return [len(c.edges) for c in connected_components(g, forest)]


# ---------------------------------------------------------------- G3


def _shortest_cycle(g: BipartiteGraph, avail: set[int], limit: int) -> list[int] | None:
    """Edges of a shortest cycle in ``avail`` of length at most ``limit``."""
    adj: dict[int, list[int]] = {}
    for e in sorted(avail):
        u, v = g.edges[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    best = None
    best_len = limit + 1
    for r in sorted(adj):
        dist = {r: 0}
        par = {r: -1}
        q = deque([r])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best_len:
                break
            for e in adj[u]:
                if e == par[u]:
                    continue
                w = g.other(e, u)
                if w not in dist:
                    dist[w] = dist[u] + 1
                    par[w] = e
                    q.append(w)
                    continue
                length = dist[u] + dist[w] + 1
                if length < best_len:
                    cyc = _closed_walk(g, par, u, w, e)
                    if cyc is not None:
                        best, best_len = cyc, length
        if best_len == 4:
            break
    return best


def _closed_walk(g, par, u, w, e):
    def path(v):
        out = []
        while par[v] != -1:
            out.append(par[v])
            v = g.other(par[v], v)
        return out

    pu, pw = path(u), path(w)
    edges = pu + pw + [e]
    if len(set(edges)) != len(edges):
        return None
    verts = Counter()
    for f in edges:
        for v in g.edges[f]:
            verts[v] += 1
    if any(c != 2 for c in verts.values()):
        return None
    return edges


def build_G3(g: BipartiteGraph, host: frozenset[int], budget: int) -> frozenset[int]:
    """Even subgraph of ``host`` grown by shortest cycles while they fit in ``budget``."""
    if budget <= 0:
        return frozenset()
    avail = set(host)
    out: set[int] = set()
    while True:
        rem = budget - len(out)
        if rem < 4:
            break
        cyc = _shortest_cycle(g, avail, rem)
        if cyc is None:
            break
        out.update(cyc)
        avail.difference_update(cyc)
    return frozenset(out)


# ---------------------------------------------------------------- counts


def label_class_counts(n: int) -> tuple[int, int, int]:
    """Numbers of 0-, 1- and 2-labels in ``[1, n]``."""
    return n // 3, (n + 2) // 3, (n + 1) // 3


def compute_counts(
    g, X, Y, M, E1, E2, G1, GX, F1, F2, F3, G3, m11: int | None = None
) -> Counts:
    n_X, n_Y = len(X), len(Y)
    Y_even = [y for y in Y if g.degree(y) % 2 == 0]
    n_even = len(Y_even)
    m = g.m
    m1, m2 = len(G1), len(GX)
    l0, l1, l2 = label_class_counts(m)
    front = n_Y + n_even + m1
    l10, l11, l12 = label_class_counts(front)
    eps1 = len(G3)
    k1, k2, k3 = len(F1), len(F2), len(F3)
    m21 = eps1 + k2 + k3
    if m11 is None:
        m11 = l1 + l2 - m21
    sizes = star_sizes(g, F2)
    return Counts(
        n_X=n_X, n_Y=n_Y, n_Y_odd=n_Y - n_even, n_Y_even=n_even, m=m, m1=m1, m2=m2,
        m11=m11, m10=m1 - m11, m21=m21, m20=m2 - m21, k1=k1, k2=k2, k3=k3,
        s1=sum(1 for s in sizes if s % 2), s2=sum(1 for s in sizes if s % 2 == 0),
        eps1=eps1, gamma=(l1 - l11) + (l2 - l12) - m21,
        l0=l0, l1=l1, l2=l2, l10=l10, l11=l11, l12=l12,
        l20=l0 - l10, l21=l1 - l11, l22=l2 - l12,
    )


# ---------------------------------------------------------------- E4


@dataclass
class G4Status:
    eulerian: int
    special: frozenset[int]
    with_odd_core: int
    odd_link_ok: bool
    components: list = field(repr=False, default_factory=list)

    @property
    def potential(self) -> tuple[int, int]:
        return (self.eulerian, -self.with_odd_core)

    @property
    def done(self) -> bool:
        return self.eulerian == 0 and self.odd_link_ok


def g4_status(g, E4, F3, Y, I21, core) -> G4Status:
    """Eulerian-component count and the odd-vertex component condition of E4 ∪ F3."""
    edges = set(E4) | set(F3)
    deg = Counter()
    for e in edges:
        for v in g.edges[e]:
            deg[v] += 1
    y_odd = frozenset(y for y in Y if deg[y] % 2)
    special = frozenset(I21) | y_odd
    comps = connected_components(g, edges)
    eul = 0
    h3 = 0
    for c in comps:
        odd = [v for v in c.vertices if deg[v] % 2]
        if not odd:
            eul += 1
            continue
        if any(v in special for v in c.vertices) and any(v in core for v in odd):
            h3 += 1
    ok = not special or h3 > 0
    return G4Status(eul, special, h3, ok, comps)


def build_E4(g, X, Y, I2, I21, G1, F1, F3, m11: int, rng=None, max_rounds: int | None = None):
    """E4 ⊆ G1 of size ``m11`` containing a cover of ``X \\ I2`` with
    ``|E4(y)| >= 8`` for every y and ``|E4(y)|`` even for all but at most one,
    repaired until E4 ∪ F3 has no Eulerian component and meets the odd-vertex
    component condition. Returns ``(E4, F1, notes)`` with F1 re-derived.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    core = X - I2
    free_at: dict[int, list[int]] = {y: [] for y in Y}
    for e in sorted(G1):
        u, v = g.edges[e]
        free_at[u if u in Y else v].append(e)
    E4: set[int] = set()
    cnt = Counter()

    def add(e):
        u, v = g.edges[e]
        y = u if u in Y else v
        E4.add(e)
        free_at[y].remove(e)
        cnt[y] += 1

    for e in sorted(F1):
        add(e)
    for y in sorted(Y):
        if cnt[y] % 2:
            if not free_at[y]:
                raise ConstructionError(f"no G1 edge left at {y} for the parity fix")
            add(free_at[y][0])
    for y in sorted(Y):
        while cnt[y] < 8:
            if not free_at[y]:
                raise ConstructionError(f"G1 degree of {y} is below 8")
            add(free_at[y][0])
    rem = m11 - len(E4)
    if rem < 0:
        raise ConstructionError(f"E4 already has {len(E4)} edges, more than m11 = {m11}")
    while rem >= 2:
        y = max(sorted(Y), key=lambda v: len(free_at[v]))
        if len(free_at[y]) < 2:
            raise ConstructionError("G1 ran out of X-links for E4")
        add(free_at[y][0])
        add(free_at[y][0])
        rem -= 2
    if rem == 1:
        y = max(sorted(Y), key=lambda v: len(free_at[v]))
        if not free_at[y]:
            raise ConstructionError("G1 ran out of edges for E4")
        add(free_at[y][0])

    E4, notes = _repair(g, E4, F3, Y, I21, core, G1, rng, max_rounds)

    F1_new = set()
    e4_at: dict[int, list[int]] = {}
    for e in sorted(E4):
        for v in g.edges[e]:
            e4_at.setdefault(v, []).append(e)
    for x in sorted(core):
        if x not in e4_at:
            raise ConstructionError(f"X vertex {x} lost its E4 cover")
        keep = [e for e in e4_at[x] if e in F1]
        F1_new.add(keep[0] if keep else e4_at[x][0])
    return frozenset(E4), frozenset(F1_new), notes


def _y_of(g, e, Y):
    u, v = g.edges[e]
    return u if u in Y else v


def _repair(g, E4, F3, Y, I21, core, G1, rng, max_rounds):
    notes: list[str] = []
    status = g4_status(g, E4, F3, Y, I21, core)
    if status.done:
        return E4, notes
    if max_rounds is None:
        max_rounds = 4 * len(Y) + 20
    xdeg = Counter()
    for e in E4:
        for v in g.edges[e]:
            if v not in Y:
                xdeg[v] += 1

    def covered_after(removed, added):
        d = Counter(xdeg)
        for e in removed:
            d[g.other(e, _y_of(g, e, Y))] -= 1
        for e in added:
            d[g.other(e, _y_of(g, e, Y))] += 1
        return all(d[x] > 0 for x in core)

    def apply(removed, added):
        for e in removed:
            E4.discard(e)
            xdeg[g.other(e, _y_of(g, e, Y))] -= 1
        for e in added:
            E4.add(e)
            xdeg[g.other(e, _y_of(g, e, Y))] += 1

    def trial(removed, added):
        cand = (E4 - set(removed)) | set(added)
        return g4_status(g, cand, F3, Y, I21, core)

    for rnd in range(max_rounds):
        if status.done:
            return E4, notes
        target = _offending(status)
        best = None
        for removed, added, kind in _moves(g, E4, Y, G1, target, status):
            if not covered_after(removed, added):
                continue
            st = trial(removed, added)
            if st.potential < status.potential or (not status.odd_link_ok and st.odd_link_ok and st.eulerian <= status.eulerian):
                best = (removed, added, kind, st)
                break
        if best is None:
            # random swap that does not make things worse
            moved = False
            ys = sorted(Y)
            for _ in range(50):
                y = ys[int(rng.integers(len(ys)))]
                at = [e for e in E4 if _y_of(g, e, Y) == y]
                free = [e for e in G1 if e not in E4 and _y_of(g, e, Y) == y]
                if not at or not free:
                    continue
                r = at[int(rng.integers(len(at)))]
                a = free[int(rng.integers(len(free)))]
                if not covered_after([r], [a]):
                    continue
                st = trial([r], [a])
                if st.eulerian <= status.eulerian:
                    apply([r], [a])
                    status = st
                    notes.append(f"random swap at {y}")
                    moved = True
                    break
            if not moved:
                break
            continue
        removed, added, kind, st = best
        apply(removed, added)
        status = st
        notes.append(f"{kind}: -{sorted(removed)} +{sorted(added)}")
    if status.done:
        return E4, notes
    raise ConstructionError(
        f"E4 repair stalled with {status.eulerian} Eulerian components, odd-link condition {status.odd_link_ok}"
    )


def _offending(status: G4Status) -> Component:
    for c in status.components:
        if all(c.degree(v) % 2 == 0 for v in c.vertices):
            return c
    for c in status.components:
        if any(v in status.special for v in c.vertices):
            return c
    return status.components[0]


def _moves(g, E4, Y, G1, H: Component, status: G4Status):
    """Candidate exchanges for component ``H``: single swaps at its Y vertices,
    then double transfers to a Y vertex with spare G1 edges."""
    ys = sorted(v for v in H.vertices if v in Y)
    free_at: dict[int, list[int]] = {}
    at: dict[int, list[int]] = {}
    for e in sorted(G1):
        y = _y_of(g, e, Y)
        (at if e in E4 else free_at).setdefault(y, []).append(e)
    for y in ys:
        for r in at.get(y, []):
            if r not in H.edges:
                continue
            for a in free_at.get(y, []):
                yield [r], [a], "swap"
    donors = sorted(Y, key=lambda v: (-len(free_at.get(v, [])), v))
    for y in ys:
        mine = [e for e in at.get(y, []) if e in H.edges]
        if len(at.get(y, [])) < 10 or len(mine) < 2:
            continue
        pairs = []
        try:
            pairs.append(two_removable_edges(H, y))
        except ContractError:
            pass
        pairs += [(mine[i], mine[j]) for i in range(min(len(mine), 6)) for j in range(i + 1, min(len(mine), 6))]
        for ystar in donors[:3]:
            fr = free_at.get(ystar, [])
            if ystar == y or len(fr) < 2:
                continue
            trip = fr[:3]
            adds = [(trip[i], trip[j]) for i in range(len(trip)) for j in range(i + 1, len(trip))]
            for r1, r2 in pairs:
                for a1, a2 in adds:
                    yield [r1, r2], [a1, a2], "transfer"


# ---------------------------------------------------- exceptional Y vertex


def choose_E40(g, plan: DecompositionPlan, residues) -> tuple[frozenset[int], frozenset[int]]:
    """``(Y0, E40)`` from the residue plan of E4 ∪ F3.

    ``y'`` is the Y vertex whose E4 residues are unbalanced; E40 holds one or
    two of its majority-residue edges so that the rest balances.
    """
    off = sorted(y for y in plan.Y if residues.imbalance(y) != 0)
    if not off:
        return frozenset(), frozenset()
    if len(off) > 1:
        raise ConstructionError(f"several unbalanced Y vertices: {off}")
    y = off[0]
    d = residues.imbalance(y)
    if abs(d) > 2:
        raise ConstructionError(f"Y vertex {y} unbalanced by {d}")
    major = 1 if d > 0 else 2
    es = sorted(e for e in g.incidence[y] if e in plan.E4 and residues.residue_of_edge[e] == major)
    return frozenset([y]), frozenset(es[: abs(d)])


# ---------------------------------------------------------------- driver


def decompose(g: BipartiteGraph, rng: np.random.Generator | None = None) -> DecompositionPlan:
    if rng is None:
        rng = np.random.default_rng(0)
    if g.min_degree() < 15:
        raise ContractError(f"minimum degree {g.min_degree()} < 15")
    X, Y, M = konig_partition(g)
    E1, E2 = choose_E1_E2(g, X, Y, M, rng)
    I2, I21, G1, F1, F2, F3 = build_forests(g, X, Y, M, E1, E2)
    GX = frozenset(e for e in range(g.m) if g.edges[e][0] in X and g.edges[e][1] in X)
    pre = compute_counts(g, X, Y, M, E1, E2, G1, GX, F1, F2, F3, frozenset())
    budget = pre.l21 + pre.l22 - (pre.k2 + pre.k3)
    G3 = build_G3(g, GX - F2 - F3, budget) if budget >= 0 else frozenset()
    counts = compute_counts(g, X, Y, M, E1, E2, G1, GX, F1, F2, F3, G3)
    E4, F1, notes = build_E4(g, X, Y, I2, I21, G1, F1, F3, counts.m11, rng)
    counts = compute_counts(g, X, Y, M, E1, E2, G1, GX, F1, F2, F3, G3, m11=len(E4))
    matched = set()
    for e in M:
        matched.update(g.edges[e])
    I1 = frozenset(x for x in X if not any(e in GX for e in g.incidence[x]))
    return DecompositionPlan(
        g=g, X=X, Y=Y, Z=frozenset(y for y in Y if y not in matched), I1=I1, I2=I2, I21=I21,
        Y_odd=frozenset(y for y in Y if g.degree(y) % 2), Y_even=frozenset(y for y in Y if g.degree(y) % 2 == 0),
        M=M, E1=E1, E2=E2, G1=G1, GX=GX, F1=F1, F2=F2, F3=F3, G3=G3, E4=E4,
        counts=counts, notes=tuple(notes),
    )


# ---------------------------------------------------------------- invariants


def check_plan(plan: DecompositionPlan) -> list[str]:
    """Every violated structural invariant or count identity, as text."""
    g, c = plan.g, plan.counts
    bad: list[str] = []

    def need(cond, msg):
        if not cond:
            bad.append(msg)

    X, Y = plan.X, plan.Y
    need(X | Y == frozenset(range(g.n)) and not X & Y, "X, Y do not partition V")
    need(all(not (g.edges[e][0] in Y and g.edges[e][1] in Y) for e in range(g.m)), "Y not independent")
    mdeg = Counter(v for e in plan.M for v in g.edges[e])
    need(all(mdeg[v] <= 1 for v in mdeg), "M is not a matching")
    need(all(mdeg[x] == 1 for x in X), "M does not saturate X")
    need(all((g.edges[e][0] in X) != (g.edges[e][1] in X) for e in plan.M), "M leaves G[X,Y]")
    need(plan.Z == frozenset(y for y in Y if mdeg[y] == 0), "Z is not the unsaturated part of Y")
    fam = [plan.M, plan.E1, plan.E2, plan.G1, plan.GX]
    need(sum(len(s) for s in fam) == g.m and frozenset().union(*fam) == frozenset(range(g.m)),
         "M, E1, E2, G1, G[X] do not partition E")
    cov1 = Counter(_y_of(g, e, Y) for e in plan.E1)
    cov2 = Counter(_y_of(g, e, Y) for e in plan.E2)
    need(len(plan.E1) == len(plan.Z) and set(cov1) == set(plan.Z) and all(v == 1 for v in cov1.values()),
         "E1 does not cover Z exactly once")
    need(len(plan.E2) == c.n_Y_even and set(cov2) == set(plan.Y_even) and all(v == 1 for v in cov2.values()),
         "E2 does not cover Y_even exactly once")
    g0deg = Counter(v for e in plan.G1 for v in g.edges[e])
    need(all(g0deg[x] > 0 for x in plan.I1), "some I1 vertex is isolated in G0")
    need(plan.I2 == frozenset(x for x in X if g0deg[x] == 0), "I2 is not the G0-isolated part of X")
    core = plan.X_core
    f1 = Counter(v for e in plan.F1 for v in g.edges[e] if v in X)
    need(plan.F1 <= plan.G1 and set(f1) == set(core) and all(v == 1 for v in f1.values()),
         "F1 does not cover X\\I2 exactly once")
    f2v = set(v for e in plan.F2 for v in g.edges[e])
    need(f2v == set(plan.I2 - plan.I21), "F2 does not cover I2\\I21")
    need(all(len(cc.edges) == len(cc.vertices) - 1 and max(cc.degree(v) for v in cc.vertices) == len(cc.edges)
             for cc in connected_components(g, plan.F2)), "F2 is not a star forest")
    f3 = Counter(v for e in plan.F3 for v in g.edges[e] if v in plan.I21)
    need(set(f3) == set(plan.I21) and all(v == 1 for v in f3.values())
         and all(any(v in core for v in g.edges[e]) for e in plan.F3), "F3 does not tie I21 into X\\I2")
    need(plan.G3 <= plan.GX - plan.F2 - plan.F3 and is_even_subgraph(g, plan.G3), "G3 is not an even subgraph")
    need(c.m21 == c.eps1 + c.k2 + c.k3 == len(plan.E3), "m21 != eps1 + k2 + k3")
    need(c.k1 + c.k2 + c.k3 <= c.n_X - 1, f"forest bound: k1+k2+k3={c.k1 + c.k2 + c.k3} > n_X-1={c.n_X - 1}")
    need(c.k2 + c.k3 <= len(plan.I2) - 1, f"forest bound: k2+k3={c.k2 + c.k3} > |I2|-1={len(plan.I2) - 1}")
    need(c.k2 + c.k3 <= c.n_X - 15, "k2+k3 > n_X-15")
    need(c.m1 >= 14 * c.n_Y, "m1 < 14 n_Y")
    need(-c.n_X < 2 * c.gamma and c.gamma < c.n_X, f"gamma={c.gamma} outside (-n_X/2, n_X)")
    need(c.m == c.n_Y + c.n_Y_even + c.m1 + c.m2, "m != n_Y + n_Y_even + m1 + m2")
    need(c.m10 == c.l0 - c.m20 - c.n_Y - c.n_Y_even, "|O3| != m10")
    need(c.gamma == c.l21 + c.l22 - c.m21 == c.m20 - c.l20 == c.m11 - (c.l11 + c.l12), "gamma identities fail")
    need(c.m11 == c.l1 + c.l2 - c.m21, "m11 != ceil(2m/3) - m21")
    e4y = Counter(_y_of(g, e, Y) for e in plan.E4)
    need(plan.E4 <= plan.G1 and len(plan.E4) == c.m11, "E4 not a subset of G1 of size m11")
    need(plan.F1 <= plan.E4, "F1 not inside E4")
    need(all(e4y[y] >= 8 for y in Y), "some Y vertex has fewer than 8 E4 edges")
    need(sum(1 for y in Y if e4y[y] % 2) <= 1, "more than one Y vertex has odd E4 degree")
    st = g4_status(g, plan.E4, plan.F3, Y, plan.I21, core)
    need(st.eulerian == 0, "G4 has an Eulerian component")
    need(st.odd_link_ok, "no G4 component has odd vertices in both I21 ∪ Y_odd and X\\I2")
    return bad
