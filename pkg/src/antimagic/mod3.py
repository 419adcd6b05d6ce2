"""Residue-class labeling of a bipartite edge set.

Edges receive residue 1 or 2 (mod 3) so that every X-side vertex ends with a
nonzero residue sum while Y-side vertices stay balanced. Concrete label values
are chosen later by :func:`materialize`; the plan fixes only residues.
"""
from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import ConstructionError, ContractError
from .graph import EdgeSubset, Graph
from .trails import TrailDecomposition, prepared_decomposition

__all__ = [
    "ResiduePlan",
    "ResiduePool",
    "assign_residues",
    "materialize",
    "ensure_both_residues",
    "residue_sums",
]


@dataclass(frozen=True)
class ResiduePlan:
    residue_of_edge: Mapping[int, int]
    x_side: frozenset[int]
    y_side: frozenset[int]
    degree: Mapping[int, int]
    l1_v: Mapping[int, int]
    l2_v: Mapping[int, int]
    decomposition: TrailDecomposition | None = None
    completion_fallback: bool = False
    swapped_classes: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def l1(self) -> int:
        return sum(1 for r in self.residue_of_edge.values() if r == 1)

    @property
    def l2(self) -> int:
        return sum(1 for r in self.residue_of_edge.values() if r == 2)

    def imbalance(self, v: int) -> int:
        return self.l1_v.get(v, 0) - self.l2_v.get(v, 0)

    def residue_sum(self, v: int) -> int:
        return (self.l1_v.get(v, 0) + 2 * self.l2_v.get(v, 0)) % 3


def _counts(residues: Mapping[int, int], g: Graph):
    l1: Counter[int] = Counter()
    l2: Counter[int] = Counter()
    for e, r in residues.items():
        tgt = l1 if r == 1 else l2
        for v in g.edges[e]:
            tgt[v] += 1
    return dict(l1), dict(l2)


def residue_sums(plan: ResiduePlan) -> dict[int, int]:
    verts = set(plan.degree)
    return {v: plan.residue_sum(v) for v in verts}


class ResiduePool:
    """Sorted label multisets per residue class with greatest-first removal."""

    def __init__(self, ones: Iterable[int], twos: Iterable[int]):
        self.ones = sorted(ones)
        self.twos = sorted(twos)
        for x in self.ones:
            if x % 3 != 1:
                raise ContractError(f"{x} is not a 1-label")
        for x in self.twos:
            if x % 3 != 2:
                raise ContractError(f"{x} is not a 2-label")

    def __len__(self) -> int:
        return len(self.ones) + len(self.twos)

    def _cls(self, mu: int) -> list[int]:
        return self.ones if mu == 1 else self.twos

    def size(self, mu: int) -> int:
        return len(self._cls(mu))

    def peek_greatest(self, mu: int) -> int | None:
        lst = self._cls(mu)
        return lst[-1] if lst else None

    def pop_greatest(self, mu: int) -> int:
        lst = self._cls(mu)
        if not lst:
            raise ConstructionError(f"no {mu}-label left in pool")
        return lst.pop()

    def pop_least(self, mu: int) -> int:
        lst = self._cls(mu)
        if not lst:
            raise ConstructionError(f"no {mu}-label left in pool")
        return lst.pop(0)

    def remove(self, label: int) -> None:
        lst = self._cls(label % 3)
        i = bisect.bisect_left(lst, label)
        if i == len(lst) or lst[i] != label:
            raise ConstructionError(f"label {label} not in pool")
        lst.pop(i)

    def greatest_class(self) -> int | None:
        a, b = self.peek_greatest(1), self.peek_greatest(2)
        if a is None and b is None:
            return None
        if b is None or (a is not None and a > b):
            return 1
        return 2


def _run_rules(g: Graph, trails, xs: frozenset[int], deg, iota: int, fallback: bool):
    """Apply the walking rules to the ordered trails; returns residues by edge."""
    res: dict[int, int] = {}
    h: Counter[int] = Counter()
    used = [0, 0, 0]
    last = len(trails) - 1
    for ti, t in enumerate(trails):
        vs, es = t.vertex_seq, t.edge_seq
        special = fallback and ti == last
        prev = 0
        for k, e in enumerate(es):
            v = vs[k]
            if k == 0:
                if t.kind == "X":
                    mu = 1
                elif t.kind == "Y":
                    mu = 1 if used[1] <= used[2] else 2
                else:
                    mu = 1 if used[1] <= used[2] + iota else 2
            elif v in xs:
                d = deg[v]
                hv = h[v]
                if d % 2 == 0 and hv % 2 == 0:
                    raise ConstructionError(
                        f"parity rule broken at vertex {v}: {hv} labelled of even degree {d}"
                    )
                if d % 2 == 1 or hv <= d - 3:
                    mu = 3 - prev
                else:
                    mu = prev
            else:
                mu = 3 - prev
                if special and k == 1:
                    mu = 1
            res[e] = mu
            used[mu] += 1
            for w in g.edges[e]:
                h[w] += 1
            prev = mu
    return res, used[1], used[2]


def assign_residues(
    g: Graph,
    s: EdgeSubset | Iterable[int],
    x_side: Iterable[int],
    l1: int,
    l2: int,
) -> ResiduePlan:
    """Residue plan consuming exactly ``l1`` ones and ``l2`` twos.

    Afterwards every vertex of ``x_side`` has a nonzero residue sum and the
    other side is balanced: ``|l1_y - l2_y| <= 1`` when some Y vertex has odd
    degree, otherwise equal counts everywhere except possibly one vertex off
    by two.
    """
    mem = s.members if isinstance(s, EdgeSubset) else frozenset(s)
    xs = frozenset(x_side)
    if l1 < 0 or l2 < 0 or l1 + l2 != len(mem):
        raise ContractError(f"pool of {l1}+{l2} labels does not match {len(mem)} edges")
    if abs(l1 - l2) > 2:
        raise ContractError(f"class sizes {l1}, {l2} differ by more than 2")
    deg: Counter[int] = Counter()
    for e in mem:
        u, v = g.edges[e]
        if (u in xs) == (v in xs):
            raise ContractError(f"edge {e} does not cross the bipartition")
        deg[u] += 1
        deg[v] += 1
    ys = frozenset(v for v in deg if v not in xs)
    odd_y = any(deg[v] % 2 for v in ys)

    if not mem:
        return ResiduePlan({}, xs, ys, {}, {}, {})

    swap = l2 > l1
    a1, a2 = (l2, l1) if swap else (l1, l2)
    dec = prepared_decomposition(g, mem, xs)
    if odd_y and dec.r2 == 0:
        raise ContractError(
            "odd-degree Y vertex present but no component has odd vertices on both sides"
        )
    iota = a1 - a2
    res, u1, u2 = _run_rules(g, dec.trails, xs, deg, iota, fallback=False)
    fallback = False
    if (u1, u2) != (a1, a2):
        if dec.r2 == 0 and iota == 2:
            res, u1, u2 = _run_rules(g, dec.trails, xs, deg, iota, fallback=True)
            fallback = True
        if (u1, u2) != (a1, a2):
            raise ConstructionError(
                f"residue rules used ({u1}, {u2}) labels but pool holds ({a1}, {a2})"
            )
    if swap:
        res = {e: 3 - r for e, r in res.items()}
    c1, c2 = _counts(res, g)
    plan = ResiduePlan(
        res, xs, ys, dict(deg), c1, c2, dec, completion_fallback=fallback, swapped_classes=swap
    )
    _check_conclusions(plan, odd_y)
    return plan


def _check_conclusions(plan: ResiduePlan, odd_y: bool) -> None:
    for x in plan.x_side:
        if x in plan.degree and plan.residue_sum(x) == 0:
            raise ConstructionError(f"X vertex {x} ended with a 0 residue sum")
    off = [y for y in plan.y_side if plan.imbalance(y) != 0]
    if odd_y:
        bad = [y for y in off if abs(plan.imbalance(y)) > 1]
        if bad:
            raise ConstructionError(f"Y vertices {bad} unbalanced by more than one")
    else:
        if len(off) > 1 or any(abs(plan.imbalance(y)) != 2 for y in off):
            raise ConstructionError(f"even-degree Y side unbalanced at {sorted(off)}")


def materialize(
    plan: ResiduePlan, pool: ResiduePool, reserved: Iterable[int] = ()
) -> dict[int, int]:
    """Concrete labels honouring the plan's residues.

    Reserved edges take the greatest labels of their class (in edge-id order);
    the rest take the remaining labels in increasing order by edge id.
    """
    need = Counter(plan.residue_of_edge.values())
    if need.get(1, 0) != pool.size(1) or need.get(2, 0) != pool.size(2):
        raise ContractError(
            f"pool has ({pool.size(1)}, {pool.size(2)}) labels, plan needs ({need.get(1, 0)}, {need.get(2, 0)})"
        )
    reserved = sorted(set(reserved))
    for e in reserved:
        if e not in plan.residue_of_edge:
            raise ContractError(f"reserved edge {e} is not in the plan")
    ones, twos = list(pool.ones), list(pool.twos)
    out: dict[int, int] = {}
    for e in reserved:
        out[e] = (ones if plan.residue_of_edge[e] == 1 else twos).pop()
    for e in sorted(plan.residue_of_edge):
        if e in out:
            continue
        out[e] = (ones if plan.residue_of_edge[e] == 1 else twos).pop(0)
    return out


def ensure_both_residues(
    g: Graph, plan: ResiduePlan, pendants: Iterable[int] | None = None
) -> ResiduePlan:
    """Make both nonzero residues appear among sums of X and the pendants W.

    When every sum on X ∪ W has the same residue, one double exchange at an
    X vertex ``u`` flips the residue of ``u`` and of two other X vertices.
    Returns the plan unchanged if both residues already occur.
    """
    xs = plan.x_side
    if pendants is None:
        w = frozenset(y for y in plan.y_side if plan.degree[y] == 1)
    else:
        w = frozenset(pendants)
    for v in w:
        if v not in plan.y_side or plan.degree.get(v) != 1:
            raise ContractError(f"vertex {v} is not a pendant Y vertex")
    core = [y for y in plan.y_side if y not in w]
    odd_core = [y for y in core if plan.degree[y] % 2]
    if len(odd_core) > 1:
        raise ContractError("more than one non-pendant Y vertex has odd degree")
    if any(plan.degree[y] < 4 for y in core):
        raise ContractError("a non-pendant Y vertex has degree below four")
    n_vertices = len(plan.degree)
    if 2 * len(core) < n_vertices:
        raise ContractError("non-pendant Y vertices are fewer than half the vertices")

    group = [v for v in plan.degree if v in xs] + sorted(w)
    sums = {v: plan.residue_sum(v) for v in group}
    if 1 in sums.values() and 2 in sums.values():
        return plan
    c = next(iter(sums.values()))
    # c is the shared residue; swap two c-flipping edges at u
    give = 2 if c == 1 else 1  # residue to move away from u
    take = 3 - give
    res = dict(plan.residue_of_edge)
    core_set = frozenset(core)
    inc: dict[int, list[int]] = {}
    for e in res:
        for v in g.edges[e]:
            inc.setdefault(v, []).append(e)
    for v in inc:
        inc[v].sort()

    def other(e, v):
        a, b = g.edges[e]
        return b if a == v else a

    for u in sorted(v for v in group if v in xs):
        cand = [e for e in inc[u] if res[e] == give and other(e, u) in core_set]
        if len(cand) < 2:
            continue
        for i in range(len(cand)):
            for j in range(i + 1, len(cand)):
                e1, e2 = cand[i], cand[j]
                y1, y2 = other(e1, u), other(e2, u)
                f1s = [f for f in inc[y1] if res[f] == take and other(f, y1) != u]
                f2s = [f for f in inc[y2] if res[f] == take and other(f, y2) != u]
                for f1 in f1s:
                    u1 = other(f1, y1)
                    for f2 in f2s:
                        u2 = other(f2, y2)
                        if u1 == u2 or f1 == f2:
                            continue
                        trial = dict(res)
                        trial[e1], trial[f1] = res[f1], res[e1]
                        trial[e2], trial[f2] = res[f2], res[e2]
                        c1, c2 = _counts(trial, g)
                        cand_plan = replace(
                            plan,
                            residue_of_edge=trial,
                            l1_v=c1,
                            l2_v=c2,
                            notes=plan.notes + (f"double exchange at {u} via {y1},{y2}",),
                        )
                        new = {v: cand_plan.residue_sum(v) for v in group}
                        flipped = [v for v in group if new[v] != sums[v]]
                        if 0 in new.values() or sorted(flipped) != sorted({u, u1, u2}):
                            continue
                        return cand_plan
    raise ConstructionError("no double exchange yields both residues")
