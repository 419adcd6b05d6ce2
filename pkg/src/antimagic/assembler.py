"""Label assignment on top of a :class:`DecompositionPlan`.

Labels are split by residue mod 3. X vertices end with sums in residues 1 or 2
and Y vertices (all but at most one, ``y'``) with sums divisible by three, so
the two sides only have to be separated internally:

* Y sums before the last ``n_Y`` labels are equal or more than ``3 n_Y``
  apart, so the final almost-consecutive 0-labels on ``E1 ∪ M`` split them;
* M labels are handed out in the order of the X partial sums;
* a final permutation of M labels separates ``y'`` from X if needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import permutations

import numpy as np

from . import kernels
from .decomposer import DecompositionPlan, choose_E40
from .errors import ConstructionError
from .graph import connected_components, euler_tour
from .mod3 import ResiduePlan, ResiduePool, assign_residues, ensure_both_residues
from .pairing import pair_J

__all__ = [
    "LabelPartition",
    "Labeling",
    "AssemblyReport",
    "partition_labels",
    "o_sets",
    "separating_permutation",
    "Build",
    "label_cover_edges",
    "label_residue_graph",
    "level_y_sums",
    "label_matching",
    "separate_exceptional_y",
    "star_labels",
    "split_mate",
    "assemble",
    "check_partition",
]


@dataclass(frozen=True)
class Labeling:
    """Edge labels indexed by edge id."""

    g: object
    labels: tuple[int, ...]

    @property
    def label_of_edge(self) -> dict[int, int]:
        return dict(enumerate(self.labels))

    def vertex_sums(self) -> np.ndarray:
        eu, ev = self.g.endpoint_arrays()
        return kernels.vertex_sums(self.g.n, eu, ev, self.labels)


@dataclass(frozen=True)
class LabelPartition:
    O1: tuple[int, ...]
    O2: tuple[int, ...]
    O3: tuple[int, ...]
    O41: tuple[int, ...]
    O42: tuple[int, ...]
    J1: tuple[int, ...]
    J2: tuple[int, ...]
    J3: tuple[int, ...]
    J4: tuple[int, ...]
    J40: tuple[int, ...]
    J41: tuple[int, ...]
    J42: tuple[int, ...]
    J43: tuple[int, ...]
    J44: tuple[int, ...]
    theta: int
    theta1: int
    theta2: int
    alpha: int
    p1: int
    p3: int
    p4: int

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass
class AssemblyReport:
    residues: ResiduePlan | None = None
    sigma1: dict[int, int] = field(default_factory=dict)
    mate_swap: str = "none"
    switch: str = "none"
    notes: list[str] = field(default_factory=list)


def _threes(lo: int, hi: int) -> list[int]:
    return [3 * i for i in range(lo, hi + 1)]


def o_sets(c) -> dict[str, list[int]]:
    """The 0-label blocks O1, O2, O3, O4 for counts ``c``."""
    k, n_y = c.n_Y_even, c.n_Y
    O1 = _threes(c.l0 - c.m20 + 1, c.l0)
    if k == 0:
        O2, O4 = [], _threes(1, n_y)
    elif k % 2:
        O2, O4 = _threes(1, k), _threes(k + 1, k + n_y)
    else:
        # index set [1, k-1] ∪ {3k/2}; label 9k/2 sits above the first block
        O2 = _threes(1, k - 1) + [9 * k // 2]
        O4 = [x for x in _threes(k, k + n_y) if x != 9 * k // 2]
    O3 = _threes(n_y + k + 1, c.l0 - c.m20)
    return {"O1": O1, "O2": sorted(O2), "O3": O3, "O4": O4}


def _j4_blocks(c, theta: int, alpha: int):
    """Index ranges ``(lo, hi)`` of J41..J44 inside ``{3i-2, 3i-1 : i <= theta}``."""
    n_odd, n_y, k = c.n_Y_odd, c.n_Y, c.n_Y_even
    if alpha >= 0:
        return {
            "J41": (1, n_odd),
            "J43": (n_odd + 1, n_odd + alpha),
            "J42": (n_odd + alpha + 1, n_odd + alpha + k),
            "J44": (n_y + alpha + 1, theta),
        }
    return {
        "J41": (1, n_odd),
        "J42": (n_odd + 1, n_y),
        "J44": (n_y + 1, theta + alpha),
        "J43": (theta + alpha + 1, theta),
    }


def _block(lo: int, hi: int) -> list[int]:
    return sorted([3 * i - 2 for i in range(lo, hi + 1)] + [3 * i - 1 for i in range(lo, hi + 1)])


def partition_labels(c, theta1: int, theta2: int, J2=(), J3=()) -> LabelPartition:
    """All label blocks for counts ``c`` once the class sizes of J4 are known."""
    theta = min(theta1, theta2)
    alpha = c.n_Y_even + c.l0 - c.m20 - theta + 1
    os_ = o_sets(c)
    O4 = os_["O4"]
    cut = c.n_Y - c.n_X
    h = c.eps1 // 2
    J1 = sorted([3 * (c.l1 - i) + 1 for i in range(1, h + 1)] + [3 * (c.l2 - i) + 2 for i in range(1, h + 1)])
    J4 = sorted([3 * i - 2 for i in range(1, theta1 + 1)] + [3 * j - 1 for j in range(1, theta2 + 1)])
    low = set(_block(1, theta))
    J40 = sorted(x for x in J4 if x not in low)
    bl = _j4_blocks(c, theta, alpha)
    p3 = 6 * c.n_Y_odd + 3 * alpha if alpha >= 0 else 6 * theta + 3 * alpha
    return LabelPartition(
        O1=tuple(os_["O1"]), O2=tuple(os_["O2"]), O3=tuple(os_["O3"]),
        O41=tuple(O4[:cut]), O42=tuple(O4[cut:]),
        J1=tuple(J1), J2=tuple(sorted(J2)), J3=tuple(sorted(J3)), J4=tuple(J4),
        J40=tuple(J40),
        J41=tuple(_block(*bl["J41"])), J42=tuple(_block(*bl["J42"])),
        J43=tuple(_block(*bl["J43"])), J44=tuple(_block(*bl["J44"])),
        theta=theta, theta1=theta1, theta2=theta2, alpha=alpha,
        p1=3 * c.n_Y_odd, p3=p3, p4=3 * (c.n_Y + alpha + theta),
    )


def check_partition(c, P: LabelPartition) -> list[str]:
    """Violations of the label-table sizes and the bounds on theta and alpha."""
    bad = []

    def need(cond, msg):
        if not cond:
            bad.append(msg)

    m = c.m
    zeros = set(range(3, m + 1, 3))
    nonzero = set(x for x in range(1, m + 1) if x % 3)
    os_ = [P.O1, P.O2, P.O3, P.O41, P.O42]
    need(sum(map(len, os_)) == len(zeros) and set().union(*map(set, os_)) == zeros,
         "O1..O42 do not partition the 0-labels")
    js = [P.J1, P.J2, P.J3, P.J4]
    need(sum(map(len, js)) == len(nonzero) and set().union(*map(set, js)) == nonzero,
         "J1..J4 do not partition the {1,2}-labels")
    j4s = [P.J40, P.J41, P.J42, P.J43, P.J44]
    need(sum(map(len, j4s)) == len(P.J4) and set().union(*map(set, j4s)) == set(P.J4),
         "J40..J44 do not partition J4")
    need(len(P.O1) == c.m20, "|O1| != m20")
    need(len(P.O2) == c.n_Y_even, "|O2| != n_Y_even")
    need(len(P.O3) == c.m10, "|O3| != m10")
    need(len(P.O41) == c.n_Y - c.n_X, "|O41| != n_Y - n_X")
    need(len(P.O42) == c.n_X, "|O42| != n_X")
    need(len(P.J1) == c.eps1, "|J1| != eps1")
    need(len(P.J2) == c.k2, "|J2| != k2")
    need(len(P.J3) == c.k3, "|J3| != k3")
    need(len(P.J4) == c.m11, "|J4| != m11")
    need(len(P.J41) == 2 * c.n_Y_odd, "|J41| != 2 n_Y_odd")
    need(len(P.J42) == 2 * c.n_Y_even, "|J42| != 2 n_Y_even")
    need(len(P.J43) == 2 * abs(P.alpha), "|J43| != 2|alpha|")
    need(len(P.J44) == 2 * (P.theta - c.n_Y - abs(P.alpha)), "|J44| != 2(theta - n_Y - |alpha|)")
    need(len(P.J40) == abs(P.theta1 - P.theta2), "|J40| != |theta1 - theta2|")
    need(P.theta == min(P.theta1, P.theta2) and abs(P.theta1 - P.theta2) <= 2, "theta bound fails")
    need(P.alpha == c.n_Y_even + c.l0 - c.m20 - P.theta + 1 == c.n_Y_even + c.l10 - c.gamma - P.theta + 1,
         "alpha identities fail")
    need(abs(P.alpha) < 2 * c.n_Y, f"|alpha/2| = |{P.alpha}/2| >= n_Y")
    need(P.p4 == 3 * (c.n_Y + c.n_Y_even + c.l0 - c.m20 + 1), "p4 != O3 pair sum")
    return bad


# ---------------------------------------------------- separating y' from X


def _apply_perm(sigma, f, lam, sy, perm):
    new = [sigma[i] - f[i] + f[perm[i]] for i in range(len(sigma))]
    ny = sy if lam is None else sy - f[lam] + f[perm[lam]]
    return new, ny


def _distinct(sigma, f, lam, sy, perm) -> bool:
    new, ny = _apply_perm(sigma, f, lam, sy, perm)
    return len(set(new) | {ny}) == len(new) + 1


def _forward_case(sigma, f, lam, sy, b, xi):
    n = len(sigma)
    mu = sy % 3
    perm = list(range(n))
    if lam is None or not (b + 1 <= lam <= xi):
        for i in range(b, xi):
            perm[i] = i + 1
        perm[xi] = b
        return perm, "shift"
    if lam < xi:
        for i in range(b + 1, xi):
            perm[i] = i + 1
        perm[xi] = b + 1
        return perm, "shift past mate"
    etas = [i for i in range(b) if sigma[i] % 3 == 3 - mu]
    if etas:
        eta = max(etas)
        for i in range(eta + 1, b + 1):
            perm[i] = i - 1
        perm[eta] = b
        return perm, "shift down"
    sy2 = sy - f[xi]
    beta = next(j for j in range(b + 1) if sy2 <= sigma[j] - f[j]) if any(
        sy2 <= sigma[j] - f[j] for j in range(b + 1)
    ) else b
    perm[xi] = beta
    for j in range(beta, xi):
        perm[j] = j + 1
    return perm, "insert"


def separating_permutation(sigma, f, lam, sy):
    """Permutation of the M labels that separates ``y'`` from X.

    ``sigma`` are the final X sums in increasing order, ``f`` their M labels
    (increasing), ``lam`` the position of the X vertex matched to ``y'`` (or
    None) and ``sy`` the sum of ``y'``. Returns ``(perm, case)`` where the
    M edge at position ``i`` takes label ``f[perm[i]]``.
    """
    n = len(sigma)
    ident = list(range(n))
    if sy not in sigma:
        return ident, "none"
    b = sigma.index(sy)
    mu = sy % 3
    if mu == 0:
        raise ConstructionError("y' has a 0-sum")
    others = [i for i in range(n) if sigma[i] % 3 == 3 - mu]
    if not others:
        raise ConstructionError("no X vertex carries the other nonzero residue")
    dmin = min(abs(i - b) for i in others)
    for xi in sorted(i for i in others if abs(i - b) == dmin):
        if xi > b:
            perm, case = _forward_case(sigma, f, lam, sy, b, xi)
        else:
            ms = [-s for s in reversed(sigma)]
            mf = [-x for x in reversed(f)]
            mlam = None if lam is None else n - 1 - lam
            mp, case = _forward_case(ms, mf, mlam, -sy, n - 1 - b, n - 1 - xi)
            perm = [n - 1 - mp[n - 1 - i] for i in range(n)]
            case += " (mirrored)"
        if _distinct(sigma, f, lam, sy, perm):
            return perm, case
    # the cases above assume consecutive labels; search small permutations otherwise
    for i in range(n):
        for j in range(i + 1, n):
            perm = list(ident)
            perm[i], perm[j] = j, i
            if _distinct(sigma, f, lam, sy, perm):
                return perm, "fallback transposition"
    for trio in _triples(n):
        for cyc in permutations(trio):
            if list(cyc) == list(trio):
                continue
            perm = list(ident)
            for a, bb in zip(trio, cyc):
                perm[a] = bb
            if _distinct(sigma, f, lam, sy, perm):
                return perm, "fallback 3-cycle"
    raise ConstructionError("no M relabeling separates y' from X")


def _triples(n):
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                yield (i, j, k)


# ---------------------------------------------------------------- stages


class _Ledger:
    def __init__(self, g):
        self.g = g
        self.lab = [0] * g.m
        self.used: set[int] = set()

    def put(self, e: int, x: int) -> None:
        if self.lab[e]:
            raise ConstructionError(f"edge {e} labelled twice")
        if x in self.used or not 1 <= x <= self.g.m:
            raise ConstructionError(f"label {x} reused or out of range")
        self.lab[e] = x
        self.used.add(x)

    def swap(self, e: int, f: int) -> None:
        self.lab[e], self.lab[f] = self.lab[f], self.lab[e]

    def sum_at(self, v: int) -> int:
        return sum(self.lab[e] for e in self.g.incidence[v])

    def partial(self, v: int, es) -> int:
        return sum(self.lab[e] for e in self.g.incidence[v] if e in es)


def _y_of(g, e, Y):
    u, v = g.edges[e]
    return u if u in Y else v


@dataclass
class Build:
    """Labeling under construction: the plan, the label ledger and the pool."""

    plan: DecompositionPlan
    ledger: _Ledger
    pool: ResiduePool
    report: AssemblyReport
    partition: LabelPartition | None = None
    slots: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    order: list[int] = field(default_factory=list)
    order_x: list[int] = field(default_factory=list)

    @classmethod
    def start(cls, plan: DecompositionPlan) -> "Build":
        m = plan.g.m
        return cls(plan, _Ledger(plan.g), ResiduePool(range(1, m + 1, 3), range(2, m + 1, 3)), AssemblyReport())

    @property
    def labels(self) -> list[int]:
        return self.ledger.lab


def label_cover_edges(b: Build) -> None:
    """G[X]: the greatest 0-labels off E3, alternating residues around G3 and
    star labels on F2 so each star leaf keeps a nonzero residue."""
    plan, L, pool = b.plan, b.ledger, b.pool
    g, c = plan.g, plan.counts
    for e, x in zip(sorted(plan.GX - plan.E3), o_sets(c)["O1"]):
        L.put(e, x)

    h = c.eps1 // 2
    ones = [pool.pop_greatest(1) for _ in range(h)]
    twos = [pool.pop_greatest(2) for _ in range(h)]
    for comp in connected_components(g, plan.G3):
        for i, e in enumerate(euler_tour(comp).edge_seq):
            L.put(e, ones.pop(0) if i % 2 == 0 else twos.pop(0))
    for v in {v for e in plan.G3 for v in g.edges[e]}:
        if L.partial(v, plan.G3) % 3:
            raise ConstructionError(f"G3 vertex {v} has a nonzero residue")

    sizes = [len(st.edges) for st in _stars(g, plan.F2)]
    for st, labs in zip(_stars(g, plan.F2), star_labels(sizes, pool)):
        for e, x in zip(sorted(st.edges), labs):
            L.put(e, x)
    for v in plan.I2 - plan.I21:
        if L.partial(v, plan.F2) % 3 == 0:
            raise ConstructionError(f"F2 vertex {v} has a 0-residue")


def _stars(g, F2):
    return sorted(connected_components(g, F2), key=lambda s: (len(s.edges) % 2, min(s.vertices)))


def star_labels(sizes: list[int], pool: ResiduePool) -> list[list[int]]:
    """Labels for stars of the given sizes, taken greatest-first from ``pool``.

    A star of size ``s`` draws a majority from the class ``mu`` holding the
    greatest remaining label: ``s/2+1`` of ``mu`` and ``s/2-1`` of the other
    class when ``s`` is even, ``(s+1)/2`` and ``(s-1)/2`` when odd. Listed
    first, the majority labels go to the lowest edge ids.
    """
    out = []
    for s in sizes:
        mu = pool.greatest_class()
        n_mu, n_other = (s // 2 + 1, s // 2 - 1) if s % 2 == 0 else ((s + 1) // 2, (s - 1) // 2)
        if pool.size(mu) < n_mu or pool.size(3 - mu) < n_other:
            raise ConstructionError("label pool exhausted on the star forest")
        out.append([pool.pop_greatest(mu) for _ in range(n_mu)] + [pool.pop_greatest(3 - mu) for _ in range(n_other)])
    return out


def label_residue_graph(b: Build) -> None:
    """E4 ∪ F3: residues from the mod-3 planner, then label pairs per Y vertex."""
    plan, L, pool = b.plan, b.ledger, b.pool
    g, c = plan.g, plan.counts
    c1, c2 = pool.size(1), pool.size(2)
    if abs(c1 - c2) > 2:
        raise ConstructionError(f"G4 pool classes {c1}, {c2} differ by more than 2")
    res = assign_residues(g, plan.G4, plan.X_core, c1, c2)
    res = ensure_both_residues(g, res, pendants=plan.I21)
    b.report.residues = res
    R = res.residue_of_edge
    J3 = []
    for e in sorted(plan.F3):
        x = pool.pop_greatest(R[e])
        L.put(e, x)
        J3.append(x)
    J2 = [L.lab[e] for e in plan.F2]

    theta1, theta2 = pool.size(1), pool.size(2)
    Y0, E40 = choose_E40(g, plan, res)
    plan = b.plan = replace(plan, Y0=Y0, E40=E40)
    P = b.partition = partition_labels(c, theta1, theta2, J2, J3)
    if sorted(pool.ones + pool.twos) != list(P.J4):
        raise ConstructionError("remaining pool is not the lowest block")
    for e, x in zip(sorted(E40), P.J40):
        if R[e] != x % 3:
            raise ConstructionError("J40 label class does not match E40 residues")
        L.put(e, x)

    # each Y vertex pairs its residue-1 and residue-2 E4 edges into X-links
    b.order = order = sorted(plan.Y, key=lambda y: (g.degree(y), y))
    for y in order:
        es = [e for e in g.incidence[y] if e in plan.E4 and e not in E40]
        r1 = sorted(e for e in es if R[e] == 1)
        r2 = sorted(e for e in es if R[e] == 2)
        if len(r1) != len(r2) or len(r1) < 3:
            raise ConstructionError(f"E4 residues at {y} are {len(r1)}/{len(r2)}")
        b.slots[y] = list(zip(r1, r2))
    slots = b.slots
    alpha, theta = P.alpha, P.theta
    blocks = _j4_blocks(c, theta, alpha)

    def put_pair(slot, lo, hi):
        one, two = (lo, hi) if lo % 3 == 1 else (hi, lo)
        if one % 3 != 1 or two % 3 != 2:
            raise ConstructionError("label pair is not one 1-label and one 2-label")
        L.put(slot[0], one)
        L.put(slot[1], two)

    def put_block(slot_list, name):
        lo, hi = blocks[name]
        if len(slot_list) != hi - lo + 1:
            raise ConstructionError(f"{name} has {len(slot_list)} X-links for {hi - lo + 1} label pairs")
        for slot, i in zip(slot_list, range(lo, hi + 1)):
            put_pair(slot, 3 * i - 2, 3 * (lo + hi - i) - 1)

    odd_y = [y for y in order if y in plan.Y_odd]
    even_y = [y for y in order if y in plan.Y_even]
    put_block([slots[y][0] for y in odd_y], "J41")
    if even_y:
        p = 3 * (c.n_Y_odd + max(0, alpha))
        for y, pr in zip(even_y, pair_J(p, len(even_y))):
            put_pair(slots[y][0], pr.lo, pr.hi)
    n_y = len(order)
    if alpha >= 0:
        two_links, one_link = range(0, alpha // 2), range(0, (alpha + 1) // 2)
    else:
        two_links, one_link = range(n_y + alpha // 2, n_y), range(n_y - (-alpha) // 2, n_y)
    e43 = [slots[order[i]][1] for i in two_links] + [slots[order[j]][2] for j in one_link]
    put_block(e43, "J43")
    taken = set(e43)
    put_block([s for y in order for s in slots[y][1:] if s not in taken], "J44")


def level_y_sums(b: Build) -> None:
    """E2 evens out the Y_even sums; G1 minus E4 gets X-links of equal sum."""
    plan, L = b.plan, b.ledger
    g, c = plan.g, plan.counts
    os_ = o_sets(c)
    even_y = [y for y in b.order if y in plan.Y_even]
    e2_at = {_y_of(g, e, plan.Y): e for e in plan.E2}
    first = {y: L.lab[b.slots[y][0][0]] + L.lab[b.slots[y][0][1]] for y in even_y}
    for y, x in zip(sorted(even_y, key=lambda y: (first[y], y)), sorted(os_["O2"], reverse=True)):
        L.put(e2_at[y], x)
    if len({first[y] + L.lab[e2_at[y]] for y in even_y}) > 1:
        raise ConstructionError("E2 labels do not level the Y_even sums")

    O3 = os_["O3"]
    lo, hi = (O3[0] // 3, O3[-1] // 3) if O3 else (0, -1)
    pairs = [(3 * i, 3 * (lo + hi - i)) for i in range(lo, (lo + hi + 1) // 2)]
    middle = 3 * ((lo + hi) // 2) if (hi - lo + 1) % 2 else None
    leftovers, links = [], []
    for y in b.order:
        es = sorted(e for e in g.incidence[y] if e in plan.G1 and e not in plan.E4)
        if len(es) % 2:
            leftovers.append(es.pop())
        links += [(es[i], es[i + 1]) for i in range(0, len(es), 2)]
    if len(links) != len(pairs) or (middle is None) != (not leftovers) or len(leftovers) > 1:
        raise ConstructionError("G1 minus E4 does not split into X-links matching O3")
    for (e, f), (x, z) in zip(links, pairs):
        L.put(e, x)
        L.put(f, z)
    if leftovers:
        L.put(leftovers[0], middle)

    late = plan.E1 | plan.M
    sigma1 = {y: sum(L.lab[e] for e in g.incidence[y] if e not in late) for y in plan.Y}
    b.report.sigma1 = sigma1
    rest = sorted(sigma1[y] for y in plan.Y - plan.Y0)
    for u, w in zip(rest, rest[1:]):
        if 0 < w - u <= 3 * c.n_Y:
            raise ConstructionError(f"Y partial sums {u}, {w} closer than 3 n_Y")


def label_matching(b: Build) -> None:
    """E1 from the bottom of the last 0-block, then M in order of X sums."""
    plan, L, P = b.plan, b.ledger, b.partition
    g = plan.g
    for e, x in zip(sorted(plan.E1), P.O41):
        L.put(e, x)
    mate = plan.mate()
    if plan.Y0:
        (yp,) = plan.Y0
        if yp in mate:
            xp = g.other(mate[yp], yp)
            if L.sum_at(xp) == L.sum_at(yp):
                b.report.mate_swap = split_mate(plan, L, xp, yp)
    xs = sorted(plan.X, key=lambda x: (L.sum_at(x), x))
    for x, lab in zip(xs, P.O42):
        L.put(mate[x], lab)
    b.order_x = xs


def separate_exceptional_y(b: Build) -> None:
    """Permute M labels if the one Y vertex with a nonzero residue hits an X sum."""
    plan, L = b.plan, b.ledger
    if not plan.Y0:
        return
    g = plan.g
    (yp,) = plan.Y0
    mate = plan.mate()
    xs = b.order_x
    sigma = [L.sum_at(x) for x in xs]
    f = [L.lab[mate[x]] for x in xs]
    lam = xs.index(g.other(mate[yp], yp)) if yp in mate else None
    perm, case = separating_permutation(sigma, f, lam, L.sum_at(yp))
    b.report.switch = case
    for i, x in enumerate(xs):
        L.lab[mate[x]] = f[perm[i]]


def assemble(plan: DecompositionPlan) -> tuple[Labeling, DecompositionPlan, LabelPartition, AssemblyReport]:
    """Run every labeling stage on ``plan``; returns the labeling, the plan
    (with its exceptional Y vertex filled in), the label partition and a report."""
    b = Build.start(plan)
    label_cover_edges(b)
    label_residue_graph(b)
    level_y_sums(b)
    label_matching(b)
    separate_exceptional_y(b)
    if 0 in b.labels:
        raise ConstructionError("some edge left unlabelled")
    return Labeling(plan.g, tuple(b.labels)), b.plan, b.partition, b.report


def split_mate(plan, L, xp, yp) -> str:
    """Swap two same-residue labels so ``x'`` and its mate ``y'`` get
    different partial sums; every other Y sum and every residue is kept."""
    g = plan.g
    if xp in plan.X_core:
        for e in sorted(g.incidence[xp]):
            if e not in plan.E4 or e in plan.E40:
                continue
            ypp = g.other(e, xp)
            mu = L.lab[e] % 3
            for f in sorted(g.incidence[ypp]):
                if f != e and f in plan.E4 and L.lab[f] % 3 == mu:
                    L.swap(e, f)
                    if L.sum_at(xp) != L.sum_at(yp):
                        return f"swap at {ypp}"
                    L.swap(e, f)
    else:
        for e in sorted(g.incidence[xp]):
            if e not in plan.F2 and e not in plan.F3:
                continue
            xpp = g.other(e, xp)
            mu = L.lab[e] % 3
            for f in sorted(g.incidence[yp]):
                if f in plan.E4 and L.lab[f] % 3 == mu and g.other(f, yp) not in (xp, xpp):
                    L.swap(e, f)
                    if L.sum_at(xp) != L.sum_at(yp):
                        return f"swap with {g.other(f, yp)}"
                    L.swap(e, f)
    raise ConstructionError(f"could not separate {xp} from its mate {yp}")
