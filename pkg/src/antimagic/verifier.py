"""Independent checks of a candidate labeling.

Nothing here relies on the construction: sums are recomputed from the edge
list, so a verdict is only as trustworthy as the graph itself.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

__all__ = ["Verdict", "verify", "vertex_sums", "structural_report"]


@dataclass(frozen=True)
class Verdict:
    is_bijection: bool
    sums_distinct: bool
    antimagic: bool
    collisions: tuple[tuple[int, int, int], ...]
    residue_report: tuple[int, ...]
    problems: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "antimagic": self.antimagic,
            "is_bijection": self.is_bijection,
            "sums_distinct": self.sums_distinct,
            "collisions": [list(c) for c in self.collisions],
            "residue_report": list(self.residue_report),
            "problems": list(self.problems),
        }


def _as_list(g, lab) -> list:
    if hasattr(lab, "labels"):
        lab = lab.labels
    if isinstance(lab, Mapping):
        return [lab.get(e) for e in range(g.m)]
    return list(lab)


def vertex_sums(g, labels: Sequence[int]) -> list[int]:
    sums = [0] * g.n
    for (u, v), x in zip(g.edges, labels):
        sums[u] += x
        sums[v] += x
    return sums


def verify(g, lab) -> Verdict:
    """Bijection onto ``1..m`` plus pairwise distinct vertex sums.

    ``lab`` may be a sequence indexed by edge id, a mapping edge id -> label
    or any object with a ``labels`` attribute.
    """
    labels = _as_list(g, lab)
    problems = []
    if len(labels) != g.m:
        problems.append(f"{len(labels)} labels for {g.m} edges")
    ints = [x for x in labels if isinstance(x, int) and not isinstance(x, bool)]
    if len(ints) != len(labels):
        problems.append("missing or non-integer labels")
    elif sorted(ints) != list(range(1, g.m + 1)):
        seen, dup = set(), set()
        for x in ints:
            (dup if x in seen else seen).add(x)
        if dup:
            problems.append(f"duplicated labels {sorted(dup)[:5]}")
        bad = sorted(x for x in seen if not 1 <= x <= g.m)
        if bad:
            problems.append(f"labels outside [1, {g.m}]: {bad[:5]}")
    bij = not problems
    if not bij:
        return Verdict(False, False, False, (), (), tuple(problems))
    sums = vertex_sums(g, labels)
    groups = defaultdict(list)
    for v, s in enumerate(sums):
        groups[s].append(v)
    coll = tuple((vs[i], vs[i + 1], s) for s, vs in sorted(groups.items()) for i in range(len(vs) - 1))
    distinct = not coll
    return Verdict(bij, distinct, bij and distinct, coll, tuple(s % 3 for s in sums))


def structural_report(g, lab, plan, partition=None) -> dict:
    """Residue goals on both sides and, given the label partition, which
    label block each edge family drew from."""
    if plan is None:
        raise ValueError("structural_report needs the decomposition plan")
    labels = _as_list(g, lab)
    sums = vertex_sums(g, labels)
    x_bad = sorted(v for v in plan.X if sums[v] % 3 == 0)
    y_bad = sorted(v for v in plan.Y if sums[v] % 3 != 0)
    out = {
        "x_zero_residue": len(x_bad),
        "y_nonzero_residue": len(y_bad),
        "x_violations": x_bad,
        "y_violations": y_bad,
        "pool_audit": {},
    }
    if partition is not None:
        P = partition
        families = {
            "O1": (plan.GX - plan.E3, P.O1),
            "O2": (plan.E2, P.O2),
            "O3": (plan.G1 - plan.E4, P.O3),
            "O41": (plan.E1, P.O41),
            "O42": (plan.M, P.O42),
            "J": (plan.E3 | plan.E4, P.J1 + P.J2 + P.J3 + P.J4),
        }
        for name, (edges, block) in families.items():
            out["pool_audit"][name] = sorted(labels[e] for e in edges) == sorted(block)
    out["ok"] = not x_bad and len(y_bad) <= 1 and all(out["pool_audit"].values())
    return out
