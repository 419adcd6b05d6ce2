"""Exhaustive search for antimagic labelings of tiny graphs."""
from __future__ import annotations

from .errors import ContractError
from .kernels import search_antimagic

__all__ = ["MAX_EDGES", "find_antimagic_labeling", "brute_force_is_antimagic"]

MAX_EDGES = 9


def _order(g) -> list[int]:
    # heavy edges first: their endpoints fill up sooner, so collisions prune early
    deg = g.degrees()
    return sorted(range(g.m), key=lambda e: (-(deg[g.edges[e][0]] + deg[g.edges[e][1]]), e))


def find_antimagic_labeling(g, cap: int = MAX_EDGES) -> list[int] | None:
    """A witness labeling indexed by edge id, or None if there is none."""
    if g.m > cap:
        raise ContractError(f"{g.m} edges exceed the oracle cap of {cap}")
    eu, ev = g.endpoint_arrays()
    found = search_antimagic(g.n, eu, ev, _order(g))
    if found.size == 0 and g.m > 0:
        return None
    if g.m == 0:
        return [] if g.n <= 1 else None
    return [int(x) for x in found]


def brute_force_is_antimagic(g, cap: int = MAX_EDGES) -> bool:
    return find_antimagic_labeling(g, cap) is not None
