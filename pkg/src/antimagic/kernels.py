"""Numeric hot loops with a compiled path and a pure numpy/Python path.

The compiled path is used when numba imports and ``ANTIMAGIC_DISABLE_NUMBA``
is unset. Both paths return identical results; tests check this.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

__all__ = [
    "use_numba",
    "vertex_sums",
    "first_collision",
    "batch_distinct",
    "search_antimagic",
]


def use_numba() -> bool:
    return _accel.HAVE_NUMBA and not _accel.DISABLED


# ---------------------------------------------------------------- compiled


@njit(cache=True)
def _vertex_sums_nb(n, eu, ev, labels):
    out = np.zeros(n, dtype=np.int64)
    for i in range(eu.shape[0]):
        out[eu[i]] += labels[i]
        out[ev[i]] += labels[i]
    return out


@njit(cache=True)
def _first_collision_nb(sums):
    n = sums.shape[0]
    if n < 2:
        return -1, -1
    order = np.argsort(sums, kind="mergesort")
    for k in range(n - 1):
        a = order[k]
        b = order[k + 1]
        if sums[a] == sums[b]:
            if a < b:
                return a, b
            return b, a
    return -1, -1


@njit(cache=True)
def _batch_distinct_nb(n, eu, ev, perms):
    p = perms.shape[0]
    m = eu.shape[0]
    out = np.zeros(p, dtype=np.bool_)
    sums = np.zeros(n, dtype=np.int64)
    for r in range(p):
        sums[:] = 0
        for i in range(m):
            sums[eu[i]] += perms[r, i]
            sums[ev[i]] += perms[r, i]
        s = np.sort(sums)
        ok = True
        for k in range(n - 1):
            if s[k] == s[k + 1]:
                ok = False
                break
        out[r] = ok
    return out


@njit(cache=True)
def _search_nb(n, eu, ev, order, done_ptr, done_list):
    # order[k] is the edge labelled at depth k; vertices done_list[done_ptr[k]:done_ptr[k+1]]
    # have all their edges labelled once depth k is filled.
    m = order.shape[0]
    labels = np.zeros(m, dtype=np.int64)
    used = np.zeros(m + 1, dtype=np.bool_)
    sums = np.zeros(n, dtype=np.int64)
    cur = np.zeros(m, dtype=np.int64)
    nxt = np.ones(m, dtype=np.int64)
    k = 0
    while k >= 0:
        e = order[k]
        if cur[k] != 0:
            c = cur[k]
            used[c] = False
            sums[eu[e]] -= c
            sums[ev[e]] -= c
            cur[k] = 0
        placed = False
        c = nxt[k]
        while c <= m:
            if not used[c]:
                sums[eu[e]] += c
                sums[ev[e]] += c
                ok = True
                for a in range(done_ptr[k], done_ptr[k + 1]):
                    v = done_list[a]
                    for b in range(a):
                        if sums[done_list[b]] == sums[v]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    used[c] = True
                    cur[k] = c
                    nxt[k] = c + 1
                    placed = True
                    break
                sums[eu[e]] -= c
                sums[ev[e]] -= c
            c += 1
        if not placed:
            nxt[k] = 1
            k -= 1
            continue
        if k == m - 1:
            for i in range(m):
                labels[order[i]] = cur[i]
            return labels
        k += 1
    return labels[:0]


# ---------------------------------------------------------------- fallback


def _vertex_sums_py(n, eu, ev, labels):
    lab = np.asarray(labels, dtype=np.int64)
    return np.bincount(eu, weights=lab, minlength=n).astype(np.int64) + np.bincount(
        ev, weights=lab, minlength=n
    ).astype(np.int64)


def _first_collision_py(sums):
    if sums.shape[0] < 2:
        return -1, -1
    order = np.argsort(sums, kind="mergesort")
    s = sums[order]
    hits = np.flatnonzero(s[1:] == s[:-1])
    if hits.size == 0:
        return -1, -1
    a, b = int(order[hits[0]]), int(order[hits[0] + 1])
    return (a, b) if a < b else (b, a)


def _batch_distinct_py(n, eu, ev, perms):
    m = eu.shape[0]
    inc = np.zeros((n, m), dtype=np.int64)
    inc[eu, np.arange(m)] = 1
    inc[ev, np.arange(m)] = 1
    sums = np.sort(perms @ inc.T, axis=1)
    if n < 2:
        return np.ones(perms.shape[0], dtype=bool)
    return np.all(sums[:, 1:] != sums[:, :-1], axis=1)


def _search_py(n, eu, ev, order, done_ptr, done_list):
    m = len(order)
    eu = [int(x) for x in eu]
    ev = [int(x) for x in ev]
    order = [int(x) for x in order]
    done_ptr = [int(x) for x in done_ptr]
    done_list = [int(x) for x in done_list]
    sums = [0] * n
    used = [False] * (m + 1)
    cur = [0] * m

    def rec(k):
        e = order[k]
        u, v = eu[e], ev[e]
        for c in range(1, m + 1):
            if used[c]:
                continue
            sums[u] += c
            sums[v] += c
            ok = True
            for a in range(done_ptr[k], done_ptr[k + 1]):
                w = done_list[a]
                sw = sums[w]
                if any(sums[done_list[b]] == sw for b in range(a)):
                    ok = False
                    break
            if ok:
                used[c] = True
                cur[k] = c
                if k == m - 1 or rec(k + 1):
                    return True
                used[c] = False
            sums[u] -= c
            sums[v] -= c
        return False

    if m == 0 or not rec(0):
        return np.zeros(0, dtype=np.int64)
    labels = np.zeros(m, dtype=np.int64)
    for i, e in enumerate(order):
        labels[e] = cur[i]
    return labels


# ---------------------------------------------------------------- dispatch


def _i64(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def vertex_sums(n: int, eu, ev, labels) -> np.ndarray:
    """Per-vertex sum of incident labels, exact int64."""
    eu, ev, labels = _i64(eu), _i64(ev), _i64(labels)
    if use_numba():
        return _vertex_sums_nb(n, eu, ev, labels)
    return _vertex_sums_py(n, eu, ev, labels)


def first_collision(sums) -> tuple[int, int]:
    """Lowest-sum pair of vertices with equal sums, or ``(-1, -1)``."""
    sums = _i64(sums)
    if use_numba():
        a, b = _first_collision_nb(sums)
        return int(a), int(b)
    return _first_collision_py(sums)


def batch_distinct(n: int, eu, ev, perms) -> np.ndarray:
    """For each row of ``perms`` (a labeling), whether all vertex sums differ."""
    eu, ev = _i64(eu), _i64(ev)
    perms = np.ascontiguousarray(np.atleast_2d(np.asarray(perms, dtype=np.int64)))
    if use_numba():
        return _batch_distinct_nb(n, eu, ev, perms)
    return _batch_distinct_py(n, eu, ev, perms)


def search_antimagic(n: int, eu, ev, order) -> np.ndarray:
    """Depth-first search for a labeling with distinct vertex sums.

    ``order`` is the sequence in which edges receive labels. Returns the
    labels indexed by edge id, or an empty array if none exists.
    """
    eu, ev, order = _i64(eu), _i64(ev), _i64(order)
    m = order.shape[0]
    depth_of = np.empty(m, dtype=np.int64)
    depth_of[order] = np.arange(m)
    done_at = np.full(n, -1, dtype=np.int64)
    for e in range(m):
        d = depth_of[e]
        for v in (eu[e], ev[e]):
            if d > done_at[v]:
                done_at[v] = d
    touched = np.flatnonzero(done_at >= 0)
    done_list = touched[np.argsort(done_at[touched], kind="mergesort")].astype(np.int64)
    done_ptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(done_at[touched], minlength=m), out=done_ptr[1:])
    if n - touched.size > 1:
        # two or more isolated vertices always share sum 0
        return np.zeros(0, dtype=np.int64)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    if use_numba():
        return _search_nb(n, eu, ev, order, done_ptr, done_list)
    return _search_py(n, eu, ev, order, done_ptr, done_list)
