from collections import Counter
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from antimagic.assembler import (
    _Ledger, assemble, check_partition, o_sets, partition_labels, separating_permutation, split_mate, star_labels,
)
from antimagic.decomposer import decompose
from antimagic.errors import ConstructionError
from antimagic.generators import complete_bipartite, random_min_degree, split_cover
from antimagic.mod3 import ResiduePool
from antimagic.verifier import structural_report, verify


def _counts(n_Y_even, n_Y=10, l0=40, m20=5):
    return SimpleNamespace(n_Y_even=n_Y_even, n_Y=n_Y, l0=l0, m20=m20)


@pytest.mark.parametrize("k,expected", [(0, []), (3, [3, 6, 9]), (4, [3, 6, 9, 18]), (6, [3, 6, 9, 12, 15, 27])])
def test_o_sets_even_vertex_block(k, expected):
    c = _counts(k)
    os_ = o_sets(c)
    assert os_["O2"] == expected
    blocks = [os_[n] for n in ("O1", "O2", "O3", "O4")]
    flat = [x for b in blocks for x in b]
    assert len(flat) == len(set(flat)) == c.l0
    assert set(flat) == {3 * i for i in range(1, c.l0 + 1)}
    assert len(os_["O4"]) == c.n_Y and len(os_["O1"]) == c.m20


def test_partition_matches_counts_on_real_plans():
    for g in (complete_bipartite(15, 20), random_min_degree(25, 30, 15, 0.1, seed=3), split_cover(seed=4)):
        lab, plan, part, _ = assemble(decompose(g, np.random.default_rng(0)))
        assert check_partition(plan.counts, part) == []
        assert part.alpha == plan.counts.n_Y_even + plan.counts.l0 - plan.counts.m20 - part.theta + 1


def test_partition_with_negative_alpha_is_consistent():
    # alpha < 0 never shows up on generated graphs; check the block layout directly
    c = SimpleNamespace(n_Y=4, n_Y_odd=2, n_Y_even=2, n_X=3, l0=12, l1=12, l2=12, m20=0, eps1=0, m=36)
    P = partition_labels(c, 10, 10)
    assert P.alpha == 2 + 12 - 10 + 1 - 0 == 5
    P = partition_labels(SimpleNamespace(**{**c.__dict__, "m20": 6}), 10, 11)
    assert P.alpha == -1
    assert len(P.J43) == 2 and len(P.J40) == 1
    blocks = [P.J40, P.J41, P.J42, P.J43, P.J44]
    assert sorted(x for b in blocks for x in b) == list(P.J4)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8), st.integers(60, 120))
def test_star_labels_leave_nonzero_residues(sizes, m):
    pool = ResiduePool(range(1, m + 1, 3), range(2, m + 1, 3))
    if sum(sizes) > m // 3:
        return
    before = {1: list(pool.ones), 2: list(pool.twos)}
    stars = star_labels(sizes, pool)
    used = [x for s in stars for x in s]
    assert len(used) == len(set(used)) == sum(sizes)
    for s, labs in zip(sizes, stars):
        assert len(labs) == s and sum(labs) % 3 != 0
    for mu in (1, 2):
        taken = [x for x in used if x % 3 == mu]
        rest = pool.ones if mu == 1 else pool.twos
        assert sorted(taken + rest) == before[mu]
        assert not rest or not taken or min(taken) > max(rest)


def test_star_labels_exhausted_pool():
    with pytest.raises(ConstructionError):
        star_labels([6], ResiduePool([1, 4], [2]))


def test_separating_permutation_worked_example():
    sigma = [100, 103, 106, 110, 200]
    f = [27, 30, 33, 36, 39]
    perm, case = separating_permutation(sigma, f, None, 103)
    assert case == "shift"
    assert [f[p] for p in perm] == [27, 33, 36, 30, 39]


def test_separating_permutation_no_collision_is_identity():
    assert separating_permutation([1, 2, 4], [3, 6, 9], None, 5) == ([0, 1, 2], "none")


def test_separating_permutation_needs_both_residues():
    with pytest.raises(ConstructionError):
        separating_permutation([4, 7, 10], [3, 6, 9], None, 7)


@st.composite
def collisions(draw):
    """X sums built from sorted partial sums plus consecutive 0-labels, with
    ``y'`` hitting one of them."""
    n = draw(st.integers(2, 9))
    partial = sorted(draw(st.lists(st.integers(10, 80).filter(lambda v: v % 3), min_size=n, max_size=n)))
    base = draw(st.integers(1, 20))
    f = [3 * (base + i) for i in range(n)]
    sigma = [p + x for p, x in zip(partial, f)]
    if len(set(sigma)) < n or len({s % 3 for s in sigma}) < 2:
        return None
    b = draw(st.integers(0, n - 1))
    # y' never collides with its own mate: that pair is split before M is labelled
    lam = draw(st.one_of(st.none(), st.integers(0, n - 1).filter(lambda i: i != b)))
    return sigma, f, lam, sigma[b]


@given(collisions())
def test_separating_permutation_separates(inp):
    if inp is None:
        return
    sigma, f, lam, sy = inp
    perm, case = separating_permutation(sigma, f, lam, sy)
    assert sorted(perm) == list(range(len(sigma)))
    new = [s - f[i] + f[perm[i]] for i, s in enumerate(sigma)]
    ny = sy if lam is None else sy - f[lam] + f[perm[lam]]
    assert len(set(new) | {ny}) == len(new) + 1
    assert [v % 3 for v in new] == [s % 3 for s in sigma]


def test_split_mate_keeps_y_sums_and_residues():
    g = random_min_degree(20, 26, 15, 0.1, seed=5)
    lab, plan, _, _ = assemble(decompose(g, np.random.default_rng(0)))
    mate = plan.mate()
    for xp in sorted(plan.X_core)[:5]:
        yp = g.other(mate[xp], xp)
        L = _Ledger(g)
        L.lab = list(lab.labels)
        before = [L.sum_at(v) for v in range(g.n)]
        note = split_mate(plan, L, xp, yp)
        after = [L.sum_at(v) for v in range(g.n)]
        assert note.startswith("swap")
        assert sorted(L.lab) == list(range(1, g.m + 1))
        assert after[xp] != after[yp]
        assert all(after[y] == before[y] for y in plan.Y)
        assert [a % 3 for a in after] == [b % 3 for b in before]
        assert sum(a != b for a, b in zip(after, before)) == 2


@pytest.mark.parametrize("seed", range(4))
def test_split_cover_end_to_end(seed):
    g = split_cover(seed=seed)
    lab, plan, part, rep = assemble(decompose(g, np.random.default_rng(seed)))
    assert verify(g, lab.labels).antimagic
    sr = structural_report(g, lab.labels, plan, part)
    assert sr["ok"], sr["violations"]
    res = Counter(s % 3 for s in lab.vertex_sums()[list(plan.X)])
    assert res[0] == 0


@pytest.mark.parametrize("sigma,f,lam,sy,case", [
    ([49, 73, 80, 92, 97, 106, 110, 115], [36, 39, 42, 45, 48, 51, 54, 57], 1, 92, "shift"),
    ([28, 37, 56, 61, 95], [6, 9, 12, 15, 18], 1, 28, "shift past mate"),
    ([104, 109, 115, 137, 140], [51, 54, 57, 60, 63], 3, 115, "shift down"),
    ([16, 40, 65], [3, 6, 9], 2, 16, "insert"),
    ([70, 95, 115, 122, 127], [48, 51, 54, 57, 60], None, 127, "shift (mirrored)"),
    ([64, 71, 88, 121], [48, 51, 54, 57], 2, 121, "shift past mate (mirrored)"),
    ([53, 56, 64, 82, 98, 103, 125], [42, 45, 48, 51, 54, 57, 60], 1, 64, "shift down (mirrored)"),
    ([17, 38, 46, 83, 86, 92], [6, 9, 12, 15, 18, 21], 2, 83, "insert (mirrored)"),
])
def test_separating_permutation_cases(sigma, f, lam, sy, case):
    perm, got = separating_permutation(sigma, f, lam, sy)
    assert got == case
    new = [s - f[i] + f[perm[i]] for i, s in enumerate(sigma)]
    ny = sy if lam is None else sy - f[lam] + f[perm[lam]]
    assert ny not in new and len(set(new)) == len(new)
