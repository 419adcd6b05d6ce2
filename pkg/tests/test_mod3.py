import pytest
from hypothesis import given
from hypothesis import strategies as st

from antimagic.errors import ConstructionError, ContractError
from antimagic.graph import BipartiteGraph
from antimagic.mod3 import ResiduePool, assign_residues, ensure_both_residues, materialize, residue_sums


def test_path_example():
    # x0 - y2 - x1 - y3 walked from the Y end alternates residues
    g = BipartiteGraph(2, 2, [(0, 2), (1, 2), (1, 3)])
    plan = assign_residues(g, range(3), {0, 1}, 2, 1)
    assert plan.l1 == 2 and plan.l2 == 1
    assert all(plan.residue_sum(x) != 0 for x in (0, 1))
    assert all(abs(plan.imbalance(y)) <= 1 for y in (2, 3))


def test_pool_size_mismatch():
    g = BipartiteGraph(1, 1, [(0, 1)])
    with pytest.raises(ContractError):
        assign_residues(g, [0], {0}, 2, 0)
    with pytest.raises(ContractError):
        assign_residues(g, [0], {0}, 1, 1)


def test_pool_operations():
    pool = ResiduePool([1, 4, 7], [2, 5])
    assert pool.greatest_class() == 1
    assert pool.pop_greatest(1) == 7 and pool.pop_least(2) == 2
    pool.remove(5)
    assert pool.size(2) == 0 and pool.greatest_class() == 1
    with pytest.raises(ConstructionError):
        pool.pop_greatest(2)
    with pytest.raises(ContractError):
        ResiduePool([2], [])


def _complete_plus_pendant(na, nb):
    """K(na, nb) with one extra pendant Y vertex at X vertex 0."""
    edges = [(i, na + j) for i in range(na) for j in range(nb)] + [(0, na + nb)]
    return BipartiteGraph(na, nb + 1, edges)


@given(st.integers(2, 5).map(lambda i: 2 * i), st.integers(2, 4), st.sampled_from([-2, -1, 0, 1, 2]))
def test_materialize_respects_residues_and_reserved(nb, na, d):
    g = _complete_plus_pendant(na, nb)
    m = g.m
    if (m + d) % 2:
        d += 1 if d < 2 else -1
    l1, l2 = (m + d) // 2, (m - d) // 2
    plan = assign_residues(g, range(m), range(na), l1, l2)
    pool = ResiduePool([3 * i + 1 for i in range(l1)], [3 * i + 2 for i in range(l2)])
    labs = materialize(plan, pool, reserved=[0])
    assert sorted(labs.values()) == sorted(pool.ones + pool.twos)
    assert all(labs[e] % 3 == plan.residue_of_edge[e] for e in labs)
    top = max(pool.ones) if plan.residue_of_edge[0] == 1 else max(pool.twos)
    assert labs[0] == top
    sums = residue_sums(plan)
    assert all(sums[x] != 0 for x in range(na))


def test_ensure_both_residues_flips_three_x_sums():
    na, nb = 4, 6
    g = _complete_plus_pendant(na, nb)
    for l1 in (12, 13):
        plan = assign_residues(g, range(g.m), range(na), l1, g.m - l1)
        group = list(range(na)) + [na + nb]
        out = ensure_both_residues(g, plan, pendants=[na + nb])
        assert {out.residue_sum(v) for v in group} == {1, 2}
        assert all(out.residue_sum(x) != 0 for x in range(na))
    assert sorted(out.residue_of_edge.values()) == sorted(plan.residue_of_edge.values())


@pytest.mark.parametrize("d", [-2, 2])
def test_double_exchange_when_all_x_share_a_residue(d):
    edges = [(0, 5), (0, 6), (0, 7), (0, 8), (0, 9), (1, 5), (1, 6), (2, 7), (2, 8), (2, 9),
             (3, 5), (3, 6), (3, 7), (3, 8), (3, 9), (4, 5), (4, 6), (4, 7), (4, 8), (4, 9)]
    g = BipartiteGraph(5, 5, edges)
    plan = assign_residues(g, range(g.m), range(5), (g.m + d) // 2, (g.m - d) // 2)
    assert len({plan.residue_sum(x) for x in range(5)}) == 1
    out = ensure_both_residues(g, plan, pendants=[])
    after = [out.residue_sum(x) for x in range(5)]
    assert set(after) == {1, 2}
    assert sum(a != plan.residue_sum(x) for x, a in enumerate(after)) == 3
    assert all(abs(out.imbalance(y)) <= 2 for y in range(5, 10))
    assert [plan.imbalance(y) for y in range(5, 10)] == [out.imbalance(y) for y in range(5, 10)]
