import pytest

from antimagic.errors import ContractError
from antimagic.generators import complete_bipartite, tiny_enumerate
from antimagic.graph import BipartiteGraph
from antimagic.oracle import brute_force_is_antimagic, find_antimagic_labeling
from antimagic.verifier import verify

P3 = BipartiteGraph(1, 2, [(0, 1), (0, 2)])
K2 = BipartiteGraph(1, 1, [(0, 1)])
C4 = BipartiteGraph(2, 2, [(0, 2), (1, 2), (1, 3), (0, 3)])
K13 = BipartiteGraph(1, 3, [(0, 1), (0, 2), (0, 3)])


def test_known_answers():
    assert not brute_force_is_antimagic(K2)
    for g in (P3, C4, K13):
        assert brute_force_is_antimagic(g)


def test_witness_is_verified():
    for g in tiny_enumerate(7):
        w = find_antimagic_labeling(g)
        if g.m == 1:
            assert w is None
        else:
            assert w is not None and verify(g, w).antimagic


def test_nine_edges_fit_under_the_cap():
    g = complete_bipartite(3, 3)
    assert verify(g, find_antimagic_labeling(g)).antimagic


def test_cap():
    with pytest.raises(ContractError, match="exceed the oracle cap"):
        brute_force_is_antimagic(complete_bipartite(2, 5))
    assert brute_force_is_antimagic(complete_bipartite(2, 5), cap=10)
