import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from antimagic import kernels
from strategies import bipartite_graphs


@given(bipartite_graphs(max_side=8), st.integers(0, 2**32 - 1))
def test_compiled_and_fallback_agree(g, seed):
    rng = np.random.default_rng(seed)
    eu, ev = g.endpoint_arrays()
    perms = np.array([rng.permutation(g.m) + 1 for _ in range(5)], dtype=np.int64)
    a = kernels._vertex_sums_nb(g.n, eu, ev, perms[0])
    b = kernels._vertex_sums_py(g.n, eu, ev, perms[0])
    assert np.array_equal(a, b)
    assert tuple(int(x) for x in kernels._first_collision_nb(a)) == kernels._first_collision_py(b)
    assert np.array_equal(kernels._batch_distinct_nb(g.n, eu, ev, perms), kernels._batch_distinct_py(g.n, eu, ev, perms))


def test_vertex_sums_exact():
    s = kernels.vertex_sums(3, [0, 0], [1, 2], [1, 2])
    assert s.tolist() == [3, 1, 2]
    assert kernels.first_collision([4, 1, 4]) == (0, 2)
    assert kernels.first_collision([1, 2, 3]) == (-1, -1)


def test_search_finds_or_refutes():
    # K2 has no antimagic labeling, a path of two edges does
    assert kernels.search_antimagic(2, [0], [1], [0]).size == 0
    lab = kernels.search_antimagic(3, [0, 0], [1, 2], [0, 1])
    assert sorted(lab.tolist()) == [1, 2]


def test_env_flag_selects_fallback():
    code = "from antimagic import kernels; print(kernels.use_numba())"
    env = dict(os.environ, ANTIMAGIC_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_fallback_pipeline_matches_compiled():
    code = (
        "from antimagic import complete_bipartite, label_graph;"
        "print(label_graph(complete_bipartite(15, 16), seed=3).labeling.labels)"
    )
    outs = []
    for flag in ("", "1"):
        env = dict(os.environ, ANTIMAGIC_DISABLE_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert outs[0] == outs[1]
