import json
import subprocess
import sys

import pytest

from antimagic.cli import main
from antimagic.generators import complete_bipartite, random_min_degree
from antimagic.graph import BipartiteGraph, write_edge_list


@pytest.fixture
def k15(tmp_path):
    p = tmp_path / "k15_15.bip"
    write_edge_list(complete_bipartite(15, 15), p)
    return p


def test_label_writes_labeling_and_verdict(k15, tmp_path, capsys):
    out = tmp_path / "k.lab"
    assert main(["label", str(k15), "--out", str(out)]) == 0
    assert "antimagic: true" in capsys.readouterr().out
    assert len(out.read_text().splitlines()) == 225
    assert main(["verify", str(k15), str(out)]) == 0
    assert capsys.readouterr().out.startswith("antimagic: true")


def test_label_json_and_plan_dump(k15, tmp_path, capsys):
    out, plan = tmp_path / "k.json", tmp_path / "plan.json"
    assert main(["label", str(k15), "--format", "json", "--out", str(out), "--dump-plan", str(plan)]) == 0
    doc = json.loads(out.read_text())
    assert doc["verdict"]["antimagic"] and sorted(doc["labels"]) == list(range(1, 226))
    dumped = json.loads(plan.read_text())
    assert "partition" in dumped and "counts" in dumped


def test_label_rejects_low_degree(tmp_path, capsys):
    p = tmp_path / "sparse.bip"
    write_edge_list(BipartiteGraph(3, 3, [(i, 3 + j) for i in range(3) for j in range(3)]), p)
    assert main(["label", str(p)]) == 2
    assert "minimum degree 3 < 15" in capsys.readouterr().err


def test_label_malformed_file(tmp_path, capsys):
    p = tmp_path / "bad.bip"
    p.write_text("bip 2 2 1\n0 x\n")
    assert main(["label", str(p)]) == 2
    assert "bad.bip:2:3" in capsys.readouterr().err


def test_verify_duplicate_label(k15, tmp_path, capsys):
    lab = tmp_path / "bad_labels.txt"
    g = complete_bipartite(15, 15)
    lab.write_text("".join(f"{u} {v} {max(1, i)}\n" for i, (u, v) in enumerate(g.edges)))
    assert main(["verify", str(k15), str(lab)]) == 2
    assert "not a bijection" in capsys.readouterr().err


def test_verify_reports_collisions(tmp_path, capsys):
    g = BipartiteGraph(1, 1, [(0, 1)])
    gp, lp = tmp_path / "k2.bip", tmp_path / "k2.lab"
    write_edge_list(g, gp)
    lp.write_text("0 1 1\n")
    assert main(["verify", str(gp), str(lp)]) == 1
    assert "vertices 0 and 1 share sum 1" in capsys.readouterr().out
    assert main(["verify", str(gp), str(lp), "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["antimagic"] is False


def test_gen_and_oracle(tmp_path, capsys):
    out = tmp_path / "c.bip"
    assert main(["gen", "complete", "2", "2", "--out", str(out)]) == 0
    assert out.read_text().startswith("bip 2 2 4")
    assert main(["oracle", str(out)]) == 0
    assert capsys.readouterr().out.startswith("antimagic: true")
    write_edge_list(BipartiteGraph(1, 1, [(0, 1)]), out)
    assert main(["oracle", str(out)]) == 1
    write_edge_list(complete_bipartite(3, 4), out)
    assert main(["oracle", str(out)]) == 2
    assert "exceed the oracle cap" in capsys.readouterr().err


def test_gen_kinds(capsys):
    assert main(["gen", "tiny", "2"]) == 0
    assert capsys.readouterr().out.count("bip ") == 2
    assert main(["gen", "random", "20", "25", "--seed", "1"]) == 0
    assert capsys.readouterr().out.startswith("bip 20 25")
    assert main(["gen", "split", "20", "20"]) == 0
    assert main(["gen", "random", "10", "10"]) == 2


def test_demo(capsys):
    assert main(["demo"]) == 0
    out = capsys.readouterr().out
    assert "antimagic: true" in out and "X sums with residue 0: 0" in out


def test_directory_batch_with_jobs(tmp_path):
    for i in range(3):
        write_edge_list(random_min_degree(16 + i, 20, 15, 0.1, seed=i), tmp_path / f"g{i}.bip")
    write_edge_list(BipartiteGraph(1, 1, [(0, 1)]), tmp_path / "tiny.bip")
    out = tmp_path / "out"
    # run as a real process so the worker pool can spawn
    r = subprocess.run([sys.executable, "-m", "antimagic.cli", "label", str(tmp_path), "--out", str(out), "--jobs", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 2
    assert r.stdout.count("antimagic: true") == 3 and "minimum degree 1 < 15" in r.stdout
    assert sorted(p.name for p in out.iterdir()) == ["g0.lab", "g1.lab", "g2.lab"]


def test_seed_env(k15, tmp_path, monkeypatch):
    outs = []
    for seed in ("4", "4"):
        monkeypatch.setenv("ANTIMAGIC_SEED", seed)
        o = tmp_path / f"o{len(outs)}.lab"
        assert main(["label", str(k15), "--out", str(o)]) == 0
        outs.append(o.read_text())
    assert outs[0] == outs[1]
