from __future__ import annotations

import json
import subprocess
import sys

import pytest

from clique_cover.cache import CACHE_ENV, OutcomeCache, cached_solve, instance_digest
from clique_cover.cli import main
from clique_cover.fixtures import decomposition
from clique_cover.solver import CoverInstance, SolverConfig, Status


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_solve_single_quadruple(capsys):
    code, data = run_json(capsys, "solve", "--order", "4", "--block-sizes", "4")
    assert code == 0 and data["status"] == "Feasible" and data["blocks"] == [[1, 2, 3, 4]]
    assert "timing" in data and "ms" not in {k for k in data if k != "timing"}


def test_solve_infeasible_and_timeout_codes(capsys):
    code, data = run_json(capsys, "solve", "--order", "6")
    assert code == 1 and data["status"] == "Infeasible"
    code, data = run_json(capsys, "solve", "--order", "18", "--max-blocks", "30", "--node-limit", "20")
    assert code == 2 and data["status"] == "TimedOut"


def test_solve_with_removed_edges_and_excess(tmp_path, capsys):
    removed = tmp_path / "removed.json"
    removed.write_text(json.dumps([[1, 2], [1, 3], [2, 3]]))
    code, data = run_json(capsys, "solve", "--order", "7", "--block-sizes", "3", "--remove", str(removed))
    assert code == 0 and len(data["blocks"]) == 6
    excess = tmp_path / "excess.json"
    excess.write_text(json.dumps([[[1, 2], 2], [[3, 4], 2]]))
    code, data = run_json(capsys, "solve", "--order", "5", "--excess", str(excess), "--minimize")
    assert code == 0 and data["minimal"] and len(data["blocks"]) == 3


def test_output_is_deterministic_apart_from_timing(capsys):
    outs = []
    for _ in range(2):
        _, data = run_json(capsys, "solve", "--order", "13", "--minimize")
        data.pop("timing")
        outs.append(data)
    assert outs[0] == outs[1]


def test_verify(tmp_path, capsys):
    code, data = run_json(capsys, "verify", "--fixture", "18")
    assert code == 0 and data["exact"]
    broken = tmp_path / "blocks.json"
    broken.write_text(json.dumps([list(b) for b in decomposition(18)[:-1]]))
    code, data = run_json(capsys, "verify", "--solution", str(broken), "--order", "18")
    assert code == 1 and not data["exact"] and data["uncovered"]


def test_usage_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[[1, 2], [3")
    code, data = run_json(capsys, "solve", "--order", "7", "--remove", str(bad))
    assert code == 3 and "bad.json:1:" in data["error"]
    code, data = run_json(capsys, "solve", "--order", "2")
    assert code == 3 and "error" in data
    code, data = run_json(capsys, "enumerate", "--order", "7", "--regular", "3")
    assert code == 3
    code, data = run_json(capsys, "lemma", "k20-alpha1")
    assert code == 3 and "unknown lemma" in data["error"]
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == 3


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--order", "9", "--regular", "2")
    assert code == 0 and len(out.split()) == 4
    code, out = run(capsys, "enumerate", "--order", "7", "--size", "6", "--even", "--format", "json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 3 and all(len(x["edges"]) == 6 for x in lines)


def test_formulas_and_graphic(capsys):
    code, data = run_json(capsys, "formulas", "--v", "19")
    assert data == {"v": 19, "xi": 0, "cover_number": 35, "residue": 0, "lower_bound": 32}
    code, data = run_json(capsys, "formulas", "--v", "8")
    assert "lower_bound" not in data and data["cover_number"] == 7
    code, data = run_json(capsys, "graphic", "--sequence", "6,6,6,6,6,2,2,2")
    assert code == 0 and data == {"graphic": False, "failing_k": 4}


def test_lemma_commands(capsys):
    code, data = run_json(capsys, "lemma", "--list")
    assert "k19-alpha11" in data["lemmas"]
    code, data = run_json(capsys, "lemma", "k18-alpha7")
    assert code == 0 and data["verdict"] == "all-infeasible"


def test_sweep_checkpoint_via_cli(tmp_path, capsys):
    ckpt = tmp_path / "s.jsonl"
    code, data = run_json(capsys, "sweep", "k19-alpha11", "--checkpoint", str(ckpt), "--stop-after", "2")
    assert code == 2 and data["verdict"] == "incomplete" and data["checkpoint"] == 2
    assert len(ckpt.read_text().splitlines()) == 2
    code, data = run_json(capsys, "sweep", "k19-alpha11", "--resume", str(tmp_path / "missing.jsonl"))
    assert code == 3


def test_cache_and_manifest(tmp_path, capsys):
    root = tmp_path / "cache"
    _, first = run_json(capsys, "--cache", str(root), "solve", "--order", "9", "--block-sizes", "3")
    _, second = run_json(capsys, "--cache", str(root), "solve", "--order", "9", "--block-sizes", "3")
    first.pop("timing"), second.pop("timing")
    assert first == second
    assert len(list((root / "outcomes").glob("*.json"))) == 1
    manifests = [json.loads(x) for x in (root / "manifests.jsonl").read_text().splitlines()]
    assert len(manifests) == 2
    assert manifests[0]["outcome_digest"] == manifests[1]["outcome_digest"]
    assert manifests[0]["command"] == "solve" and manifests[0]["tool_version"]


def test_env_cache_overrides_flag(tmp_path, monkeypatch, capsys):
    env_root, flag_root = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv(CACHE_ENV, str(env_root))
    run_json(capsys, "--cache", str(flag_root), "solve", "--order", "7", "--block-sizes", "3")
    assert (env_root / "manifests.jsonl").exists() and not flag_root.exists()


def test_timeouts_are_not_cached(tmp_path):
    cache = OutcomeCache(tmp_path)
    inst = CoverInstance(18, frozenset({3, 4}))
    out = cached_solve(inst, SolverConfig(node_limit=10), cache, max_blocks=30)
    assert out.status is Status.TIMED_OUT
    assert not list((tmp_path / "outcomes").glob("*.json"))
    small = CoverInstance(7, frozenset({3}))
    cached_solve(small, None, cache)
    hit = cached_solve(small, None, cache)
    assert cache.hits == 1 and hit.status is Status.FEASIBLE
    assert instance_digest(small, "exact") != instance_digest(small, "minimum")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clique_cover", "formulas", "--v", "18"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cover_number"] == 33
