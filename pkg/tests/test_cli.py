"""CLI subcommands: artifacts, determinism, and exit codes."""

import csv
import hashlib
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import fcmkit as fk
from fcmkit.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def small_ws(tmp_path_factory):
    """A small processed workspace for fast CLI runs."""
    ws = tmp_path_factory.mktemp("cli") / "ws"
    runner = CliRunner()
    args = ["-w", str(ws), "--seed", "3", "--maps", "8", "--level-sizes", "40,12,5"]
    out = runner.invoke(main, ["run-all"] + args)
    assert out.exit_code == 0, out.output
    return ws


def tree_digest(root: Path) -> dict:
    return {
        str(p.relative_to(root)): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


class TestGenCorpus:
    def test_determinism_across_runs(self, runner, tmp_path):
        for name in ("a", "b"):
            out = runner.invoke(
                main,
                ["gen-corpus", "-w", str(tmp_path / name), "--seed", "4",
                 "--maps", "5", "--level-sizes", "24,9,4"],
            )
            assert out.exit_code == 0, out.output
        assert tree_digest(tmp_path / "a") == tree_digest(tmp_path / "b")


class TestAnalyze:
    def test_standalone_csv_thirteen_rows(self, runner, tmp_path):
        demo = fk.bundled_demo_path()
        import shutil

        local = tmp_path / "demo13.csv"
        shutil.copy(demo, local)
        shutil.copy(demo.with_suffix(".json"), tmp_path / "demo13.json")
        out = runner.invoke(main, ["analyze", str(local), "-o", str(tmp_path / "out")])
        assert out.exit_code == 0, out.output
        csv_path = tmp_path / "out" / "demo-variable.centrality.csv"
        with open(csv_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 1 + 13

    def test_json_mode_parses(self, runner, small_ws):
        out = runner.invoke(main, ["analyze", "social-concept", "-w", str(small_ws), "--json"])
        assert out.exit_code == 0, out.output
        doc = json.loads(out.output)
        assert len(doc["nodes"]) == 5

    def test_unknown_model_exit_code(self, runner, small_ws):
        out = runner.invoke(main, ["analyze", "nope-concept", "-w", str(small_ws)])
        assert out.exit_code == 4


class TestCondense:
    def test_level_counts_on_paper_corpus(self, runner, paper_workspace, paper_store):
        # a stakeholder's condensed map carries exactly the groups with a
        # member present in their own map; the social maps carry all 42/13
        raw = paper_store.get("s01-variable")
        h = paper_store.hierarchy
        expected_kvs = {h.parent_of(v) for v in raw.ids}
        kv = fk.load_fcm(Path(paper_workspace) / "condensed" / "s01-key_variable.csv")
        assert set(kv.ids) == expected_kvs
        concept = fk.load_fcm(Path(paper_workspace) / "condensed" / "s01-concept.csv")
        assert set(concept.ids) == {h.parent_of(k) for k in expected_kvs}
        assert paper_store.social("key_variable").n_nodes == 42
        assert paper_store.social("concept").n_nodes == 13


class TestSimulate:
    def test_preset_clamp_writes_13_row_delta_csv(self, runner, paper_workspace):
        out = runner.invoke(
            main,
            ["simulate", "-w", str(paper_workspace), "--model", "social-concept",
             "--preset", "jordan-2013", "--clamp", "G=1.0"],
        )
        assert out.exit_code == 0, out.output
        deltas = Path(paper_workspace) / "sim" / "social-concept--clamp-G=1.deltas.csv"
        with open(deltas, newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 1 + 13
        assert rows[0] == ["id", "label", "baseline", "policy", "delta"]

    def test_scenario_file_input(self, runner, paper_workspace, tmp_path):
        import shutil

        ws = tmp_path / "ws"
        shutil.copytree(paper_workspace, ws)
        scenario = tmp_path / "scenario.json"
        scenario.write_text(json.dumps({
            "model": "social-concept",
            "preset": "jordan-2013",
            "clamps": {"F": 1.0},
            "lambda": 1.0,
            "tolerance": 1e-5,
            "max_iterations": 100,
        }))
        out = runner.invoke(main, ["simulate", "-w", str(ws), "--scenario", str(scenario)])
        assert out.exit_code == 0, out.output
        result = json.loads((ws / "sim" / "social-concept--clamp-F=1.json").read_text())
        assert result["clamped"] == ["F"]
        assert result["converged"] is True
        # flags override scenario-file fields
        out = runner.invoke(
            main,
            ["simulate", "-w", str(ws), "--scenario", str(scenario), "--clamp", "K=0.0"],
        )
        assert out.exit_code == 0, out.output
        result = json.loads(
            (ws / "sim" / "social-concept--clamp-F=1-K=0.json").read_text()
        )
        assert sorted(result["clamped"]) == ["F", "K"]

    def test_scenario_file_unknown_key_rejected(self, runner, small_ws, tmp_path):
        scenario = tmp_path / "scenario.json"
        scenario.write_text(json.dumps({"model": "social-concept", "clampz": {}}))
        out = runner.invoke(main, ["simulate", "-w", str(small_ws), "--scenario", str(scenario)])
        assert out.exit_code == 2

    def test_unknown_clamp_node_exit_code(self, runner, small_ws):
        out = runner.invoke(
            main,
            ["simulate", "-w", str(small_ws), "--model", "social-concept",
             "--clamp", "NOPE=1.0"],
        )
        assert out.exit_code == 4

    def test_unconverged_exit_code(self, runner, small_ws, tmp_path):
        import shutil

        ws = tmp_path / "ws"  # private copy: the run overwrites sim artifacts
        shutil.copytree(small_ws, ws)
        out = runner.invoke(
            main,
            ["simulate", "-w", str(ws), "--model", "social-concept",
             "--tolerance", "1e-14", "--max-iterations", "2"],
        )
        assert out.exit_code == 5
        assert "DID NOT CONVERGE" in out.output


class TestCompare:
    def test_zero_deltas_between_identical_runs(self, runner, small_ws, tmp_path):
        base = Path(small_ws) / "sim" / "social-concept--baseline.json"
        out_path = tmp_path / "cmp.json"
        out = runner.invoke(main, ["compare", str(base), str(base), "-o", str(out_path)])
        assert out.exit_code == 0, out.output
        doc = json.loads(out_path.read_text())
        assert all(d == 0.0 for d in doc["deltas"])


class TestDrillAndRank:
    def test_drill_writes_batches(self, runner, small_ws):
        store = fk.CorpusStore.open(Path(small_ws) / "manifest.json")
        concept = store.hierarchy.ids_at("concept")[0]
        out = runner.invoke(main, ["drill", "-w", str(small_ws), "--concept", concept])
        assert out.exit_code == 0, out.output
        assert (Path(small_ws) / "drill" / concept / "key_variables.json").exists()

    def test_rank_concept_f_on_paper_corpus(self, runner, paper_workspace):
        out = runner.invoke(
            main, ["rank", "-w", str(paper_workspace), "--concept", "F", "--json"]
        )
        assert out.exit_code == 0, out.output
        doc = json.loads(out.output)
        assert {r["id"] for r in doc["rows"]} == {"FA", "FB", "FC", "FD"}
        assert doc["weights"] == {"importance": 0.25, "feasibility": 0.25, "influence": 0.5}

    def test_rank_requires_exactly_one_target(self, runner, small_ws):
        out = runner.invoke(main, ["rank", "-w", str(small_ws)])
        assert out.exit_code == 2


class TestMalformedInput:
    def test_malformed_csv_exit_code(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(",a,b\na,0,oops\nb,0,0\n")
        out = runner.invoke(main, ["analyze", str(bad), "--format", "numeric_1"])
        assert out.exit_code == 3

    def test_no_partial_outputs_on_failure(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(",a,b\na,0,oops\nb,0,0\n")
        out_dir = tmp_path / "analysis"
        out = runner.invoke(
            main, ["analyze", str(bad), "--format", "numeric_1", "-o", str(out_dir)]
        )
        assert out.exit_code == 3
        assert not out_dir.exists() or not list(out_dir.iterdir())


class TestConfig:
    def test_show_config_defaults(self, runner):
        out = runner.invoke(main, ["show-config"])
        assert out.exit_code == 0
        doc = json.loads(out.output)
        assert doc["preset"] == "jordan-2013"
        assert doc["criterion_weights"] == "0.25,0.25,0.5"

    def test_config_file_overrides_defaults(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"seed": 99}))
        out = runner.invoke(main, ["--config", str(cfg), "show-config"])
        doc = json.loads(out.output)
        assert doc["seed"] == 99

    def test_unknown_config_key_rejected(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"sed": 99}))
        out = runner.invoke(main, ["--config", str(cfg), "show-config"])
        assert out.exit_code == 2


class TestReproducibility:
    def test_run_all_twice_byte_identical(self, runner, tmp_path):
        digests = []
        for name in ("r1", "r2"):
            ws = tmp_path / name
            out = runner.invoke(
                main,
                ["run-all", "-w", str(ws), "--seed", "6", "--maps", "6",
                 "--level-sizes", "30,10,4", "--preset", "jordan-2013"],
            )
            assert out.exit_code == 0, out.output
            digests.append(tree_digest(ws))
        assert digests[0] == digests[1]
