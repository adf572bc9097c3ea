"""
Workflow tests for the CLI interface.

Tests the complete command-line interface including argument parsing,
config files, output formats, saved artifacts and exit codes.
"""
import json
import sys

import pytest

from nu_subdiv.cli import main


def run(*argv):
    """Run the CLI with *argv*; return the exit code (0 when main returns)."""
    sys.argv = ["nu-subdiv", *argv]
    try:
        main()
    except SystemExit as exc:
        return exc.code
    return 0


class TestCLIBasics:
    """Test basic CLI functionality."""

    def test_cli_help(self, capsys):
        """CLI --help displays usage information."""
        assert run("--help") == 0
        captured = capsys.readouterr()
        assert "usage" in captured.out.lower()
        assert "triangulate" in captured.out

    def test_missing_command(self, capsys):
        assert run() == 2

    def test_invalid_choice(self, capsys):
        assert run("reduce", "NEENE", "--order", "fastest") == 2

    def test_index(self, capsys):
        assert run("index", "NEENE") == 0
        out = capsys.readouterr().out
        assert "ν̄ = E1N1E2E3N3E4N4" in out
        assert "J = {1,3,4}" in out

    def test_index_empty_path(self, capsys):
        """The empty path is valid and closes to E1N1."""
        assert run("index", "") == 0
        assert "ν̄ = E1N1" in capsys.readouterr().out

    def test_index_json(self, capsys):
        assert run("index", "NEENE", "--format", "json") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["V"] == [1, 3, 4]

    def test_invalid_step(self, capsys):
        assert run("index", "NXE") == 2
        assert "invalid step 'X'" in capsys.readouterr().err

    def test_unsupported_format(self, capsys):
        assert run("reduce", "NEENE", "--format", "dot") == 2
        assert "not available" in capsys.readouterr().err


class TestGraphCommands:
    def test_bidirectional_dot(self, capsys):
        assert run("graph", "NEENE", "--graph", "bidirectional", "--format", "dot") == 0
        assert '"1" -> "3" [dir=both]' in capsys.readouterr().out

    def test_cell_graph(self, capsys):
        assert run("graph", "NEENE", "--graph", "cell", "--cell", "2") == 0
        out = capsys.readouterr().out
        assert "1 ← 4" in out
        assert "2 → 3" in out

    def test_partial_augmentation(self, capsys):
        assert run("graph", "NEENE", "--augment", "partial", "--format", "json") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["vertices"][0] == "s"
        assert data["vertices"][-1] == "t"

    def test_routes(self, capsys):
        assert run("routes", "NEENE") == 0
        assert capsys.readouterr().out.strip().endswith("12 routes")
        assert run("routes", "NEENE", "--cells", "2") == 0
        assert capsys.readouterr().out.strip().endswith("7 routes")

    def test_bad_cell_list(self, capsys):
        assert run("routes", "NEENE", "--cells", "1,x") == 2


class TestReduceCommand:
    """Test reductions, step logs and seeded random orders."""

    def test_reduce_text(self, capsys):
        assert run("reduce", "NEENE") == 0
        out = capsys.readouterr().out
        assert "x21*x23*x24" in out
        assert "10 terms after 5 steps" in out

    def test_reduce_json(self, capsys):
        assert run("reduce", "NEENE", "--format", "json") == 0
        data = json.loads(capsys.readouterr().out)
        assert data["order"] == "rho-len"
        assert data["steps"][0] == [4, 1, 3]
        assert len(data["normal_form"]) == 10

    def test_step_log(self, tmp_path, capsys):
        steps = tmp_path / "steps.jsonl"
        assert run("reduce", "NEENE", "--steps", str(steps)) == 0
        assert "Written →" in capsys.readouterr().out
        lines = steps.read_text().splitlines()
        assert len(lines) == 5
        assert json.loads(lines[-1]) == {"triple": [3, 4, 1], "rule": "simple"}

    def test_random_seed_is_deterministic(self, capsys):
        argv = ("reduce", "NEENNEE", "--order", "random", "--seed", "7", "--format", "json")
        assert run(*argv) == 0
        first = capsys.readouterr().out
        assert run(*argv) == 0
        assert capsys.readouterr().out == first

    def test_random_without_seed(self, capsys):
        assert run("reduce", "NEENE", "--order", "random") == 2
        assert "seed" in capsys.readouterr().err

    def test_full_beta(self, capsys):
        assert run("reduce", "NEENE", "--beta", "full") == 0
        assert "β" in capsys.readouterr().out


class TestTriangulateAndVerify:
    """Test saving a triangulation and certifying it again."""

    def test_triangulate_text(self, capsys):
        assert run("triangulate", "NEENE") == 0
        out = capsys.readouterr().out
        assert "10 facets" in out
        assert "cone points: (1,1) (3,3) (4,4)" in out

    def test_save_and_verify(self, tmp_path, capsys):
        saved = tmp_path / "neene.json"
        assert run("triangulate", "NEENE", "--format", "json", "-o", str(saved)) == 0
        assert "Written →" in capsys.readouterr().out
        assert len(json.loads(saved.read_text())["facets"]) == 10

        assert run("verify", "--triangulation", str(saved), "--trials", "20") == 0
        assert capsys.readouterr().out.strip().endswith("PASS")

    def test_corrupted_triangulation(self, tmp_path, capsys):
        saved = tmp_path / "een.json"
        assert run("triangulate", "EEN", "--format", "json", "-o", str(saved)) == 0
        data = json.loads(saved.read_text())
        data["dual_edges"] = [[0, 2]]
        saved.write_text(json.dumps(data))
        capsys.readouterr()

        assert run("verify", "--triangulation", str(saved)) == 2
        assert "dual_edges" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        saved = tmp_path / "broken.json"
        saved.write_text("{facets")
        assert run("verify", "--triangulation", str(saved)) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_missing_triangulation_file(self, tmp_path, capsys):
        assert run("verify", "--triangulation", str(tmp_path / "none.json")) == 2
        assert "not found" in capsys.readouterr().err

    def test_verify_path(self, capsys):
        assert run("verify", "NEENE", "--trials", "30") == 0
        out = capsys.readouterr().out
        assert "ok   tamari correspondence" in out
        assert out.strip().endswith("PASS")

    def test_verify_complement_variant_fails_cleanly(self, capsys):
        with pytest.warns(RuntimeWarning, match="complement"):
            assert run("verify", "NEENE", "--length-variant", "complement", "--trials", "10") == 1
        captured = capsys.readouterr()
        assert "FAIL tamari correspondence" in captured.out
        assert captured.out.strip().endswith("FAIL")
        assert "Error" not in captured.err

    def test_verify_needs_input(self, capsys):
        assert run("verify") == 2

    def test_tamari(self, capsys):
        assert run("tamari", "NEENE", "--mode", "increasing", "--format", "json") == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["trees"]) == 3
        assert data["covers"] == [[0, 1], [1, 2]]

    def test_tamari_dot(self, capsys):
        assert run("tamari", "NEENE", "--format", "dot") == 0
        assert "rank = same;" in capsys.readouterr().out

    def test_sweep(self, capsys):
        assert run("sweep", "--max-size", "2", "--trials", "20") == 0
        assert "7/7 paths passed" in capsys.readouterr().out


class TestGuardsAndConfig:
    """Test size guards, --force and config files."""

    def test_guard_exit_code(self, tmp_path, capsys):
        config = tmp_path / "config.yaml"
        config.write_text("guards:\n  max_construct_size: 3\n")
        assert run("triangulate", "NEENE", "-c", str(config)) == 3
        assert "--force" in capsys.readouterr().err

    def test_force(self, tmp_path, capsys):
        config = tmp_path / "config.yaml"
        config.write_text("guards:\n  max_construct_size: 3\n")
        with pytest.warns(RuntimeWarning):
            assert run("graph", "NEENE", "-c", str(config), "--force") == 0

    def test_sweep_guard(self, capsys):
        assert run("sweep", "--max-size", "9") == 3

    def test_config_sets_format(self, tmp_path, capsys):
        config = tmp_path / "config.yaml"
        config.write_text("output:\n  format: json\n")
        assert run("index", "NEENE", "-c", str(config)) == 0
        assert json.loads(capsys.readouterr().out)["J"] == [1, 3, 4]

    def test_invalid_config_value(self, tmp_path, capsys):
        config = tmp_path / "config.yaml"
        config.write_text("reduction:\n  order: fastest\n")
        assert run("index", "NEENE", "-c", str(config)) == 2
        assert "reduction.order" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        assert run("index", "NEENE", "-c", str(tmp_path / "none.yaml")) == 2
