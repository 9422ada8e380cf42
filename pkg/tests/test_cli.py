"""Command-line tests."""
import json

import pytest

from cli.main import EXIT_CERTIFICATE_FAILED, EXIT_OK, main
from cli.matrix_io import emit_matrix, parse_matrix


class TestMatrixFiles:
    """Tests for matrix file parsing and emission."""

    @pytest.mark.parametrize("name", ["jordan2.json", "triangular_pm1.json"])
    def test_samples_are_canonical(self, samples_dir, name):
        """Test emitting a parsed sample reproduces its bytes."""
        path = samples_dir / name
        assert emit_matrix(parse_matrix(path)) == path.read_text(encoding="utf-8")

    def test_parse_text(self):
        """Test a 1x1 matrix given as JSON text."""
        A = parse_matrix('{"n": 1, "entries": [[[2, -1]]]}')
        assert A.shape == (1, 1)
        assert A[0, 0] == 2 - 1j

    def test_ragged_matrix_exit_code(self, tmp_path):
        """Test a ragged matrix file exits with the input error code."""
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2, "entries": [[[0, 0]]]}')
        assert main(["radius", "--matrix", str(path)]) == 2

    def test_malformed_json_exit_code(self, tmp_path):
        """Test broken JSON exits with the input error code."""
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2,')
        assert main(["radius", "--matrix", str(path)]) == 2

    def test_missing_file(self, tmp_path):
        """Test an unreadable path."""
        assert main(["radius", "--matrix", str(tmp_path / "missing.json")]) == 2


class TestCommands:
    """Tests for the numspec subcommands."""

    def test_radius(self, jordan2_file, capsys):
        """Test the Jordan block radius at p = 2."""
        assert main(["radius", "--matrix", str(jordan2_file)]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(0.5, abs=1e-3)

    def test_invalid_p(self, jordan2_file):
        """Test p below 1 is an input error."""
        assert main(["radius", "--matrix", str(jordan2_file), "--p", "0.5"]) == 2

    def test_zoo_then_bounds(self, tmp_path, capsys):
        """Test emitting an example and querying s_n^0 under l^1."""
        path = tmp_path / "a.json"
        assert main(["zoo", "--name", "triangular_pm1", "--out", str(path)]) == EXIT_OK
        assert main(["bounds", "--matrix", str(path), "--p", "1", "--theta", "0"]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(1.0, abs=1e-6)

    def test_zoo_params(self, tmp_path):
        """Test example parameters given as key=value."""
        path = tmp_path / "d.json"
        assert main(["zoo", "--name", "diag", "--param", "q=1,2,3", "--out", str(path)]) == EXIT_OK
        assert parse_matrix(path).shape == (3, 3)

    def test_zoo_bad_param(self, tmp_path):
        """Test a parameter without '='."""
        assert main(["zoo", "--name", "diag", "--param", "q", "--out", str(tmp_path / "d.json")]) == 2

    def test_zoo_list(self, capsys):
        """Test the catalogue listing."""
        assert main(["zoo", "--list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "jordan2" in out
        assert "dirichlet_laplacian" in out

    def test_certify_fails_at_origin(self, jordan2_file, capsys):
        """Test the Jordan block is not certified on Re lambda > 0."""
        code = main(["certify", "--matrix", str(jordan2_file), "--theta", "0", "--omega", "0"])
        assert code == EXIT_CERTIFICATE_FAILED
        doc = json.loads(capsys.readouterr().out)
        assert doc["passed"] is False
        assert doc["worst_ratio"] >= 1.6

    def test_certify_passes(self, jordan2_file, capsys):
        """Test a half-plane just beyond the support passes."""
        code = main(["certify", "--matrix", str(jordan2_file), "--theta", "0", "--omega", "0.500001",
                     "--grid", "10x4"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_certify_bad_grid(self, jordan2_file):
        """Test grid text validation."""
        assert main(["certify", "--matrix", str(jordan2_file), "--theta", "0", "--omega", "1",
                     "--grid", "ten"]) == 2

    def test_region(self, jordan2_file, tmp_path):
        """Test the region artifact and the optional SVG."""
        out, svg = tmp_path / "r.json", tmp_path / "r.svg"
        args = ["region", "--matrix", str(jordan2_file), "--angles", "36", "--out", str(out), "--svg", str(svg)]
        assert main(args) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["angles"] == 36
        assert len(doc["support"]) == 36
        assert doc["p"] == 2.0
        assert "flags" in doc["class"]
        assert "<svg" in svg.read_text()

    def test_region_is_deterministic(self, tmp_path, samples_dir):
        """Test repeated runs give byte-identical artifacts."""
        matrix = str(samples_dir / "triangular_pm1.json")
        first, second = tmp_path / "1.json", tmp_path / "2.json"
        base = ["region", "--matrix", matrix, "--p", "3", "--angles", "24", "--seed", "5"]
        assert main(base + ["--out", str(first)]) == EXIT_OK
        assert main(["--threads", "2"] + base + ["--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_curve(self, jordan2_file, tmp_path):
        """Test the curve CSV on a uniform grid."""
        out = tmp_path / "c.csv"
        args = ["curve", "--matrix", str(jordan2_file), "--p", "1", "--tmax", "2", "--steps", "4", "--out", str(out)]
        assert main(args) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "t,norm"
        rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
        assert [t for t, _ in rows] == pytest.approx([0.5, 1.0, 1.5, 2.0])
        assert [v for _, v in rows] == pytest.approx([1.5, 2.0, 2.5, 3.0])

    def test_curve_invalid_steps(self, jordan2_file, tmp_path):
        """Test curve grid validation."""
        args = ["curve", "--matrix", str(jordan2_file), "--tmax", "1", "--steps", "0", "--out", str(tmp_path / "c")]
        assert main(args) == 2

    def test_hildebrandt(self, jordan2_file, tmp_path):
        """Test the report lists one entry per omega."""
        out = tmp_path / "h.json"
        args = ["hildebrandt", "--matrix", str(jordan2_file), "--omegas", "1,0.5", "--angles", "16",
                "--fan", "4", "--out", str(out)]
        assert main(args) == EXIT_OK
        entries = json.loads(out.read_text())
        assert [e["omega"] for e in entries] == [1.0, 0.5]
        assert all(e["fan"] == 4 for e in entries)

    def test_hildebrandt_bad_omegas(self, jordan2_file, tmp_path):
        """Test omega list parsing."""
        args = ["hildebrandt", "--matrix", str(jordan2_file), "--omegas", "1,x", "--out", str(tmp_path / "h.json")]
        assert main(args) == 2
