"""Tests for the ns-bound command line."""
import json
from pathlib import Path

from nsbound.report import loads
from scripts.ns_bound_cli import (
    EXIT_DISCREPANCY,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    main,
)

IDEALS = Path(__file__).resolve().parents[1] / "ideals"


def quadric() -> str:
    return str(IDEALS / "quadric.txt")


class TestInvariants:

    def test_text_output(self, capsys):
        assert main(["invariants", quadric()]) == EXIT_OK
        out = capsys.readouterr().out
        assert "dim X:          2" in out
        assert "(t+1)^2" in out

    def test_json_to_stdout(self, capsys):
        assert main(["invariants", quadric(), "--json", "-"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["degX"] == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["invariants", str(tmp_path / "nope.txt")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err

    def test_resource_limit(self, capsys):
        code = main(["invariants", str(IDEALS / "twisted_cubic.txt"), "--max-pairs", "0"])
        assert code == EXIT_RESOURCE
        assert "max_pairs" in capsys.readouterr().err


class TestBound:

    def test_writes_json_report(self, tmp_path, capsys):
        target = tmp_path / "quadric.json"
        assert main(["bound", quadric(), "--json", str(target)]) == EXIT_OK
        doc = json.loads(target.read_text())
        assert doc["bounds"]["best_bound"]["value"] == "effdiv_bound"
        out = capsys.readouterr().out
        assert "effdiv_torsion_bound" in out
        assert "2^(2^216)" in out

    def test_json_report_is_reproducible(self, tmp_path):
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        assert main(["bound", quadric(), "--json", str(first)]) == EXIT_OK
        assert main(["bound", quadric(), "--json", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

        doc = loads(first.read_text())
        value = doc["bounds"]["component_bound_hilb"]["value"]
        assert value["kind"] == "log2"
        for part in value["dyadic"]["lo"] + value["dyadic"]["hi"]:
            assert type(part) is int

    def test_paper_faithful(self, capsys):
        assert main(["bound", quadric(), "--paper-faithful"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "t_sharp" not in out
        assert "hilbert_scheme_bound" in out

    def test_degenerate(self, capsys):
        assert main(["bound", str(IDEALS / "point.txt")]) == EXIT_OK
        assert "degenerate (point)" in capsys.readouterr().out

    def test_inhomogeneous_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("vars 3\nx0^2 + x1\n")
        assert main(["bound", str(path)]) == EXIT_USAGE
        assert "not homogeneous" in capsys.readouterr().err


class TestGotzmann:

    def test_hp(self, capsys):
        assert main(["gotzmann", "--hp", "3t+1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "phi: 4" in out
        assert "[1, 1, 1, 0]" in out

    def test_file(self, capsys):
        assert main(["gotzmann", str(IDEALS / "complete_intersection_2_3.txt")]) == EXIT_OK
        assert "phi: 12" in capsys.readouterr().out

    def test_not_admissible_prints_trace(self, capsys):
        assert main(["gotzmann", "--hp", "t^2"]) == EXIT_USAGE
        err = capsys.readouterr().err
        assert "not an admissible Hilbert polynomial" in err
        assert "remainder -2t-1" in err

    def test_needs_exactly_one_source(self, capsys):
        assert main(["gotzmann"]) == EXIT_USAGE
        assert main(["gotzmann", quadric(), "--hp", "2t+1"]) == EXIT_USAGE


class TestVerify:

    def test_binom_from_r2(self, capsys):
        assert main(["verify", "--r", "2..8", "--only", "binom"]) == EXIT_OK
        assert "all inequalities hold" in capsys.readouterr().out

    def test_opt_in_check_fails(self, tmp_path, capsys):
        target = tmp_path / "verify.json"
        code = main(
            ["verify", "--r", "3..4", "--d", "2..2", "--only", "hoa-t", "--json", str(target)]
        )
        assert code == EXIT_DISCREPANCY
        doc = json.loads(target.read_text())
        assert doc["all_hold"] is False
        assert "FAILS hoa-t" in capsys.readouterr().out

    def test_chain_rejects_r2(self, capsys):
        assert main(["verify", "--r", "2..3", "--only", "hilbert-chain"]) == EXIT_USAGE

    def test_repeated_only(self, capsys):
        code = main(["verify", "--r", "3..3", "--d", "2..3", "--only", "compare", "--only", "partitions"])
        assert code == EXIT_OK
        assert "checks: compare, partitions" in capsys.readouterr().out


class TestSchema:

    def test_prints_schema(self, capsys):
        assert main(["schema"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["$id"] == "ns-bound/1"
