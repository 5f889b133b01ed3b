"""Tests for the ideal tool."""
import json
from pathlib import Path

from dotenv import load_dotenv

load_dotenv(Path(__file__).parent.parent / ".env")

from fastmcp import FastMCP
from tools.ideal import register_ideal_tools

IDEALS = Path(__file__).resolve().parents[1] / "ideals"


def _make_tool():
    server = FastMCP("test")
    register_ideal_tools(server)
    for t in server._tool_manager._tools.values():
        if t.name == "ideal":
            return t.fn
    raise RuntimeError("ideal tool not found")


_tool_fn = _make_tool()


def call_tool(**kwargs) -> dict:
    return json.loads(_tool_fn(**kwargs))


class TestInvariants:

    def test_quadric_from_generators(self):
        r = call_tool(action="invariants", generators="x0*x3 - x1*x2", r=3)
        assert r["kind"] == "invariants"
        assert r["hp"] == "(t+1)^2"
        assert (r["dimX"], r["codim"], r["degX"], r["d"]) == (2, 1, 2, 2)
        assert "smoothness" not in r

    def test_twisted_cubic_from_file(self):
        r = call_tool(action="invariants", path=str(IDEALS / "twisted_cubic.txt"))
        assert r["hp_dense"] == "3t+1"
        assert r["hp_binomial_coefficients"] == [-2, 3]

    def test_inline_ideal_text(self):
        r = call_tool(action="invariants", ideal_text="vars 3\nx1\nx2\n")
        assert r["dimX"] == 0
        assert r["linear_forms"] == 2

    def test_with_smoothness(self):
        r = call_tool(action="invariants", generators="x0*x3 - x1*x2", r=3, check_smooth=True)
        assert r["smoothness"] == "smooth"

    def test_irrelevant_ideal(self):
        r = call_tool(action="invariants", generators="x0; x1; x2", r=2)
        assert r["error_type"] == "improper"


class TestGroebner:

    def test_twisted_cubic(self):
        r = call_tool(
            action="groebner",
            generators="x0*x2 - x1^2; x0*x3 - x1*x2; x1*x3 - x2^2",
            r=3,
        )
        assert r["order"] == "grevlex"
        assert r["unit"] is False
        assert r["size"] == 3

    def test_redundant_generators(self):
        r = call_tool(action="groebner", generators="x0; x0 - x1; x1", r=2)
        assert r["unit"] is False
        assert r["size"] == 2

    def test_pair_budget(self):
        r = call_tool(
            action="groebner",
            generators="x0*x2 - x1^2; x0*x3 - x1*x2; x1*x3 - x2^2",
            r=3,
            max_pairs=0,
        )
        assert r["error_type"] == "resource"
        assert r["limit"] == "max_pairs"


class TestSmoothness:

    def test_nodal_cubic(self):
        r = call_tool(action="smoothness", path=str(IDEALS / "nodal_cubic.txt"))
        assert r["smoothness"] == "singular"


class TestErrors:

    def test_unknown_action(self):
        r = call_tool(action="solve")
        assert "Unknown action" in r["error"]
        assert r["valid_actions"] == ["invariants", "groebner", "smoothness"]

    def test_missing_ideal(self):
        r = call_tool(action="invariants")
        assert r["error_type"] == "parse"

    def test_generators_need_r(self):
        r = call_tool(action="invariants", generators="x0*x3 - x1*x2")
        assert "`r` is required" in r["error"]

    def test_unknown_variable(self):
        r = call_tool(action="invariants", generators="x0*x5", r=3)
        assert r["error_type"] == "parse"
        assert r["line"] == 2

    def test_bad_order(self):
        r = call_tool(action="groebner", generators="x0", r=2, order="deglex")
        assert r["error_type"] == "precondition"
