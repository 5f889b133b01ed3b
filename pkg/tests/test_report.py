"""Tests for report documents, the JSON schema and rendering."""
from pathlib import Path

import jsonschema
import pytest

from nsbound import report
from nsbound.bounds import PipelineOptions, full_pipeline
from nsbound.gotzmann import gotzmann_decomposition
from nsbound.groebner import SmoothnessStatus
from nsbound.hilbert import invariants, parse_hilbert_polynomial
from nsbound.ideal_file import read_ideal_file
from nsbound.tower import TowerNumber
from nsbound.verify import GridSpec, run_checks

IDEALS = Path(__file__).resolve().parents[1] / "ideals"


@pytest.fixture(scope="module")
def quadric_doc():
    ideal = read_ideal_file(IDEALS / "quadric.txt")
    return report.bound_document(full_pipeline(ideal, PipelineOptions()))


class TestBoundDocument:

    def test_validates(self, quadric_doc):
        report.validate(quadric_doc)
        assert quadric_doc["schema"] == "ns-bound/1"
        assert quadric_doc["kind"] == "bound"
        assert quadric_doc["inputs"]["smoothness"] == "asserted"

    def test_values(self, quadric_doc):
        bounds = quadric_doc["bounds"]
        assert bounds["t_closed"]["value"] == {"kind": "exact", "decimal": "429981696"}
        assert bounds["hilbert_scheme_bound"]["value"]["kind"] == "tower"
        assert bounds["hilbert_scheme_bound"]["display"].startswith("2^(2^216)")
        assert bounds["conn_hilb_sharp"]["value"]["kind"] == "log2"
        assert bounds["m"]["value"] == 1
        assert bounds["best_bound"]["value"] == "effdiv_bound"

    def test_roundtrip_through_text(self, quadric_doc):
        doc = report.loads(report.dumps(quadric_doc))
        values = report.decode_bounds(doc)
        assert isinstance(values["effdiv_bound"], TowerNumber)
        assert values["effdiv_bound"].exact == 4 * 56**18
        assert values["hilbert_scheme_bound"].compare(values["effdiv_torsion_bound"]) == "greater"

    def test_degenerate(self):
        ideal = read_ideal_file(IDEALS / "twisted_cubic.txt")
        doc = report.bound_document(full_pipeline(ideal))
        report.validate(doc)
        assert doc["degenerate"] == "curve"
        assert doc["bound"] == 1
        assert "degenerate (curve)" in report.render_bound(doc)

    def test_render(self, quadric_doc):
        text = report.render_bound(quadric_doc)
        assert "Hilbert poly:   (t+1)^2" in text
        assert "effdiv_bound" in text
        assert "hypotheses:" in text

    def test_schema_rejects_bad_documents(self, quadric_doc):
        broken = dict(quadric_doc, schema="ns-bound/0")
        with pytest.raises(jsonschema.ValidationError):
            report.validate(broken)
        bad_formula = dict(quadric_doc)
        bad_formula["bounds"] = {"x": {"value": 1, "formula": 3}}
        with pytest.raises(jsonschema.ValidationError):
            report.validate(bad_formula)
        bad_number = {
            "schema": "ns-bound/1",
            "kind": "verify",
            "outcomes": [
                {"check": "x", "params": {}, "holds": True, "left": {"kind": "exact", "decimal": "1.5"}}
            ],
        }
        with pytest.raises(jsonschema.ValidationError):
            report.validate(bad_number)


class TestEncodeValue:

    def test_small_ints_stay_plain(self):
        assert report.encode_value(42) == 42
        assert report.encode_value(True) is True

    def test_wide_ints_become_exact_numbers(self):
        encoded = report.encode_value(2**5000)
        assert encoded["kind"] == "exact"
        assert report.decode_value(encoded).exact == 2**5000

    def test_nested(self):
        encoded = report.encode_value({"a": [TowerNumber.of(3)], "b": "x"})
        assert encoded == {"a": [{"kind": "exact", "decimal": "3"}], "b": "x"}


class TestOtherDocuments:

    def test_invariants(self):
        ideal = read_ideal_file(IDEALS / "twisted_cubic.txt")
        doc = report.invariants_document(invariants(ideal), SmoothnessStatus.SMOOTH)
        report.validate(doc)
        assert doc["hp"] == "3t+1"
        assert doc["smoothness"] == "smooth"
        assert "deg X:          3" in report.render_invariants(doc)

    def test_gotzmann(self):
        Q = parse_hilbert_polynomial("3t+1")
        doc = report.gotzmann_document(Q, gotzmann_decomposition(Q))
        report.validate(doc)
        assert doc["phi"] == 4
        assert doc["decomposition"] == [1, 1, 1, 0]
        assert "phi: 4" in report.render_gotzmann(doc)

    def test_verify_all_hold(self):
        run = run_checks(GridSpec(r_range=(3, 4), d_range=(2, 3)), only=["compare", "binom"])
        doc = report.verify_document(run)
        report.validate(doc)
        assert doc["all_hold"] is True
        assert doc["count"] == len(doc["outcomes"])
        assert report.render_verify(doc).endswith("all inequalities hold")

    def test_verify_discrepancy(self):
        run = run_checks(GridSpec(r_range=(4, 4), d_range=(2, 2)), only=["hoa-t"])
        doc = report.verify_document(run)
        report.validate(doc)
        assert doc["all_hold"] is False
        assert len(doc["discrepancies"]) == 1
        text = report.render_verify(doc)
        assert "FAILS hoa-t [d=2, r=4]" in text
        assert "fails at a=[3]" in text

    def test_schema_is_valid_draft_2020_12(self):
        jsonschema.Draft202012Validator.check_schema(report.JSON_SCHEMA)
