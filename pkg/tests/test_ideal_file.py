"""Tests for the ideal file reader."""
from pathlib import Path

import pytest

from nsbound.errors import ParseError
from nsbound.ideal_file import parse_ideal_text, read_ideal_file

IDEALS = Path(__file__).resolve().parents[1] / "ideals"


class TestParseIdealText:

    def test_quadric_with_comments(self):
        ideal = parse_ideal_text("# quadric\nvars 4\n\nx0*x3 - x1*x2  # the only generator\n")
        assert ideal.r == 3
        assert ideal.d == 2
        assert len(ideal.generators) == 1

    def test_missing_header(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_text("x0*x3 - x1*x2\n")
        assert exc.value.line == 1

    def test_duplicate_header(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_text("vars 3\nx0\nvars 3\n")
        assert exc.value.line == 3

    def test_too_few_variables(self):
        with pytest.raises(ParseError):
            parse_ideal_text("vars 1\nx0\n")

    def test_inhomogeneous_generator(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_text("vars 3\nx0^2 + x1\n")
        assert exc.value.line == 2
        assert "not homogeneous" in str(exc.value)

    def test_zero_and_constant_generators(self):
        with pytest.raises(ParseError, match="zero"):
            parse_ideal_text("vars 3\nx0 - x0\n")
        with pytest.raises(ParseError, match="constant"):
            parse_ideal_text("vars 3\n7\n")

    def test_unknown_variable_carries_line_and_column(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_text("vars 3\nx0\nx1 + x5\n")
        assert exc.value.line == 3
        assert exc.value.position == 5
        assert exc.value.to_dict()["error_type"] == "parse"

    def test_empty_and_headerless(self):
        with pytest.raises(ParseError, match="empty"):
            parse_ideal_text("# nothing here\n")
        with pytest.raises(ParseError, match="no generators"):
            parse_ideal_text("vars 4\n")


class TestReadIdealFile:

    @pytest.mark.parametrize(
        "name,r,count",
        [
            ("quadric.txt", 3, 1),
            ("twisted_cubic.txt", 3, 3),
            ("complete_intersection_2_3.txt", 3, 2),
            ("hyperplane.txt", 3, 1),
            ("nodal_cubic.txt", 3, 1),
            ("point.txt", 2, 2),
            ("fermat_quartic.txt", 3, 1),
        ],
    )
    def test_bundled_samples(self, name, r, count):
        ideal = read_ideal_file(IDEALS / name)
        assert ideal.r == r
        assert len(ideal.generators) == count

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            read_ideal_file(tmp_path / "missing.txt")

    def test_error_names_the_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("vars 3\nx0 +\n")
        with pytest.raises(ParseError) as exc:
            read_ideal_file(path)
        assert str(path) in str(exc.value)
        assert exc.value.line == 2
