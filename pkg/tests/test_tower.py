"""Tests for directed-rounding intervals and TowerNumber."""
import json
import random
from fractions import Fraction

import mpmath
import pytest

from nsbound.config import Settings
from nsbound.directed import Interval, decimal_down, decimal_up, mpf_to_fraction
from nsbound.errors import PreconditionError
from nsbound.tower import TowerKind, TowerNumber, fraction_text, parse_fraction

SMALL = Settings(exact_bits=64)


def contains(interval: Interval, value) -> bool:
    return mpf_to_fraction(interval.lo) <= value <= mpf_to_fraction(interval.hi)


class TestInterval:

    def test_point_of_fraction_brackets_value(self):
        third = Interval.point(Fraction(1, 3))
        assert contains(third, Fraction(1, 3))
        assert not third.is_point

    def test_log2_of_power_of_two_is_exact(self):
        bounds = Interval.point(2**100).log2()
        assert bounds.is_point
        assert mpf_to_fraction(bounds.hi) == 100

    def test_log2_then_exp2_contains_value(self):
        rng = random.Random(1)
        for _ in range(50):
            value = rng.randint(3, 10**40)
            assert contains(Interval.point(value).log2().exp2(), value)

    def test_arithmetic_is_outward(self):
        a = Interval.point(Fraction(1, 3))
        b = Interval.point(Fraction(2, 7))
        assert contains(a + b, Fraction(1, 3) + Fraction(2, 7))
        assert contains(a * b, Fraction(2, 21))
        assert contains(a - b, Fraction(1, 21))
        assert contains(a / b, Fraction(7, 6))

    def test_division_by_nonpositive(self):
        with pytest.raises(PreconditionError):
            Interval.point(1) / Interval.point(0)

    def test_comparisons(self):
        assert Interval.point(3).le(3) is True
        assert Interval.point(3).lt(3) is False
        assert Interval.point(4).le(3) is False
        third = Interval.point(Fraction(1, 3))
        assert third.le(third) is None

    def test_decimal_rounding(self):
        third = Interval.point(Fraction(1, 3))
        assert decimal_up(third.hi, 6) == "0.333334"
        assert decimal_down(third.lo, 6) == "0.333333"
        assert decimal_up(Interval.point(216).hi) == "216"

    def test_log2_of_nonpositive(self):
        with pytest.raises(PreconditionError):
            Interval.point(0).log2()


class TestTowerNumber:

    def test_small_power_is_exact(self):
        value = TowerNumber.power(12, 8)
        assert value.is_exact
        assert value.exact_int == 429981696

    def test_large_power_goes_to_log2(self):
        value = TowerNumber.power(3, 1000, SMALL)
        assert value.kind is TowerKind.LOG2
        assert Interval.point(1584).lt(value.log2_bounds) is True
        assert value.log2_bounds.le(1585) is True

    def test_power_edge_cases(self):
        assert TowerNumber.power(7, 0).exact == 1
        assert TowerNumber.power(1, 10**9).exact == 1
        assert TowerNumber.power(0, 5).exact == 0
        with pytest.raises(PreconditionError):
            TowerNumber.power(2, -1)

    def test_exact_int_rejects_fractions(self):
        with pytest.raises(PreconditionError):
            TowerNumber.of(Fraction(1, 2)).exact_int

    def test_compare_log2_forms(self):
        three = TowerNumber.power(3, 1000, SMALL)
        two = TowerNumber.power(2, 1585, SMALL)
        assert three.compare(two) == "less"
        assert two.compare(three) == "greater"
        assert three.le(two) is True

    def test_compare_exact(self):
        assert TowerNumber.of(3).compare(TowerNumber.of(3)) == "equal"
        assert TowerNumber.of(2).compare(TowerNumber.of(3)) == "less"

    def test_compare_towers(self):
        small = TowerNumber.tower(2, Interval.point(18))
        big = TowerNumber.tower(2, Interval.point(216))
        assert small.compare(big) == "less"
        assert big.compare(TowerNumber.of(10**100)) == "greater"
        assert TowerNumber.power(56, 18).compare(small) == "less"

    def test_incomparable(self):
        third = Interval.point(Fraction(1, 3))
        left = TowerNumber.from_log2(third + 100)
        right = TowerNumber.from_log2(third + 100)
        assert left.compare(right) == "incomparable"
        assert left.le(right) is None

    def test_tower_inner_base(self):
        with pytest.raises(PreconditionError):
            TowerNumber.tower(1, Interval.point(3))

    def test_multiplication(self):
        product = TowerNumber.of(4) * TowerNumber.power(56, 18)
        assert product.exact == 4 * 56**18
        mixed = TowerNumber.power(2, 200, SMALL) * 8
        assert mixed.kind is TowerKind.LOG2
        assert mpf_to_fraction(mixed.log2_bounds.hi) == 203

    def test_multiply_honours_exact_bits(self):
        half = TowerNumber.of(2**40)
        product = half.multiply(half, SMALL)
        assert product.kind is TowerKind.LOG2
        assert mpf_to_fraction(product.log2_bounds.hi) == 80
        assert (half * half).exact == 2**80

    def test_loglog_of_tower(self):
        value = TowerNumber.tower(4, Interval.point(8))
        assert mpf_to_fraction(value.loglog2_interval().hi) == 16


class TestLogFormSoundness:

    @staticmethod
    def reference_log2(interval: Interval):
        return (
            mpmath.mpf(tuple(interval.lo_dyadic())),
            mpmath.mpf(tuple(interval.hi_dyadic())),
        )

    def test_exact_value_lies_below_log_form(self):
        rng = random.Random(6)
        bases = [b for b in range(3, 200) if b & (b - 1)]
        with mpmath.workprec(600):
            for _ in range(1000):
                base, exponent = rng.choice(bases), rng.randint(70, 400)
                log_form = TowerNumber.power(base, exponent, SMALL)
                assert log_form.kind is TowerKind.LOG2
                lo, hi = self.reference_log2(log_form.log2_bounds)
                assert lo <= mpmath.log(base, 2) * exponent <= hi
                assert TowerNumber.of(base**exponent).compare(log_form) != "greater"

    def test_log_comparisons_agree_with_exact(self):
        rng = random.Random(7)
        decided = 0
        for _ in range(1000):
            a, b = rng.randint(3, 10**30), rng.randint(3, 10**30)
            left = TowerNumber.from_log2(Interval.point(a).log2())
            right = TowerNumber.from_log2(Interval.point(b).log2())
            outcome = left.compare(right)
            if outcome == "incomparable":
                continue
            decided += 1
            assert outcome == ("less" if a < b else "greater" if a > b else "equal")
        assert decided > 900

    @pytest.mark.parametrize("base", [2, 3, 5])
    def test_towers_agree_with_exact(self, base):
        for e in range(1, 5):
            tower = TowerNumber.tower(base, Interval.point(e))
            assert tower.compare(TowerNumber.of(2 ** (base**e + 1))) == "less"
            assert tower.compare(TowerNumber.of(2 ** (base**e - 1))) == "greater"


class TestSerialization:

    def test_exact_json(self):
        assert TowerNumber.of(Fraction(-3, 4)).to_json() == {"kind": "exact", "decimal": "-3/4"}

    def test_json_roundtrip(self):
        values = [
            TowerNumber.of(12**8),
            TowerNumber.power(3, 1000, SMALL),
            TowerNumber.tower(2, Interval.point(3).log2() * 6 + 9),
        ]
        for value in values:
            again = TowerNumber.from_json(value.to_json())
            assert again.kind is value.kind
            if value.is_exact:
                assert again.exact == value.exact
            else:
                bounds = value.log2_bounds or value.inner_exp
                restored = again.log2_bounds or again.inner_exp
                assert (restored.lo, restored.hi) == (bounds.lo, bounds.hi)

    def test_dyadic_parts_are_plain_ints(self):
        values = [
            TowerNumber.power(3, 1000, SMALL),
            TowerNumber.tower(2, Interval.point(3).log2() * 6 + 9),
        ]
        for value in values:
            doc = value.to_json()
            for side in ("lo", "hi"):
                assert all(type(part) is int for part in doc["dyadic"][side])
            assert json.loads(json.dumps(doc)) == doc

    def test_tower_json(self):
        doc = TowerNumber.tower(2, Interval.point(216)).to_json()
        assert doc["kind"] == "tower"
        assert doc["inner_base"] == 2
        assert doc["inner_exp"] == "216"
        assert doc["rounding"] == "up"

    def test_huge_integers_beyond_str_limit(self):
        value = 7**20000
        text = fraction_text(Fraction(value))
        assert len(text) > 10000
        assert parse_fraction(text) == value

    def test_parse_fraction_rejects_garbage(self):
        with pytest.raises(PreconditionError):
            parse_fraction("12a")


class TestHuman:

    def test_exact(self):
        assert TowerNumber.of(429981696).human() == "429981696"

    def test_long_exact_is_abbreviated(self):
        text = TowerNumber.of(10**40).human()
        assert text.startswith("≈ 10^")
        assert "(41 digits)" in text
        assert TowerNumber.of(10**40).human(exact_digits=True) == "1" + "0" * 40

    def test_tower(self):
        text = TowerNumber.tower(2, Interval.point(216)).human()
        assert text.startswith("2^(2^216) ≈ 10^(")
        assert text.endswith("(rounded up)")
