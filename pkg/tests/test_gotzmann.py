"""Tests for Gotzmann decompositions and Hoa's bound."""
import random
from fractions import Fraction

import pytest

from nsbound.config import Limits
from nsbound.errors import NotAdmissibleError, PreconditionError, ResourceLimitExceeded
from nsbound.gotzmann import (
    GotzmannDecomposition,
    HoaBoundInput,
    gotzmann_decomposition,
    gotzmann_number,
    hoa_bound,
    reconstruct,
)
from nsbound.hilbert import HilbertPolynomial, divisor_hp, parse_hilbert_polynomial


def decompose(text: str) -> GotzmannDecomposition:
    return gotzmann_decomposition(parse_hilbert_polynomial(text))


class TestDecomposition:

    def test_conic(self):
        decomp = decompose("2t+1")
        assert decomp.runs == ((1, 2),)
        assert decomp.to_dict() == {"phi": 2, "runs": [[1, 2]], "decomposition": [1, 1]}

    def test_twisted_cubic(self):
        decomp = decompose("3t+1")
        assert decomp.sequence == [1, 1, 1, 0]
        assert decomp.length == 4

    def test_quadric_surface(self):
        assert decompose("(t+1)^2").sequence == [2, 2]

    def test_complete_intersection_curve(self):
        assert gotzmann_number(parse_hilbert_polynomial("6t-3")) == 12

    def test_constant(self):
        assert decompose("5").runs == ((0, 5),)

    @pytest.mark.parametrize("r", range(2, 6))
    @pytest.mark.parametrize("d", range(1, 6))
    def test_hypersurface_number_is_degree(self, r, d):
        Q = divisor_hp(HilbertPolynomial.ambient(r), d)
        assert gotzmann_number(Q) == d

    @pytest.mark.parametrize("c", range(1, 21))
    def test_points_number_is_count(self, c):
        decomp = gotzmann_decomposition(HilbertPolynomial.constant(c))
        assert decomp.length == c
        assert decomp.runs == ((0, c),)

    def test_not_admissible(self):
        with pytest.raises(NotAdmissibleError) as exc:
            decompose("t^2")
        assert "after 2 greedy steps" in str(exc.value)
        trace = exc.value.trace
        assert [step["degree"] for step in trace] == [2, 1]
        assert trace[1]["remainder"] == "-2t-1"
        assert trace[1]["steps"] == -2
        assert exc.value.to_dict()["error_type"] == "not_admissible"

    def test_zero(self):
        with pytest.raises(PreconditionError):
            gotzmann_decomposition(HilbertPolynomial(()))

    def test_length_budget(self):
        with pytest.raises(ResourceLimitExceeded):
            gotzmann_decomposition(
                parse_hilbert_polynomial("6t-3"), Limits(max_gotzmann_length=3)
            )

    def test_long_decomposition_keeps_runs_only(self):
        decomp = decompose("2000")
        assert decomp.length == 2000
        assert "decomposition" not in decomp.to_dict()
        with pytest.raises(PreconditionError):
            decomp.sequence


class TestReconstruct:

    def test_twisted_cubic(self):
        decomp = GotzmannDecomposition.from_sequence([1, 1, 1, 0])
        assert reconstruct(decomp) == parse_hilbert_polynomial("3t+1")

    def test_invalid_sequences(self):
        with pytest.raises(PreconditionError):
            GotzmannDecomposition.from_sequence([0, 1])
        with pytest.raises(PreconditionError):
            GotzmannDecomposition.from_sequence([1, -1])

    def test_decomposition_is_recovered(self):
        rng = random.Random(5)
        for _ in range(200):
            seq = sorted((rng.randint(0, 3) for _ in range(rng.randint(1, 7))), reverse=True)
            decomp = GotzmannDecomposition.from_sequence(seq)
            assert gotzmann_decomposition(reconstruct(decomp)) == decomp


class TestHoaBound:

    def test_values(self):
        assert hoa_bound(HoaBoundInput(D=2, r=3, a=3)).exact == 5**12
        assert hoa_bound(HoaBoundInput(D=2, r=2, a=1)).exact == 8
        assert hoa_bound(HoaBoundInput(D=3, r=2, a=2)).exact == Fraction(15, 2) ** 4

    def test_zero_dimension(self):
        assert hoa_bound(HoaBoundInput(D=4, r=3, a=0)).exact == 1

    def test_dominates_gotzmann_number(self):
        # twisted cubic: D = 2, Krull dimension 2
        bound = hoa_bound(HoaBoundInput(D=2, r=3, a=2))
        assert bound.exact == 4096
        assert gotzmann_number(parse_hilbert_polynomial("3t+1")) <= bound.exact

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            HoaBoundInput(D=1, r=3, a=2)
        with pytest.raises(PreconditionError):
            HoaBoundInput(D=2, r=3, a=5)
