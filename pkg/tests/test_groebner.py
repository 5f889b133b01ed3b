"""Tests for Buchberger's algorithm, normal forms and the smoothness check."""
import random

import pytest

from nsbound.config import Limits
from nsbound.errors import ResourceLimitExceeded
from nsbound.groebner import (
    MonomialIdealGens,
    SmoothnessStatus,
    buchberger,
    is_groebner,
    jacobian_minors,
    lead_term_ideal,
    normal_form,
    s_polynomial,
    smoothness_check,
)
from nsbound.poly_core import IdealPresentation, MonomialOrder, Polynomial

TWISTED_CUBIC = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


def x(i: int, nvars: int = 4) -> Polynomial:
    return Polynomial.variable(nvars, i)


class TestBuchberger:

    def test_twisted_cubic_grevlex(self):
        gb = buchberger(IdealPresentation.parse(3, TWISTED_CUBIC))
        assert len(gb) == 3
        assert is_groebner(gb)
        assert sorted(gb.lead_monomials()) == sorted(
            [(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)]
        )

    def test_twisted_cubic_lex(self):
        gb = buchberger(IdealPresentation.parse(3, TWISTED_CUBIC), MonomialOrder.LEX)
        assert is_groebner(gb)
        assert all(p.lead_coefficient(MonomialOrder.LEX) == 1 for p in gb.elements)

    def test_generators_reduce_to_zero(self):
        ideal = IdealPresentation.parse(3, TWISTED_CUBIC)
        gb = buchberger(ideal)
        for g in ideal.generators:
            assert gb.contains(g)
        assert not gb.contains(x(0))

    def test_normal_form(self):
        gb = buchberger(IdealPresentation.parse(3, ["x0*x3 - x1*x2"]))
        # x1*x2 is the grevlex lead term
        assert normal_form(x(1) * x(2), gb) == x(0) * x(3)

    def test_unit_ideal(self):
        gb = buchberger([x(0), x(0) + Polynomial.constant(4, 1)])
        assert gb.is_unit
        assert gb.elements == (Polynomial.constant(4, 1),)

    def test_s_polynomial_cancels_leads(self):
        f = x(0) * x(2) - x(1) ** 2
        g = x(0) * x(3) - x(1) * x(2)
        s = s_polynomial(f, g, MonomialOrder.GREVLEX)
        lcm = tuple(max(a, b) for a, b in zip(f.lead_monomial(), g.lead_monomial()))
        assert s.coefficient(lcm) == 0

    def test_pair_budget(self):
        with pytest.raises(ResourceLimitExceeded) as exc:
            buchberger(IdealPresentation.parse(3, TWISTED_CUBIC), limits=Limits(max_pairs=0))
        assert exc.value.limit == "max_pairs"

    def test_degree_budget(self):
        with pytest.raises(ResourceLimitExceeded) as exc:
            buchberger(IdealPresentation.parse(3, TWISTED_CUBIC), limits=Limits(max_degree=2))
        assert exc.value.limit == "max_degree"

    def test_random_binomial_ideals_are_groebner(self):
        rng = random.Random(7)
        for _ in range(10):
            gens = []
            for _ in range(3):
                a = tuple(rng.randint(0, 2) for _ in range(3))
                b = list(a)
                i, j = rng.sample(range(3), 2)
                if b[i] == 0:
                    continue
                b[i] -= 1
                b[j] += 1
                gens.append(Polynomial.monomial(a) - Polynomial.monomial(tuple(b)))
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            gb = buchberger(gens)
            assert is_groebner(gb)
            for g in gens:
                assert gb.contains(g)


class TestLeadTermIdeal:

    def test_minimalize(self):
        mi = MonomialIdealGens.minimalize(3, [(2, 0, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1)])
        assert set(mi.generators) == {(1, 0, 0), (0, 0, 1)}
        assert mi.contains((3, 1, 0))
        assert not mi.contains((0, 5, 0))

    def test_lead_term_ideal_of_quadric(self):
        gb = buchberger(IdealPresentation.parse(3, ["x0*x3 - x1*x2"]))
        assert lead_term_ideal(gb).generators == ((0, 1, 1, 0),)


class TestSmoothness:

    def test_quadric_is_smooth(self):
        ideal = IdealPresentation.parse(3, ["x0*x3 - x1*x2"])
        assert smoothness_check(ideal) is SmoothnessStatus.SMOOTH

    def test_line_pair_is_singular(self):
        ideal = IdealPresentation.parse(2, ["x0*x1"])
        assert smoothness_check(ideal) is SmoothnessStatus.SINGULAR

    def test_nodal_cubic_is_singular(self):
        ideal = IdealPresentation.parse(
            3, ["x0*x1*x3 + x1*x2*x3 + x0*x2*x3 + x0^3 + x1^3 + x2^3"]
        )
        assert smoothness_check(ideal) is SmoothnessStatus.SINGULAR

    def test_budget_gives_indeterminate(self):
        ideal = IdealPresentation.parse(3, TWISTED_CUBIC)
        status = smoothness_check(ideal, limits=Limits(max_pairs=0))
        assert status is SmoothnessStatus.INDETERMINATE

    def test_jacobian_minors(self):
        minors = jacobian_minors([x(0) * x(3) - x(1) * x(2)], 1)
        assert set(minors) == {x(3), -x(2), -x(1), x(0)}
        assert jacobian_minors([x(0)], 0) == []
