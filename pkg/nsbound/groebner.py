"""Buchberger's algorithm, normal forms, lead-term ideals and the Jacobian smoothness check."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul

from nsbound.config import Limits
from nsbound.errors import PreconditionError, ResourceLimitExceeded
from nsbound.poly_core import (
    IdealPresentation,
    Monomial,
    MonomialOrder,
    Polynomial,
    divides,
)

logger = logging.getLogger(__name__)

IdealLike = Union[IdealPresentation, Sequence[Polynomial]]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, sorted by descending lead monomial."""

    order: MonomialOrder
    nvars: int
    elements: tuple[Polynomial, ...]

    def lead_monomials(self) -> list[Monomial]:
        return [g.lead_monomial(self.order) for g in self.elements]

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant for g in self.elements)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class MonomialIdealGens:
    """Minimal monomial generators (an antichain under divisibility)."""

    nvars: int
    generators: tuple[Monomial, ...]

    @classmethod
    def minimalize(cls, nvars: int, monomials: Iterable[Monomial]) -> "MonomialIdealGens":
        kept: list[Monomial] = []
        for m in sorted(set(monomials), key=lambda m: (sum(m), m)):
            if not any(divides(g, m) for g in kept):
                kept.append(m)
        return cls(nvars=nvars, generators=tuple(sorted(kept, reverse=True)))

    @property
    def contains_one(self) -> bool:
        return any(not any(m) for m in self.generators)

    def contains(self, mono: Monomial) -> bool:
        return any(divides(g, mono) for g in self.generators)


def _generators(ideal: IdealLike) -> tuple[int, list[Polynomial]]:
    if isinstance(ideal, IdealPresentation):
        return ideal.nvars, list(ideal.generators)
    gens = list(ideal)
    if not gens:
        raise PreconditionError("an ideal needs at least one generator")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise PreconditionError("generators live in different rings")
    return nvars, gens


def _reduce(
    terms: dict[Monomial, Fraction],
    basis: Sequence[tuple[Monomial, dict[Monomial, Fraction]]],
    key,
) -> dict[Monomial, Fraction]:
    """Full reduction of `terms` by monic basis elements given as (lead, terms)."""
    work = dict(terms)
    remainder: dict[Monomial, Fraction] = {}
    while work:
        mono = max(work, key=key)
        coeff = work[mono]
        for lead, g_terms in basis:
            if divides(lead, mono):
                shift = monomial_div(mono, lead)
                for gm, gc in g_terms.items():
                    target = monomial_mul(gm, shift)
                    value = work.get(target, 0) - coeff * gc
                    if value:
                        work[target] = value
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[mono] = coeff
            del work[mono]
    return remainder


def _as_basis(polys: Sequence[Polynomial], order: MonomialOrder):
    return [(p.lead_monomial(order), p.terms) for p in polys]


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of p modulo gb; no remaining term is divisible by a lead monomial."""
    if p.nvars != gb.nvars:
        raise PreconditionError(f"polynomial has {p.nvars} variables, basis has {gb.nvars}")
    remainder = _reduce(p.terms, _as_basis(gb.elements, gb.order), gb.order.key)
    return Polynomial(p.nvars, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.lead_monomial(order), g.lead_monomial(order)
    lcm = monomial_lcm(lf, lg)
    return f.scale(1 / f.lead_coefficient(order), monomial_div(lcm, lf)) - g.scale(
        1 / g.lead_coefficient(order), monomial_div(lcm, lg)
    )


def buchberger(
    ideal: IdealLike,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    limits: Limits = Limits(),
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `ideal`.

    Pairs are processed by the normal strategy (smallest lcm degree, then smallest lcm
    in `order`), skipping coprime lead monomials and pairs covered by the chain
    criterion. Exceeding `limits.max_pairs` or `limits.max_degree` raises
    ResourceLimitExceeded rather than returning a partial basis.
    """
    order = MonomialOrder.parse(order)
    nvars, gens = _generators(ideal)
    key = order.key

    basis: list[Polynomial] = []
    leads: list[Monomial] = []
    pending: set[tuple[int, int]] = set()

    def add(poly: Polynomial):
        poly = poly.monic(order)
        lead = poly.lead_monomial(order)
        index = len(basis)
        basis.append(poly)
        leads.append(lead)
        for k in range(index):
            pending.add((k, index))

    for g in gens:
        if g.is_zero:
            continue
        reduced = Polynomial(nvars, _reduce(g.terms, _as_basis(basis, order), key))
        if not reduced.is_zero:
            add(reduced)

    processed = 0
    while pending:
        i, j = min(
            pending,
            key=lambda ij: (
                sum(monomial_lcm(leads[ij[0]], leads[ij[1]])),
                key(monomial_lcm(leads[ij[0]], leads[ij[1]])),
                ij,
            ),
        )
        pending.discard((i, j))
        lcm = monomial_lcm(leads[i], leads[j])
        if sum(lcm) > limits.max_degree:
            raise ResourceLimitExceeded("max_degree", limits.max_degree)
        if monomial_mul(leads[i], leads[j]) == lcm:
            continue
        if any(
            k not in (i, j)
            and divides(leads[k], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimitExceeded("max_pairs", limits.max_pairs)
        s = s_polynomial(basis[i], basis[j], order)
        h = Polynomial(nvars, _reduce(s.terms, _as_basis(basis, order), key))
        if not h.is_zero:
            add(h)
            if h.is_constant:
                break
    logger.debug("buchberger: %d pairs reduced, %d basis elements", processed, len(basis))

    return GroebnerBasis(order=order, nvars=nvars, elements=_reduced(basis, order))


def _reduced(basis: list[Polynomial], order: MonomialOrder) -> tuple[Polynomial, ...]:
    if any(p.is_constant for p in basis):
        return (Polynomial.constant(basis[0].nvars, 1),)
    minimal: list[Polynomial] = []
    leads = [p.lead_monomial(order) for p in basis]
    for idx, (p, lead) in enumerate(zip(basis, leads)):
        covered = any(
            divides(other, lead) and (other != lead or jdx < idx)
            for jdx, other in enumerate(leads)
            if jdx != idx
        )
        if not covered:
            minimal.append(p)
    reduced = []
    for idx, p in enumerate(minimal):
        others = _as_basis(minimal[:idx] + minimal[idx + 1 :], order)
        reduced.append(Polynomial(p.nvars, _reduce(p.terms, others, order.key)).monic(order))
    return tuple(sorted(reduced, key=lambda p: order.key(p.lead_monomial(order)), reverse=True))


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for f, g in combinations(gb.elements, 2):
        if not normal_form(s_polynomial(f, g, gb.order), gb).is_zero:
            return False
    return True


def lead_term_ideal(gb: GroebnerBasis) -> MonomialIdealGens:
    return MonomialIdealGens.minimalize(gb.nvars, gb.lead_monomials())


# --- smoothness -----------------------------------------------------------------


class SmoothnessStatus(str, Enum):
    SMOOTH = "smooth"
    SINGULAR = "singular"
    INDETERMINATE = "indeterminate"
    ASSERTED = "asserted"


def _determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    nvars = matrix[0][0].nvars
    total = Polynomial.zero(nvars)
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero:
            continue
        minor = [row[:col] + row[col + 1 :] for row in matrix[1:]]
        term = entry * _determinant(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def jacobian_minors(generators: Sequence[Polynomial], c: int) -> list[Polynomial]:
    """All nonzero c x c minors of the Jacobian matrix (rows: generators, columns: x_j)."""
    if c < 1:
        return []
    nvars = generators[0].nvars
    jacobian = [[g.derivative(j) for j in range(nvars)] for g in generators]
    minors = []
    for rows in combinations(range(len(generators)), c):
        for cols in combinations(range(nvars), c):
            det = _determinant([[jacobian[i][j] for j in cols] for i in rows])
            if not det.is_zero:
                minors.append(det)
    return minors


def smoothness_check(
    ideal: IdealPresentation,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    limits: Limits = Limits(),
) -> SmoothnessStatus:
    """Jacobian criterion: smooth iff I + (c x c minors) has zero Hilbert polynomial.

    Assumes the ideal defines an equidimensional scheme of codimension c; that is not
    checked. Resource exhaustion yields INDETERMINATE.
    """
    from nsbound.hilbert import hilbert_polynomial_of, invariants

    try:
        inv = invariants(ideal, order=order, limits=limits)
        minors = jacobian_minors(ideal.generators, inv.codim)
        if any(m.is_constant for m in minors):
            return SmoothnessStatus.SMOOTH
        hp = hilbert_polynomial_of(list(ideal.generators) + minors, order=order, limits=limits)
    except ResourceLimitExceeded as exc:
        logger.warning("smoothness check gave up: %s", exc)
        return SmoothnessStatus.INDETERMINATE
    return SmoothnessStatus.SMOOTH if hp.is_zero else SmoothnessStatus.SINGULAR
