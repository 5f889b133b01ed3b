"""Hilbert series of monomial ideals, Hilbert polynomials and variety invariants.

Hilbert polynomials are stored in the binomial basis B_k(t) = binom(t+k, k):
P(t) = sum_k c_k B_k(t) with integer c_k, which makes integer-valuedness automatic.
Since the backward difference of B_k is B_{k-1} and B_k(-1) = 0 for k >= 1, the
coefficients are c_k = (backward difference^k P)(-1).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, prod
from typing import Callable, Optional, Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.densearith import dup_add, dup_lshift, dup_mul, dup_quo
from sympy.polys.densetools import dup_eval
from sympy.polys.domains import ZZ

from nsbound.config import Limits
from nsbound.errors import (
    ImproperIdealError,
    ParseError,
    PreconditionError,
    ResourceLimitExceeded,
)
from nsbound.groebner import (
    GroebnerBasis,
    IdealLike,
    MonomialIdealGens,
    buchberger,
    lead_term_ideal,
)
from nsbound.poly_core import IdealPresentation, Monomial, MonomialOrder

logger = logging.getLogger(__name__)

T = sympy.Symbol("t")
_ONE_MINUS_Z = [ZZ(-1), ZZ(1)]


def binomial(n: int, k: int) -> int:
    """binom(n, k) as the polynomial n(n-1)...(n-k+1)/k!, valid for negative n."""
    if k < 0:
        return 0
    return prod(range(n - k + 1, n + 1)) // factorial(k)


# --- Hilbert series -----------------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeriesNumerator:
    """N(z) with HS(z) = N(z) / (1-z)^nvars; coefficients[i] is the coefficient of z^i."""

    coefficients: tuple[int, ...]
    nvars: int

    @classmethod
    def _from_dup(cls, f: list, nvars: int) -> "HilbertSeriesNumerator":
        return cls(coefficients=tuple(int(c) for c in reversed(f)), nvars=nvars)

    def _dup(self) -> list:
        return [ZZ(c) for c in reversed(self.coefficients)]

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def reduced(self) -> tuple[tuple[int, ...], int]:
        """Cancel (1-z) factors: returns (N', D) with HS = N'(z)/(1-z)^D and N'(1) != 0."""
        f = self._dup()
        if not f:
            return (), self.nvars
        dim = self.nvars
        while dim > 0 and dup_eval(f, ZZ(1), ZZ) == 0:
            f = dup_quo(f, _ONE_MINUS_Z, ZZ)
            dim -= 1
        return tuple(int(c) for c in reversed(f)), dim

    def to_text(self) -> str:
        terms = []
        for power, coeff in enumerate(self.coefficients):
            if not coeff:
                continue
            mono = "" if power == 0 else ("z" if power == 1 else f"z^{power}")
            mag = abs(coeff)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            terms.append(("-" if coeff < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return text + "".join(f" {sign} {body}" for sign, body in terms[1:])


def _minimalize(monos) -> tuple[Monomial, ...]:
    return MonomialIdealGens.minimalize(len(monos[0]) if monos else 0, monos).generators


def _pure_power(mono: Monomial) -> bool:
    return sum(1 for e in mono if e) <= 1


def hilbert_series(
    mi: MonomialIdealGens, r: int, limits: Limits = Limits()
) -> HilbertSeriesNumerator:
    """Numerator of the Hilbert series of S/mi by pivot splitting.

    N(I) = N(I + (p)) + z^deg(p) N(I : p) with p = x_i^k. x_i is the variable occurring
    in the most generators (ties to the lowest index) among those that divide some
    generator which is not a pure power; k is its smallest positive exponent in such
    a generator. When every generator is a pure power the numerator is a product.
    """
    nvars = r + 1
    if mi.nvars != nvars:
        raise PreconditionError(f"monomial ideal has {mi.nvars} variables, expected {nvars}")
    nodes = 0
    cache: dict[tuple[Monomial, ...], list] = {}

    def numerator(gens: tuple[Monomial, ...]) -> list:
        nonlocal nodes
        if gens in cache:
            return cache[gens]
        nodes += 1
        if nodes > limits.max_series_nodes:
            raise ResourceLimitExceeded("max_series_nodes", limits.max_series_nodes)
        if not gens:
            result = [ZZ(1)]
        elif any(not any(g) for g in gens):
            result = []
        else:
            mixed = [g for g in gens if not _pure_power(g)]
            if not mixed:
                result = [ZZ(1)]
                for g in gens:
                    result = dup_mul(result, _one_minus_z_power(sum(g)), ZZ)
            else:
                # only variables of mixed generators, so that p is never already in I
                counts = [
                    sum(1 for g in gens if g[i]) if any(g[i] for g in mixed) else -1
                    for i in range(nvars)
                ]
                pivot = counts.index(max(counts))
                k = min(g[pivot] for g in mixed if g[pivot])
                p = tuple(k if i == pivot else 0 for i in range(nvars))
                left = _minimalize(list(gens) + [p])
                right = _minimalize(
                    [g[:pivot] + (max(g[pivot] - k, 0),) + g[pivot + 1 :] for g in gens]
                )
                result = dup_add(
                    numerator(left), dup_lshift(numerator(right), k, ZZ), ZZ
                )
        cache[gens] = result
        return result

    f = numerator(tuple(mi.generators))
    logger.debug("hilbert series: %d recursion nodes", nodes)
    return HilbertSeriesNumerator._from_dup(f, nvars)


def _one_minus_z_power(e: int) -> list:
    return dup_add([ZZ(1)], [ZZ(-1)] + [ZZ(0)] * e, ZZ) if e else []


def hilbert_function(mi: MonomialIdealGens, r: int, t: int) -> int:
    """Number of standard monomials of degree t (brute force)."""
    if t < 0:
        return 0
    count = 0
    for combo in combinations_with_replacement(range(r + 1), t):
        exps = [0] * (r + 1)
        for i in combo:
            exps[i] += 1
        if not mi.contains(tuple(exps)):
            count += 1
    return count


# --- Hilbert polynomials ------------------------------------------------------------


@dataclass(frozen=True)
class HilbertPolynomial:
    """P(t) = sum_k coefficients[k] * binom(t+k, k); trailing zero coefficients trimmed."""

    coefficients: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def from_function(cls, f: Callable[[int], int], degree: int) -> "HilbertPolynomial":
        """Binomial-basis coefficients of a polynomial of degree <= `degree` given by values."""
        if degree < 0:
            return cls(())
        values = [f(-1 - i) for i in range(degree + 1)]
        coeffs = []
        for k in range(degree + 1):
            c = sum((-1) ** i * comb(k, i) * values[i] for i in range(k + 1))
            if Fraction(c).denominator != 1:
                raise PreconditionError("polynomial is not integer-valued")
            coeffs.append(int(c))
        return cls(tuple(coeffs))

    @classmethod
    def ambient(cls, r: int) -> "HilbertPolynomial":
        """binom(t+r, r), the Hilbert polynomial of P^r."""
        return cls(tuple([0] * r + [1]))

    @classmethod
    def constant(cls, c: int) -> "HilbertPolynomial":
        return cls((c,))

    @classmethod
    def from_sympy(cls, expr) -> "HilbertPolynomial":
        expr = sympy.sympify(expr)
        extra = expr.free_symbols - {T}
        if extra:
            raise PreconditionError(f"Hilbert polynomial may only use t, found {sorted(map(str, extra))}")
        poly = sympy.Poly(expr, T)
        if not all(c.is_Rational for c in poly.all_coeffs()):
            raise PreconditionError("Hilbert polynomial coefficients must be rational")
        values = lambda k: Fraction(str(poly.eval(k)))  # noqa: E731
        return cls.from_function(values, poly.degree() if not poly.is_zero else -1)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def top_coefficient(self) -> int:
        """Top binomial coefficient = leading dense coefficient times degree!."""
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.top_coefficient, factorial(self.degree))

    def evaluate(self, t: int) -> int:
        return sum(c * binomial(t + k, k) for k, c in enumerate(self.coefficients))

    __call__ = evaluate

    def shift(self, m: int) -> "HilbertPolynomial":
        """t -> P(t - m)."""
        return HilbertPolynomial.from_function(lambda t: self.evaluate(t - m), self.degree)

    def _combine(self, other: "HilbertPolynomial", sign: int) -> "HilbertPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (size - len(self.coefficients))
        b = other.coefficients + (0,) * (size - len(other.coefficients))
        return HilbertPolynomial(tuple(x + sign * y for x, y in zip(a, b)))

    def __add__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self._combine(other, 1)

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self._combine(other, -1)

    def __neg__(self) -> "HilbertPolynomial":
        return HilbertPolynomial(tuple(-c for c in self.coefficients))

    def to_sympy(self):
        return sympy.expand(
            sum(
                (c * sympy.prod([T + j for j in range(1, k + 1)]) / sympy.factorial(k)
                 for k, c in enumerate(self.coefficients)),
                sympy.Integer(0),
            )
        )

    def dense_coefficients(self) -> list[Fraction]:
        """Coefficients of t^0, t^1, ... as exact rationals."""
        if self.is_zero:
            return []
        coeffs = sympy.Poly(self.to_sympy(), T).all_coeffs()[::-1]
        return [Fraction(int(c.p), int(c.q)) for c in coeffs]

    def dense_text(self) -> str:
        return _format_dense(self.dense_coefficients())

    def to_text(self) -> str:
        """Compact display: a power of a linear form when it is one, e.g. "(t+1)^2"."""
        if self.is_zero:
            return "0"
        factored = sympy.factor(self.to_sympy())
        if factored.is_Pow and factored.exp.is_Integer and factored.base != T:
            base = sympy.Poly(factored.base, T).all_coeffs()[::-1]
            return f"({_format_dense([Fraction(int(c.p), int(c.q)) for c in base])})^{factored.exp}"
        return self.dense_text()

    def binomial_text(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            body = "1" if k == 0 else f"binom(t+{k},{k})"
            mag = abs(c)
            if k and mag == 1:
                text = body
            elif k:
                text = f"{mag}*{body}"
            else:
                text = str(mag)
            terms.append(("-" if c < 0 else "+", text))
        if not terms:
            return "0"
        out = ("-" if terms[-1][0] == "-" else "") + terms[-1][1]
        return out + "".join(f" {s} {b}" for s, b in reversed(terms[:-1]))

    def __str__(self) -> str:
        return self.to_text()


def _format_dense(coeffs: Sequence[Fraction]) -> str:
    pieces = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if not c:
            continue
        mag = abs(c)
        var = "" if power == 0 else ("t" if power == 1 else f"t^{power}")
        if not var:
            body = str(mag)
        elif mag == 1:
            body = var
        elif mag.denominator == 1:
            body = f"{mag}{var}"
        else:
            body = f"({mag}){var}"
        pieces.append(("-" if c < 0 else "+", body))
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    return text + "".join(f"{sign}{body}" for sign, body in pieces[1:])


_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_hilbert_polynomial(text: str) -> HilbertPolynomial:
    """Parse dense text in t such as "2t+1", "t^2" or "(t+1)^2"."""
    if not text or not text.strip():
        raise ParseError("empty Hilbert polynomial", 0)
    try:
        expr = parse_expr(text, local_dict={"t": T}, transformations=_TRANSFORMS)
    except Exception as exc:
        raise ParseError(f"cannot parse Hilbert polynomial {text!r}: {exc}") from None
    if not expr.is_polynomial(T):
        raise PreconditionError(f"{text!r} is not a polynomial in t")
    return HilbertPolynomial.from_sympy(expr)


def hilbert_polynomial(num: HilbertSeriesNumerator, r: int) -> HilbertPolynomial:
    """P(t) = sum_j N'_j binom(t - j + D - 1, D - 1) after cancelling (1-z) factors."""
    if num.nvars != r + 1:
        raise PreconditionError(f"numerator is for {num.nvars} variables, expected {r + 1}")
    reduced, dim = num.reduced()
    if not reduced or dim <= 0:
        return HilbertPolynomial(())
    return HilbertPolynomial.from_function(
        lambda t: sum(n * binomial(t - j + dim - 1, dim - 1) for j, n in enumerate(reduced)),
        dim - 1,
    )


def ideal_to_subscheme_hp(hp_ideal: HilbertPolynomial, r: int) -> HilbertPolynomial:
    """binom(t+r, r) - HP(I): the quotient's polynomial from the ideal's."""
    return HilbertPolynomial.ambient(r) - hp_ideal


def subscheme_to_ideal_hp(hp: HilbertPolynomial, r: int) -> HilbertPolynomial:
    return HilbertPolynomial.ambient(r) - hp


def divisor_hp(P: HilbertPolynomial, m: int) -> HilbertPolynomial:
    """Q(t) = P(t) - P(t-m), the Hilbert polynomial of the divisor mH."""
    if m < 1:
        raise PreconditionError(f"divisor multiple m must be >= 1, got {m}")
    return P - P.shift(m)


# --- invariants ---------------------------------------------------------------------


@dataclass(frozen=True)
class VarietyInvariants:
    r: int
    d: int
    dimX: int
    codim: int
    degX: int
    hp: HilbertPolynomial
    numerator: HilbertSeriesNumerator
    linear_forms: int = 0
    order: MonomialOrder = MonomialOrder.GREVLEX

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "dimX": self.dimX,
            "codim": self.codim,
            "degX": self.degX,
            "hp": self.hp.to_text(),
            "hp_dense": self.hp.dense_text(),
            "hp_binomial": self.hp.binomial_text(),
            "hp_binomial_coefficients": list(self.hp.coefficients),
            "hilbert_series_numerator": self.numerator.to_text(),
            "linear_forms": self.linear_forms,
            "order": self.order.value,
        }


def _hp_from_basis(gb: GroebnerBasis, r: int, limits: Limits) -> tuple[HilbertPolynomial, HilbertSeriesNumerator]:
    num = hilbert_series(lead_term_ideal(gb), r, limits)
    return hilbert_polynomial(num, r), num


def hilbert_polynomial_of(
    ideal: IdealLike,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    limits: Limits = Limits(),
) -> HilbertPolynomial:
    """Hilbert polynomial of S/I for any list of homogeneous generators; 0 when I is not proper."""
    gb = buchberger(ideal, order, limits)
    if gb.is_unit:
        return HilbertPolynomial(())
    return _hp_from_basis(gb, gb.nvars - 1, limits)[0]


def invariants(
    ideal: IdealPresentation,
    order: MonomialOrder = MonomialOrder.GREVLEX,
    limits: Limits = Limits(),
    gb: Optional[GroebnerBasis] = None,
) -> VarietyInvariants:
    order = MonomialOrder.parse(order)
    gb = gb or buchberger(ideal, order, limits)
    if gb.is_unit:
        raise ImproperIdealError("the ideal contains 1 and defines the empty scheme")
    hp, num = _hp_from_basis(gb, ideal.r, limits)
    if hp.is_zero:
        raise ImproperIdealError("the ideal is irrelevant: its projective scheme is empty")
    dim = hp.degree
    return VarietyInvariants(
        r=ideal.r,
        d=ideal.d,
        dimX=dim,
        codim=ideal.r - dim,
        degX=hp.top_coefficient,
        hp=hp,
        numerator=num,
        linear_forms=sum(1 for g in gb.elements if g.degree == 1),
        order=order,
    )
