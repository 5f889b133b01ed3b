"""Exact multivariate polynomials over Q in x0..xr, monomial orders, and the generator parser.

Polynomials are immutable: a dense exponent tuple per monomial mapped to a nonzero
`Fraction`. Orders come from `sympy.polys.orderings`, whose variable precedence is
x0 > x1 > ... > xr when exponent tuples are indexed by variable number.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Mapping, Optional, Sequence, Union

from sympy.polys.monomials import monomial_divides, monomial_mul
from sympy.polys.orderings import grevlex, lex

from nsbound.errors import ParseError, PreconditionError, UnknownVariable

Monomial = tuple[int, ...]
Coefficient = Union[int, Fraction]
Comparison = Literal["less", "equal", "greater"]


class MonomialOrder(str, Enum):
    GREVLEX = "grevlex"
    LEX = "lex"

    @property
    def key(self):
        """Sort key: larger key means larger monomial."""
        return grevlex if self is MonomialOrder.GREVLEX else lex

    @classmethod
    def parse(cls, value: Union[str, "MonomialOrder"]) -> "MonomialOrder":
        try:
            return cls(value)
        except ValueError:
            raise PreconditionError(
                f"unknown monomial order {value!r}; use one of {[o.value for o in cls]}"
            ) from None


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> Comparison:
    if len(m1) != len(m2):
        raise PreconditionError(f"monomial length mismatch: {len(m1)} vs {len(m2)}")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return "less"
    if k1 > k2:
        return "greater"
    return "equal"


def divides(m1: Monomial, m2: Monomial) -> bool:
    """True when m1 divides m2."""
    return monomial_divides(m1, m2)


class Polynomial:
    """Immutable polynomial in `nvars` variables with exact rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise PreconditionError(f"monomial {mono} has {len(mono)} exponents, expected {nvars}")
            if any(e < 0 for e in mono):
                raise PreconditionError(f"negative exponent in {mono}")
            c = Fraction(coeff)
            if c:
                clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _trusted(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "Polynomial":
        # terms already canonical: no zero coefficients, tuples of the right length
        poly = cls.__new__(cls)
        object.__setattr__(poly, "nvars", nvars)
        object.__setattr__(poly, "_terms", terms)
        object.__setattr__(poly, "_hash", None)
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._trusted(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Coefficient) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        exps = [0] * nvars
        exps[index] = 1
        return cls._trusted(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Coefficient = 1) -> "Polynomial":
        return cls(len(mono), {tuple(mono): coeff})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return list(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def _check_ring(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise PreconditionError(
                f"polynomials live in different rings ({self.nvars} vs {other.nvars} variables)"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return Polynomial._trusted(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, factor: Coefficient, mono: Optional[Monomial] = None) -> "Polynomial":
        """Return factor * x^mono * self."""
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self.nvars)
        if mono is None:
            return Polynomial._trusted(self.nvars, {m: c * factor for m, c in self._terms.items()})
        return Polynomial._trusted(
            self.nvars, {monomial_mul(m, mono): c * factor for m, c in self._terms.items()}
        )

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = monomial_mul(m1, m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Polynomial._trusted(self.nvars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise PreconditionError("negative powers are not polynomials")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self._terms.items()))))
        return self._hash

    def sorted_terms(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> list[tuple[Monomial, Fraction]]:
        """Terms from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lead_monomial(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> Monomial:
        if not self._terms:
            raise PreconditionError("the zero polynomial has no lead monomial")
        return max(self._terms, key=order.key)

    def lead_coefficient(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> Fraction:
        return self._terms[self.lead_monomial(order)]

    def monic(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> "Polynomial":
        return self.scale(1 / self.lead_coefficient(order))

    def derivative(self, index: int) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            e = mono[index]
            if e:
                lowered = mono[:index] + (e - 1,) + mono[index + 1 :]
                terms[lowered] = c * e
        return Polynomial._trusted(self.nvars, terms)

    def to_text(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms(order):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e
            ]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_text()!r})"


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


@dataclass(frozen=True)
class IdealPresentation:
    """Homogeneous generators of an ideal of k[x0..xr]."""

    r: int
    generators: tuple[Polynomial, ...]
    d: int

    @classmethod
    def from_generators(cls, r: int, generators: Iterable[Polynomial]) -> "IdealPresentation":
        if r < 1:
            raise PreconditionError(f"ambient dimension r must be >= 1, got {r}")
        gens = tuple(generators)
        if not gens:
            raise PreconditionError("an ideal needs at least one generator")
        for i, g in enumerate(gens):
            if g.nvars != r + 1:
                raise PreconditionError(f"generator {i} has {g.nvars} variables, expected {r + 1}")
            if g.is_zero:
                raise PreconditionError(f"generator {i} is zero")
            if not g.is_homogeneous:
                raise PreconditionError(f"generator {i} is not homogeneous: {g}")
        d = max(g.degree for g in gens)
        if d < 1:
            raise PreconditionError("generators must have positive degree")
        return cls(r=r, generators=gens, d=d)

    @classmethod
    def parse(cls, r: int, lines: Sequence[str]) -> "IdealPresentation":
        return cls.from_generators(r, [parse_polynomial(text, r) for text in lines])

    @property
    def nvars(self) -> int:
        return self.r + 1


# --- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([-+*/^])|(\S))")


class _Parser:
    """Recursive descent over: poly := [sign] term (sign term)*;
    term := coeff [['*'] powers] | powers; powers := power (['*'] power)*;
    power := 'x'N ['^' N]; coeff := N ['/' N].
    """

    def __init__(self, text: str, r: int):
        self.text = text
        self.nvars = r + 1
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:
                break
            if match.group(4) is not None:
                raise ParseError(f"unexpected character {match.group(4)!r}", match.start(4))
            for kind, group in (("int", 1), ("var", 2), ("op", 3)):
                if match.group(group) is not None:
                    self.tokens.append((kind, match.group(group), match.start(group)))
                    break
            pos = match.end()
        self.index = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.index += 1
        return token

    def expect_int(self, what: str) -> tuple[int, int]:
        kind, value, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected {what}, found {value!r}", pos)
        return int(value), pos

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial", 0)
        terms: dict[Monomial, Fraction] = {}
        sign = 1
        first = True
        while True:
            token = self.peek()
            if token is None:
                break
            if token[0] == "op" and token[1] in "+-":
                self.take()
                sign = -1 if token[1] == "-" else 1
                if self.peek() is None:
                    raise ParseError("dangling sign", token[2])
            elif not first:
                raise ParseError(f"expected '+' or '-', found {token[1]!r}", token[2])
            else:
                sign = 1
            mono, coeff = self.term()
            terms[mono] = terms.get(mono, 0) + sign * coeff
            first = False
        return Polynomial(self.nvars, terms)

    def term(self) -> tuple[Monomial, Fraction]:
        coeff = Fraction(1)
        token = self.peek()
        if token is None:
            raise ParseError("expected a term", len(self.text))
        has_coeff = False
        if token[0] == "int":
            num, _ = self.expect_int("coefficient")
            coeff = Fraction(num)
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("op", "/"):
                self.take()
                den, den_pos = self.expect_int("denominator")
                if den == 0:
                    raise ParseError("zero denominator", den_pos)
                coeff = Fraction(num, den)
            has_coeff = True
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("op", "*"):
                self.take()
                nxt = self.peek()
                if nxt is None or nxt[0] != "var":
                    raise ParseError("expected a variable after '*'", nxt[2] if nxt else len(self.text))
        exps = [0] * self.nvars
        saw_var = False
        while True:
            token = self.peek()
            if token is None or token[0] != "var":
                break
            self.power(exps)
            saw_var = True
            nxt = self.peek()
            if nxt is not None and nxt[:2] == ("op", "*"):
                self.take()
                after = self.peek()
                if after is None or after[0] != "var":
                    raise ParseError(
                        "expected a variable after '*'", after[2] if after else len(self.text)
                    )
        if not (has_coeff or saw_var):
            raise ParseError(f"expected a term, found {token[1]!r}", token[2])
        return tuple(exps), coeff

    def power(self, exps: list[int]):
        _, name, pos = self.take()
        index = int(name[1:])
        if index >= self.nvars:
            raise UnknownVariable(
                f"unknown variable {name}: ambient ring has x0..x{self.nvars - 1}", pos
            )
        exponent = 1
        nxt = self.peek()
        if nxt is not None and nxt[:2] == ("op", "^"):
            self.take()
            exponent, exp_pos = self.expect_int("exponent")
            if exponent < 1:
                raise ParseError("exponent must be a positive integer", exp_pos)
        exps[index] += exponent


def parse_polynomial(text: str, r: int) -> Polynomial:
    """Parse generator text in x0..xr; the zero polynomial parses to an empty term map."""
    if r < 0:
        raise PreconditionError(f"ambient dimension must be >= 0, got {r}")
    return _Parser(text, r).parse()
