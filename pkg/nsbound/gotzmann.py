"""Gotzmann decompositions, Gotzmann numbers and Hoa's closed-form bound.

All functions here take the Hilbert polynomial of the subscheme (the quotient),
never the ideal's; convert with `hilbert.ideal_to_subscheme_hp` first.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from nsbound.config import DEFAULT_SETTINGS, Limits, Settings
from nsbound.errors import NotAdmissibleError, PreconditionError, ResourceLimitExceeded
from nsbound.hilbert import HilbertPolynomial, binomial
from nsbound.tower import TowerNumber

logger = logging.getLogger(__name__)

EXPANDED_LIMIT = 1000


@dataclass(frozen=True)
class GotzmannDecomposition:
    """a_1 >= ... >= a_s >= 0, stored as runs of (a, count) in decreasing a."""

    runs: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return sum(count for _, count in self.runs)

    @property
    def sequence(self) -> list[int]:
        if self.length > EXPANDED_LIMIT:
            raise PreconditionError(
                f"decomposition has {self.length} terms; use `runs` instead of `sequence`"
            )
        return [a for a, count in self.runs for _ in range(count)]

    @classmethod
    def from_sequence(cls, seq: list[int]) -> "GotzmannDecomposition":
        if any(x < 0 for x in seq):
            raise PreconditionError("decomposition entries must be >= 0")
        if any(x < y for x, y in zip(seq, seq[1:])):
            raise PreconditionError("decomposition must be non-increasing")
        runs: list[list[int]] = []
        for a in seq:
            if runs and runs[-1][0] == a:
                runs[-1][1] += 1
            else:
                runs.append([a, 1])
        return cls(tuple((a, c) for a, c in runs))

    def to_dict(self) -> dict:
        data = {"phi": self.length, "runs": [list(run) for run in self.runs]}
        if self.length <= EXPANDED_LIMIT:
            data["decomposition"] = self.sequence
        return data


def _run_sum(a: int, start: int, count: int, t: int) -> int:
    """sum_{j=start}^{start+count-1} binom(t - j + a, a), telescoped."""
    return binomial(t - start + a + 1, a + 1) - binomial(t - start - count + a + 1, a + 1)


def reconstruct(decomp: GotzmannDecomposition) -> HilbertPolynomial:
    """sum_i binom(t + a_i - i + 1, a_i), in the binomial basis."""
    if not decomp.runs:
        return HilbertPolynomial(())

    def value(t: int) -> int:
        total, start = 0, 0
        for a, count in decomp.runs:
            total += _run_sum(a, start, count, t)
            start += count
        return total

    return HilbertPolynomial.from_function(value, decomp.runs[0][0])


def gotzmann_decomposition(
    Q: HilbertPolynomial, limits: Limits = Limits()
) -> GotzmannDecomposition:
    """Greedy Macaulay expansion of the subscheme Hilbert polynomial Q.

    While the remainder has degree a, each greedy step lowers its top binomial
    coefficient by exactly one, so the steps at degree a are taken as one run whose
    length is that coefficient. A negative coefficient means Q is not admissible.
    """
    if Q.is_zero:
        raise PreconditionError("the zero polynomial has no Gotzmann decomposition")
    remainder = Q
    runs: list[tuple[int, int]] = []
    trace: list[dict] = []
    steps = 0
    while not remainder.is_zero:
        a = remainder.degree
        count = remainder.top_coefficient
        trace.append({"degree": a, "steps": count, "remainder": remainder.dense_text()})
        if count < 0:
            raise NotAdmissibleError(
                f"{Q.dense_text()} is not an admissible Hilbert polynomial: "
                f"after {steps} greedy steps the remainder {remainder.dense_text()} "
                f"has negative leading coefficient",
                trace,
            )
        if steps + count > limits.max_gotzmann_length:
            raise ResourceLimitExceeded("max_gotzmann_length", limits.max_gotzmann_length)
        start = steps
        current = remainder
        remainder = HilbertPolynomial.from_function(
            lambda t: current.evaluate(t) - _run_sum(a, start, count, t), a
        )
        if remainder.degree >= a:
            raise NotAdmissibleError(
                f"greedy step did not lower the degree of {current.dense_text()}", trace
            )
        runs.append((a, count))
        steps += count
        logger.debug("gotzmann: %d steps at degree %d, remainder %s", count, a, remainder)
    return GotzmannDecomposition(tuple(runs))


def gotzmann_number(Q: HilbertPolynomial, limits: Limits = Limits()) -> int:
    return gotzmann_decomposition(Q, limits).length


@dataclass(frozen=True)
class HoaBoundInput:
    D: int
    r: int
    a: int

    def __post_init__(self):
        if self.D < 2:
            raise PreconditionError(f"Hoa's bound needs generator degree D >= 2, got {self.D}")
        if not 0 <= self.a <= self.r + 1:
            raise PreconditionError(
                f"Krull dimension a must satisfy 0 <= a <= r+1, got a={self.a}, r={self.r}"
            )

    @property
    def base(self) -> Fraction:
        return Fraction(3, 2) * self.D ** (self.r + 1 - self.a) + self.D

    @property
    def exponent(self) -> int:
        return self.a * 2 ** (self.a - 1) if self.a else 0


def hoa_bound(inp: HoaBoundInput, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """(3/2 D^(r+1-a) + D)^(a 2^(a-1)), an upper bound for the Gotzmann number."""
    return TowerNumber.power(inp.base, inp.exponent, settings)
