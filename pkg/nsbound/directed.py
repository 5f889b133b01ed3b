"""Outward-rounded intervals of binary floats on top of `mpmath.libmp`.

Every operation returns [lo, hi] with lo rounded toward -inf and hi toward +inf,
so the true value of any expression built from these operations lies in the
interval. Transcendental results (log, exp) get one extra ulp of outward
perturbation on top of the directed rounding mpmath already applies.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_add,
    mpf_ceil,
    mpf_div,
    mpf_exp,
    mpf_floor,
    mpf_le,
    mpf_ln2,
    mpf_log,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_perturb,
    mpf_pow_int,
    mpf_sign,
    round_ceiling,
    round_floor,
    ften,
    to_int,
    to_man_exp,
    to_str,
)

from nsbound.errors import PreconditionError

Exact = Union[int, Fraction]
Mpf = tuple

GUARD_BITS = 20


def _is_exact_int(x: Mpf) -> bool:
    sign, man, exp, bc = x
    return exp >= 0 or not man


def _is_power_of_two(x: Mpf) -> bool:
    sign, man, exp, bc = x
    return sign == 0 and man == 1


def _down(x: Mpf, prec: int) -> Mpf:
    return x if x == fzero else mpf_perturb(x, 1, prec, round_floor)


def _up(x: Mpf, prec: int) -> Mpf:
    return x if x == fzero else mpf_perturb(x, 0, prec, round_ceiling)


def _min(a: Mpf, b: Mpf) -> Mpf:
    return a if mpf_le(a, b) else b


def _max(a: Mpf, b: Mpf) -> Mpf:
    return b if mpf_le(a, b) else a


def mpf_to_fraction(x: Mpf) -> Fraction:
    man, exp = _man_exp(x)
    if x[0]:
        man = -man
    return Fraction(man) * 2**exp if exp >= 0 else Fraction(man, 2**-exp)


def log2_floor(x: Mpf, prec: int) -> Mpf:
    if mpf_sign(x) <= 0:
        raise PreconditionError("log2 of a non-positive number")
    if _is_power_of_two(x):
        return from_int(x[2])
    wp = prec + GUARD_BITS
    ln = mpf_log(x, wp, round_floor)
    if mpf_sign(ln) >= 0:
        quotient = mpf_div(ln, mpf_ln2(wp, round_ceiling), prec, round_floor)
    else:
        quotient = mpf_div(ln, mpf_ln2(wp, round_floor), prec, round_floor)
    return _down(quotient, prec)


def log2_ceil(x: Mpf, prec: int) -> Mpf:
    if mpf_sign(x) <= 0:
        raise PreconditionError("log2 of a non-positive number")
    if _is_power_of_two(x):
        return from_int(x[2])
    wp = prec + GUARD_BITS
    ln = mpf_log(x, wp, round_ceiling)
    if mpf_sign(ln) >= 0:
        quotient = mpf_div(ln, mpf_ln2(wp, round_floor), prec, round_ceiling)
    else:
        quotient = mpf_div(ln, mpf_ln2(wp, round_ceiling), prec, round_ceiling)
    return _up(quotient, prec)


def exp2_floor(x: Mpf, prec: int) -> Mpf:
    if _is_exact_int(x):
        return from_man_exp(1, to_int(x))
    wp = prec + GUARD_BITS
    ln2 = mpf_ln2(wp, round_floor if mpf_sign(x) > 0 else round_ceiling)
    return _down(mpf_exp(mpf_mul(x, ln2, wp, round_floor), prec, round_floor), prec)


def exp2_ceil(x: Mpf, prec: int) -> Mpf:
    if _is_exact_int(x):
        return from_man_exp(1, to_int(x))
    wp = prec + GUARD_BITS
    ln2 = mpf_ln2(wp, round_ceiling if mpf_sign(x) > 0 else round_floor)
    return _up(mpf_exp(mpf_mul(x, ln2, wp, round_ceiling), prec, round_ceiling), prec)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of raw mpf values, computed at `prec` bits."""

    lo: Mpf
    hi: Mpf
    prec: int = 128

    @classmethod
    def point(cls, value: Exact, prec: int = 128) -> "Interval":
        if isinstance(value, int):
            exact = from_int(value)
            return cls(exact, exact, prec)
        value = Fraction(value)
        if value.denominator == 1:
            return cls.point(value.numerator, prec)
        lo = from_rational(value.numerator, value.denominator, prec, round_floor)
        hi = from_rational(value.numerator, value.denominator, prec, round_ceiling)
        return cls(lo, hi, prec)

    @classmethod
    def from_dyadic(cls, lo: tuple[int, int], hi: tuple[int, int], prec: int = 128) -> "Interval":
        return cls(from_man_exp(*lo), from_man_exp(*hi), prec)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def _with(self, other: Union["Interval", Exact]) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.point(other, self.prec)

    def __add__(self, other) -> "Interval":
        other = self._with(other)
        prec = max(self.prec, other.prec)
        return Interval(
            mpf_add(self.lo, other.lo, prec, round_floor),
            mpf_add(self.hi, other.hi, prec, round_ceiling),
            prec,
        )

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __sub__(self, other) -> "Interval":
        return self + (-self._with(other))

    def __mul__(self, other) -> "Interval":
        other = self._with(other)
        prec = max(self.prec, other.prec)
        corners = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        lows = [mpf_mul(a, b, prec, round_floor) for a, b in corners]
        highs = [mpf_mul(a, b, prec, round_ceiling) for a, b in corners]
        lo, hi = lows[0], highs[0]
        for x in lows[1:]:
            lo = _min(lo, x)
        for x in highs[1:]:
            hi = _max(hi, x)
        return Interval(lo, hi, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        other = self._with(other)
        if mpf_sign(other.lo) <= 0:
            raise PreconditionError("interval division needs a strictly positive divisor")
        prec = max(self.prec, other.prec)
        lo = _min(
            mpf_div(self.lo, other.lo, prec, round_floor),
            mpf_div(self.lo, other.hi, prec, round_floor),
        )
        hi = _max(
            mpf_div(self.hi, other.lo, prec, round_ceiling),
            mpf_div(self.hi, other.hi, prec, round_ceiling),
        )
        return Interval(lo, hi, prec)

    def log2(self) -> "Interval":
        return Interval(log2_floor(self.lo, self.prec), log2_ceil(self.hi, self.prec), self.prec)

    def exp2(self) -> "Interval":
        return Interval(exp2_floor(self.lo, self.prec), exp2_ceil(self.hi, self.prec), self.prec)

    def le(self, other) -> Optional[bool]:
        """True if certainly <=, False if certainly >, None if undecided at this precision."""
        other = self._with(other)
        if mpf_le(self.hi, other.lo):
            return True
        if mpf_lt(other.hi, self.lo):
            return False
        return None

    def lt(self, other) -> Optional[bool]:
        other = self._with(other)
        if mpf_lt(self.hi, other.lo):
            return True
        if mpf_le(other.hi, self.lo):
            return False
        return None

    def ceil_int(self) -> int:
        return int(to_int(mpf_ceil(self.hi)))

    def floor_int(self) -> int:
        return int(to_int(mpf_floor(self.lo)))

    def hi_dyadic(self) -> list[int]:
        return _dyadic(self.hi)

    def lo_dyadic(self) -> list[int]:
        return _dyadic(self.lo)

    def approx(self, digits: int = 6) -> str:
        return to_str(self.hi, digits)


def _man_exp(x: Mpf) -> tuple[int, int]:
    # the mantissa is a gmpy2 mpz when mpmath runs on the gmpy backend
    man, exp = to_man_exp(x)
    return int(man), int(exp)


def _dyadic(x: Mpf) -> list[int]:
    man, exp = _man_exp(x)
    return [-man if x[0] else man, exp]


def decimal_up(x: Mpf, digits: int = 30) -> str:
    """Decimal text of x rounded toward +inf."""
    return _decimal(x, digits, round_ceiling)


def decimal_down(x: Mpf, digits: int = 30) -> str:
    """Decimal text of x rounded toward -inf."""
    return _decimal(x, digits, round_floor)


def _decimal(x: Mpf, digits: int, rnd) -> str:
    if x == fzero:
        return "0"
    sign, man, exp, bc = x
    magnitude = exp + bc
    if exp >= 0 and magnitude <= 200:
        return str(mpf_to_fraction(x).numerator)
    if -100 <= magnitude <= 100:
        scaled = mpf_to_fraction(x) * 10**digits
        whole = scaled.__ceil__() if rnd == round_ceiling else scaled.__floor__()
        text = f"{abs(whole) // 10**digits}.{abs(whole) % 10**digits:0{digits}d}".rstrip("0")
        text = text.rstrip(".")
        return f"-{text}" if whole < 0 else text
    # scientific form: mantissa digits scaled by a power of ten
    prec = bc + GUARD_BITS + 4 * digits
    log10 = mpf_div(log2_floor(mpf_neg(x) if sign else x, 64), log2_ceil(ften, 64), 64, round_floor)
    shift = to_int(mpf_floor(log10)) - digits + 1
    if shift >= 0:
        scale = mpf_pow_int(ften, shift, prec, round_floor if rnd == round_ceiling else round_ceiling)
        scaled = mpf_div(x, scale, prec, rnd)
    else:
        scaled = mpf_mul(x, mpf_pow_int(ften, -shift, prec, rnd), prec, rnd)
    rounded = to_int(mpf_ceil(scaled) if rnd == round_ceiling else mpf_floor(scaled))
    return f"{rounded}e{shift}"
