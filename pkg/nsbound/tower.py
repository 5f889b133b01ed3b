"""TowerNumber: exact values, certified log2 upper bounds, and 2^(b^e) towers.

A TowerNumber stands for a (usually astronomically large) upper bound. The stored
form never underestimates it: exact values are exact, log2 values keep an
outward-rounded interval around log2 of the bound, towers keep one around the
inner exponent e. Comparisons are decided on those intervals and answer
"incomparable" rather than guess.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Literal, Optional, Union

import mpmath
from mpmath.libmp import numeral

from nsbound.config import DEFAULT_SETTINGS, Settings
from nsbound.directed import Interval, decimal_down, decimal_up
from nsbound.errors import PreconditionError

Exact = Union[int, Fraction]
Ordering = Literal["less", "equal", "greater", "incomparable"]

_CHUNK = 4000


class TowerKind(str, Enum):
    EXACT = "exact"
    LOG2 = "log2"
    TOWER = "tower"


def _bits(value: Fraction) -> int:
    return max(abs(value.numerator).bit_length(), value.denominator.bit_length())


@dataclass(frozen=True)
class TowerNumber:
    kind: TowerKind
    exact: Optional[Fraction] = None
    log2_bounds: Optional[Interval] = None
    inner_base: Optional[int] = None
    inner_exp: Optional[Interval] = None

    # --- constructors -------------------------------------------------------------

    @classmethod
    def of(cls, value: Exact, settings: Settings = DEFAULT_SETTINGS) -> "TowerNumber":
        value = Fraction(value)
        if value > 0 and _bits(value) > settings.exact_bits:
            return cls.from_log2(_log2_of_exact(value, settings.precision))
        return cls(TowerKind.EXACT, exact=value)

    @classmethod
    def from_log2(cls, bounds: Interval) -> "TowerNumber":
        return cls(TowerKind.LOG2, log2_bounds=bounds)

    @classmethod
    def tower(cls, inner_base: int, inner_exp: Interval) -> "TowerNumber":
        """The value 2^(inner_base^inner_exp)."""
        if inner_base < 2:
            raise PreconditionError(f"tower inner base must be >= 2, got {inner_base}")
        return cls(TowerKind.TOWER, inner_base=inner_base, inner_exp=inner_exp)

    @classmethod
    def power(
        cls, base: Exact, exponent: int, settings: Settings = DEFAULT_SETTINGS
    ) -> "TowerNumber":
        """base^exponent, exact while it fits in `settings.exact_bits`."""
        base = Fraction(base)
        if exponent < 0:
            raise PreconditionError("negative exponents are not supported")
        if base < 0:
            raise PreconditionError("negative bases are not supported")
        if exponent == 0 or base == 1:
            return cls(TowerKind.EXACT, exact=Fraction(1))
        if base == 0:
            return cls(TowerKind.EXACT, exact=Fraction(0))
        if exponent * _bits(base) <= settings.exact_bits:
            return cls(TowerKind.EXACT, exact=base**exponent)
        return cls.from_log2(_log2_of_exact(base, settings.precision) * exponent)

    # --- views --------------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.kind is TowerKind.EXACT

    @property
    def exact_int(self) -> int:
        if not self.is_exact or self.exact.denominator != 1:
            raise PreconditionError(f"{self.human()} is not an exact integer")
        return self.exact.numerator

    def log2_interval(self, precision: int = 128) -> Interval:
        """Interval containing log2 of the value."""
        if self.kind is TowerKind.EXACT:
            if self.exact <= 0:
                raise PreconditionError("log2 of a non-positive value")
            return _log2_of_exact(self.exact, precision)
        if self.kind is TowerKind.LOG2:
            return self.log2_bounds
        log2_base = Interval.point(self.inner_base, self.inner_exp.prec).log2()
        return (self.inner_exp * log2_base).exp2()

    def loglog2_interval(self, precision: int = 128) -> Interval:
        """Interval containing log2(log2(value)); requires value > 2."""
        if self.kind is TowerKind.TOWER:
            return self.inner_exp * Interval.point(self.inner_base, self.inner_exp.prec).log2()
        return self.log2_interval(precision).log2()

    # --- arithmetic ---------------------------------------------------------------

    def multiply(
        self, other: Union["TowerNumber", Exact], settings: Settings = DEFAULT_SETTINGS
    ) -> "TowerNumber":
        """Product that stays exact while it fits in `settings.exact_bits`."""
        if not isinstance(other, TowerNumber):
            other = TowerNumber(TowerKind.EXACT, exact=Fraction(other))
        if self.is_exact and other.is_exact:
            return TowerNumber.of(self.exact * other.exact, settings)
        for value in (self, other):
            if value.is_exact and value.exact == 0:
                return value
        precision = settings.precision
        return TowerNumber.from_log2(
            self.log2_interval(precision) + other.log2_interval(precision)
        )

    def __mul__(self, other: Union["TowerNumber", Exact]) -> "TowerNumber":
        return self.multiply(other)

    __rmul__ = __mul__

    # --- comparison ---------------------------------------------------------------

    def compare(self, other: "TowerNumber") -> Ordering:
        if self.is_exact and other.is_exact:
            if self.exact < other.exact:
                return "less"
            return "greater" if self.exact > other.exact else "equal"
        for value, sign in ((self, "less"), (other, "greater")):
            if value.is_exact and value.exact <= 0:
                return sign
        if (
            self.kind is TowerKind.TOWER
            and other.kind is TowerKind.TOWER
            and self.inner_base == other.inner_base
        ):
            left, right = self.inner_exp, other.inner_exp
        elif self.kind is TowerKind.TOWER or other.kind is TowerKind.TOWER:
            left, right = self._loglog_or_log(), other._loglog_or_log()
            if left is None or right is None:
                left, right = self.log2_interval(), other.log2_interval()
        else:
            left, right = self.log2_interval(), other.log2_interval()
        if left.lt(right):
            return "less"
        if right.lt(left):
            return "greater"
        if left.is_point and right.is_point and left == right:
            return "equal"
        return "incomparable"

    def _loglog_or_log(self) -> Optional[Interval]:
        if self.kind is TowerKind.TOWER:
            return self.loglog2_interval()
        bounds = self.log2_interval()
        if bounds.le(1) is not False:
            return None
        return bounds.log2()

    def le(self, other: "TowerNumber") -> Optional[bool]:
        """True/False when decided, None when incomparable at this precision."""
        outcome = self.compare(other)
        if outcome == "incomparable":
            return None
        return outcome != "greater"

    # --- serialization ------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        if self.kind is TowerKind.EXACT:
            return {"kind": "exact", "decimal": fraction_text(self.exact)}
        if self.kind is TowerKind.LOG2:
            bounds = self.log2_bounds
            return {
                "kind": "log2",
                "value": decimal_up(bounds.hi),
                "rounding": "up",
                "lower": decimal_down(bounds.lo),
                "dyadic": {"lo": bounds.lo_dyadic(), "hi": bounds.hi_dyadic()},
                "precision": bounds.prec,
            }
        bounds = self.inner_exp
        return {
            "kind": "tower",
            "base": 2,
            "inner_base": self.inner_base,
            "inner_exp": decimal_up(bounds.hi),
            "rounding": "up",
            "lower": decimal_down(bounds.lo),
            "dyadic": {"lo": bounds.lo_dyadic(), "hi": bounds.hi_dyadic()},
            "precision": bounds.prec,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "TowerNumber":
        kind = TowerKind(data["kind"])
        if kind is TowerKind.EXACT:
            return cls(TowerKind.EXACT, exact=parse_fraction(data["decimal"]))
        bounds = Interval.from_dyadic(
            tuple(data["dyadic"]["lo"]), tuple(data["dyadic"]["hi"]), data["precision"]
        )
        if kind is TowerKind.LOG2:
            return cls.from_log2(bounds)
        if data.get("base", 2) != 2:
            raise PreconditionError("only towers with outer base 2 are supported")
        return cls.tower(data["inner_base"], bounds)

    # --- display ------------------------------------------------------------------

    def human(self, exact_digits: bool = False, max_digits: int = 30) -> str:
        """Readable form, e.g. "2^(2^216) ≈ 10^(3.2·10^64)"."""
        if self.kind is TowerKind.EXACT:
            text = fraction_text(self.exact)
            if exact_digits or len(text) <= max_digits:
                return text
            with mpmath.workdps(20):
                log10 = mpmath.log10(mpmath.mpf(self.exact.numerator)) - mpmath.log10(
                    self.exact.denominator
                )
            digits = len(text.partition("/")[0].lstrip("-"))
            return f"≈ {_power_of_ten(log10)} ({digits} digits)"
        if self.kind is TowerKind.LOG2:
            hi = self.log2_bounds.hi
            with mpmath.workdps(20):
                log10 = mpmath.mpf(hi) * mpmath.log10(2)
            return f"2^{_short(hi)} ≈ {_power_of_ten(log10)} (rounded up)"
        hi = self.inner_exp.hi
        with mpmath.workdps(20):
            log10 = mpmath.mpf(self.inner_base) ** mpmath.mpf(hi) * mpmath.log10(2)
        return f"2^({self.inner_base}^{_short(hi)}) ≈ {_power_of_ten(log10)} (rounded up)"

    def __str__(self) -> str:
        return self.human()


def _log2_of_exact(value: Fraction, precision: int) -> Interval:
    num = Interval.point(value.numerator, precision).log2()
    if value.denominator == 1:
        return num
    return num - Interval.point(value.denominator, precision).log2()


def _int_text(n: int) -> str:
    # numeral splits recursively, so it is not subject to the int->str digit limit
    return numeral(n, 10, n.bit_length() * 3 // 10 + 1)


def _int_parse(text: str) -> int:
    text = text.strip()
    sign, digits = (-1, text[1:]) if text.startswith("-") else (1, text)
    if not digits.isdigit():
        raise PreconditionError(f"not a decimal integer: {text[:40]!r}")
    value = 0
    for start in range(0, len(digits), _CHUNK):
        chunk = digits[start : start + _CHUNK]
        value = value * 10 ** len(chunk) + int(chunk)
    return sign * value


def fraction_text(value: Fraction) -> str:
    """"p" or "p/q", for exact values of any size."""
    if value.denominator == 1:
        return _int_text(value.numerator)
    return f"{_int_text(value.numerator)}/{_int_text(value.denominator)}"


def parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(_int_parse(num), _int_parse(den) if den else 1)


def _short(x) -> str:
    return decimal_up(x, 6)


def _power_of_ten(log10) -> str:
    if log10 < 10**6:
        return f"10^{mpmath.nstr(log10, 6)}"
    exponent = int(mpmath.floor(mpmath.log10(log10)))
    mantissa = log10 / mpmath.mpf(10) ** exponent
    return f"10^({mpmath.nstr(mantissa, 2)}·10^{exponent})"
