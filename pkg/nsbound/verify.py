"""Numerical verification of the inequality chains behind the torsion bounds.

Integer-valued inequalities are decided exactly. Anything that goes through a
logarithm is decided on outward-rounded intervals with the left side rounded up
and the right side rounded down, so `holds=True` is a certificate. An interval
comparison that cannot be decided at the working precision is reported as not
holding, with a note.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Iterable, Optional, Sequence, Union

from sympy.functions.combinatorial.numbers import partition

from nsbound.bounds import (
    closed_form_t,
    conn_bound_hilb,
    effdiv_bound,
    effdiv_chain_intermediate,
    effdiv_exponent,
    effdiv_torsion_bound,
    hilbert_scheme_bound,
    worst_case_n,
)
from nsbound.config import DEFAULT_SETTINGS, Settings
from nsbound.directed import Interval
from nsbound.errors import PreconditionError
from nsbound.gotzmann import HoaBoundInput, gotzmann_number, hoa_bound
from nsbound.hilbert import invariants
from nsbound.poly_core import IdealPresentation
from nsbound.tower import TowerNumber

logger = logging.getLogger(__name__)

Side = Union[int, Fraction, TowerNumber, Interval]

T_SAMPLES = ((8, 0), (8, 1), (8, 7), (16, 0), (64, 0))


@dataclass(frozen=True)
class GridSpec:
    """Inclusive parameter ranges; t defaults to the samples 8r, 8r+1, 8r+7, 16r, 64r."""

    r_range: tuple[int, int] = (3, 8)
    d_range: tuple[int, int] = (2, 8)
    t_range: Optional[tuple[int, int]] = None
    n_range: tuple[int, int] = (1, 64)
    precision: int = 128

    def __post_init__(self):
        for name in ("r_range", "d_range", "n_range") + (("t_range",) if self.t_range else ()):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise PreconditionError(f"{name} is empty: {lo}..{hi}")
        if self.r_range[0] < 2:
            raise PreconditionError(f"grid needs r >= 2, got r from {self.r_range[0]}")
        if self.d_range[0] < 1 or self.n_range[0] < 1:
            raise PreconditionError("d and n ranges must start at 1 or above")
        if self.precision < 53:
            raise PreconditionError(f"precision must be at least 53 bits, got {self.precision}")

    @property
    def rs(self) -> range:
        return range(self.r_range[0], self.r_range[1] + 1)

    @property
    def ds(self) -> range:
        return range(self.d_range[0], self.d_range[1] + 1)

    @property
    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)

    def t_values(self, r: int) -> list[int]:
        if self.t_range is None:
            return sorted({k * r + c for k, c in T_SAMPLES})
        return [t for t in range(self.t_range[0], self.t_range[1] + 1) if t >= 8 * r]

    def settings(self) -> Settings:
        return DEFAULT_SETTINGS.override(precision=self.precision)


@dataclass(frozen=True)
class VerificationOutcome:
    check: str
    params: dict[str, Any]
    holds: bool
    left: Optional[Side] = None
    right: Optional[Side] = None
    margin_log2: Optional[Interval] = None
    note: Optional[str] = None
    details: tuple[dict[str, Any], ...] = ()

    @property
    def sort_key(self) -> tuple:
        return (self.check, tuple(sorted(self.params.items())))


@dataclass
class VerificationRun:
    grid: GridSpec
    checks: list[str]
    outcomes: list[VerificationOutcome] = field(default_factory=list)

    @property
    def discrepancies(self) -> list[VerificationOutcome]:
        return [o for o in self.outcomes if not o.holds]

    @property
    def all_hold(self) -> bool:
        return not self.discrepancies


def _log2(value: Side, precision: int) -> Interval:
    if isinstance(value, Interval):
        return value.log2()
    if isinstance(value, TowerNumber):
        return value.log2_interval(precision)
    value = Fraction(value)
    num = Interval.point(value.numerator, precision).log2()
    if value.denominator == 1:
        return num
    return num - Interval.point(value.denominator, precision).log2()


def _margin(left: Side, right: Side, precision: int) -> Optional[Interval]:
    """log2(right / left); None when either side is not positive."""
    try:
        return _log2(right, precision) - _log2(left, precision)
    except PreconditionError:
        return None


def _exact_outcome(
    check: str, params: dict, left: Union[int, Fraction], right: Union[int, Fraction],
    strict: bool = False, precision: int = 128,
) -> VerificationOutcome:
    holds = left < right if strict else left <= right
    return VerificationOutcome(
        check, params, holds, left, right, margin_log2=_margin(left, right, precision)
    )


def _interval_outcome(
    check: str, params: dict, left: Interval, right: Interval, details: tuple = ()
) -> VerificationOutcome:
    decided = left.le(right)
    note = None
    if decided is None:
        note = f"undecided at {left.prec} bits; rerun with a higher --precision"
    return VerificationOutcome(
        check, params, decided is True, left, right, margin_log2=right - left,
        note=note, details=details,
    )


# --- Hilbert-scheme chain -----------------------------------------------------------


def check_binom_lt_power(r: int, t: int, precision: int = 128) -> VerificationOutcome:
    """binom(t+1+r, r) < t^r for r >= 2 and t >= 8r."""
    if r < 2 or t < 8 * r:
        raise PreconditionError(f"needs r >= 2 and t >= 8r (r={r}, t={t})")
    return _exact_outcome(
        "binom", {"r": r, "t": t}, comb(t + 1 + r, r), t**r, strict=True, precision=precision
    )


def check_conn_intermediate(r: int, t: int, precision: int = 128) -> VerificationOutcome:
    """binom(t+1+r, r) + 1 <= t^r, the step that relaxes the Grassmannian count."""
    if r < 2 or t < 8 * r:
        raise PreconditionError(f"needs r >= 2 and t >= 8r (r={r}, t={t})")
    return _exact_outcome(
        "conn-intermediate", {"r": r, "t": t}, comb(t + 1 + r, r) + 1, t**r, precision=precision
    )


def check_hoa_dominates_t(
    d: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> VerificationOutcome:
    """Hoa's bound with D = rd stays below t = (2rd)^((r+1) 2^(r-2)) for 1 <= a <= r-1.

    Also checks the exponent form (2rd)^((r+1-a) a 2^(a-1)) <= (2rd)^((r+1) 2^(r-2)).
    The outcome holds only when both comparisons hold for every a.
    """
    if r < 3 or d < 2:
        raise PreconditionError(f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    t = TowerNumber.of(closed_form_t(d, r), settings)
    outer = (r + 1) * 2 ** (r - 2)
    details = []
    worst: Optional[TowerNumber] = None
    for a in range(1, r):
        hoa = hoa_bound(HoaBoundInput(D=r * d, r=r, a=a), settings)
        direct = hoa.le(t)
        exponent_form = (r + 1 - a) * a * 2 ** (a - 1) <= outer
        details.append(
            {
                "a": a,
                "hoa": hoa.to_json(),
                "holds": direct is True,
                "exponent_form_holds": exponent_form,
            }
        )
        if worst is None or hoa.compare(worst) == "greater":
            worst = hoa
    holds = all(item["holds"] and item["exponent_form_holds"] for item in details)
    failing = [item["a"] for item in details if not item["holds"]]
    note = f"fails at a={failing}" if failing else None
    return VerificationOutcome(
        "hoa-t", {"d": d, "r": r}, holds, worst, t,
        margin_log2=_margin(worst, t, settings.precision), note=note, details=tuple(details),
    )


def check_hilbert_chain(
    d: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> VerificationOutcome:
    """log2 log_d log2 t^(r t^(2r)) <= r + 3 log2 r at t = closed_form_t(d, r)."""
    if r < 3 or d < 2:
        raise PreconditionError(f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    prec = settings.precision
    conn = conn_bound_hilb(closed_form_t(d, r), r, settings)
    log_d = conn.log2_interval(prec).log2() / Interval.point(d, prec).log2()
    left = log_d.log2()
    right = Interval.point(r, prec).log2() * 3 + r
    return _interval_outcome("hilbert-chain", {"d": d, "r": r}, left, right)


def check_effdiv_chain(
    d: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> VerificationOutcome:
    """log_d log2 effdiv_bound(n_max, d, r) <= r^2 + 2r log2 r, n_max = (r-2)(d-1)d^(r-2)."""
    if r < 3 or d < 2:
        raise PreconditionError(f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    prec = settings.precision
    n = worst_case_n(d, r)
    value = effdiv_bound(n, d, r, settings)
    left = value.log2_interval(prec).log2() / Interval.point(d, prec).log2()
    return _interval_outcome(
        "effdiv-chain", {"d": d, "r": r, "n": n}, left, effdiv_exponent(r, prec)
    )


def check_effdiv_relaxation(
    d: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> VerificationOutcome:
    """effdiv_bound <= 2^n binom(2n + (r-1)d, r)^(2 binom(n+r, r)) <= 2^(d^(r^2 + 2r log2 r)).

    Evaluated at n = n_max. The first step compares bases and exponents exactly
    (both sides share the factor 2^n), the second is decided on log_d log2 of the
    intermediate value.
    """
    if r < 3 or d < 2:
        raise PreconditionError(f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    prec = settings.precision
    n = worst_case_n(d, r)
    value = effdiv_bound(n, d, r, settings)
    intermediate = effdiv_chain_intermediate(n, d, r, settings)
    log_d = intermediate.log2_interval(prec).log2() / Interval.point(d, prec).log2()
    final = effdiv_exponent(r, prec)
    base, relaxed_base = comb(2 * max(n, d) + (r - 1) * d, r), comb(2 * n + (r - 1) * d, r)
    exponent, relaxed_exponent = 2 * comb(n + r, r) - 2, 2 * comb(n + r, r)
    details = (
        {
            "step": "effdiv_bound <= intermediate",
            "holds": base <= relaxed_base and exponent <= relaxed_exponent,
        },
        {"step": "intermediate <= 2^(d^(r^2+2r log2 r))", "holds": log_d.le(final) is True},
    )
    left, right = value.log2_interval(prec), intermediate.log2_interval(prec)
    return VerificationOutcome(
        "effdiv-relaxation", {"d": d, "r": r, "n": n},
        all(item["holds"] for item in details), left, right,
        margin_log2=right - left, note="sides are log2 of the two bounds", details=details,
    )


def check_effdiv_steps(d: int, r: int, precision: int = 128) -> VerificationOutcome:
    """The two relaxations of the effective-divisor chain at n = n_max.

    binom(2n + (r-1)d, r) <= 2^(r^2 d) and 2 binom(n+r, r) <= (r d^(r-1))^r / 3.
    """
    if r < 3 or d < 2:
        raise PreconditionError(f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    n = worst_case_n(d, r)
    binom_left, binom_right = comb(2 * n + (r - 1) * d, r), 2 ** (r * r * d)
    count_left, count_right = 2 * comb(n + r, r), Fraction((r * d ** (r - 1)) ** r, 3)
    details = (
        {"step": "binom <= 2^(r^2 d)", "holds": binom_left <= binom_right},
        {"step": "2 binom(n+r, r) <= (r d^(r-1))^r / 3", "holds": count_left <= count_right},
    )
    return VerificationOutcome(
        "effdiv-steps", {"d": d, "r": r, "n": n},
        all(item["holds"] for item in details), count_left, count_right,
        margin_log2=_margin(count_left, count_right, precision), details=details,
    )


def check_partition_count(n: int, precision: int = 128) -> VerificationOutcome:
    """p(n) <= 2^n, used to bound the number of ways to split a degree-n divisor."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return _exact_outcome(
        "partitions", {"n": n}, int(partition(n)), 2**n, precision=precision
    )


def check_effdiv_superadditivity(n: int, r: int, precision: int = 128) -> VerificationOutcome:
    """D(n0) + D(n1) <= D(n) for every n0 + n1 = n, with D(x) = 2 binom(x+r, r) - 2."""
    if n < 1 or r < 1:
        raise PreconditionError(f"needs n >= 1 and r >= 1 (n={n}, r={r})")

    def D(x: int) -> int:
        return 2 * comb(x + r, r) - 2

    worst = max((D(n0) + D(n - n0) for n0 in range(1, n)), default=0)
    return _exact_outcome(
        "superadditivity", {"n": n, "r": r}, worst, D(n), precision=precision
    )


# --- cross checks -------------------------------------------------------------------


def default_corpus() -> list[tuple[str, IdealPresentation]]:
    """Small ideals with known invariants: hypersurfaces, a point, a curve, a CI."""
    corpus = []
    for r in range(2, 5):
        for d in range(1, 5):
            corpus.append(
                (f"hypersurface d={d} r={r}", IdealPresentation.parse(r, [f"x0^{d} + x{r}^{d}"]))
            )
    corpus.append(("point in P2", IdealPresentation.parse(2, ["x1", "x2"])))
    corpus.append(
        (
            "twisted cubic",
            IdealPresentation.parse(3, ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
        )
    )
    corpus.append(
        (
            "complete intersection (2,3)",
            IdealPresentation.parse(3, ["x0*x1 - x2*x3", "x0^3 + x1^3 + x2^3 + x3^3"]),
        )
    )
    return corpus


def check_gotzmann_vs_hoa(
    corpus: Iterable[Union[IdealPresentation, tuple[str, IdealPresentation]]],
    settings: Settings = DEFAULT_SETTINGS,
) -> list[VerificationOutcome]:
    """Exact Gotzmann numbers against Hoa's bound with D = max(d, 2) and a = dimX + 1."""
    outcomes = []
    for index, item in enumerate(corpus):
        name, ideal = item if isinstance(item, tuple) else (f"ideal {index}", item)
        inv = invariants(ideal, limits=settings.limits)
        phi = gotzmann_number(inv.hp, settings.limits)
        hoa = hoa_bound(HoaBoundInput(D=max(inv.d, 2), r=inv.r, a=inv.dimX + 1), settings)
        holds = TowerNumber.of(phi, settings).le(hoa) is True
        outcomes.append(
            VerificationOutcome(
                "gotzmann-hoa",
                {"ideal": name, "hp": inv.hp.to_text(), "d": inv.d, "r": inv.r},
                holds, phi, hoa, margin_log2=_margin(phi, hoa, settings.precision),
            )
        )
    return outcomes


def compare_bounds_grid(grid: GridSpec) -> list[VerificationOutcome]:
    """2^(d^(r^2+2r log2 r)) <= 2^(d^(r^3 2^r)) over the grid, via the inner exponents."""
    settings = grid.settings()
    outcomes = []
    for r in grid.rs:
        for d in grid.ds:
            left = effdiv_torsion_bound(d, r, settings)
            right = hilbert_scheme_bound(d, r, settings)
            ordering = left.compare(right)
            outcomes.append(
                VerificationOutcome(
                    "compare", {"d": d, "r": r}, ordering in ("less", "equal"), left, right,
                    margin_log2=right.inner_exp - left.inner_exp,
                    note=None if ordering != "incomparable" else "incomparable at this precision",
                )
            )
    return outcomes


# --- grid driver --------------------------------------------------------------------

DEFAULT_CHECKS = (
    "binom",
    "hilbert-chain",
    "effdiv-chain",
    "compare",
    "gotzmann-hoa",
    "partitions",
    "superadditivity",
    "effdiv-steps",
    "effdiv-relaxation",
)
OPT_IN_CHECKS = ("hoa-t", "conn-intermediate")
ALL_CHECKS = DEFAULT_CHECKS + OPT_IN_CHECKS


def _per_dr(fn: Callable[[int, int, Settings], VerificationOutcome]):
    def run(grid: GridSpec) -> list[VerificationOutcome]:
        settings = grid.settings()
        return [fn(d, r, settings) for r in grid.rs for d in grid.ds]

    return run


def _per_rt(fn: Callable[[int, int, int], VerificationOutcome]):
    def run(grid: GridSpec) -> list[VerificationOutcome]:
        return [fn(r, t, grid.precision) for r in grid.rs for t in grid.t_values(r)]

    return run


_RUNNERS: dict[str, Callable[[GridSpec], list[VerificationOutcome]]] = {
    "binom": _per_rt(check_binom_lt_power),
    "conn-intermediate": _per_rt(check_conn_intermediate),
    "hilbert-chain": _per_dr(check_hilbert_chain),
    "effdiv-chain": _per_dr(check_effdiv_chain),
    "effdiv-relaxation": _per_dr(check_effdiv_relaxation),
    "hoa-t": _per_dr(check_hoa_dominates_t),
    "effdiv-steps": lambda grid: [
        check_effdiv_steps(d, r, grid.precision) for r in grid.rs for d in grid.ds
    ],
    "compare": compare_bounds_grid,
    "gotzmann-hoa": lambda grid: check_gotzmann_vs_hoa(default_corpus(), grid.settings()),
    "partitions": lambda grid: [check_partition_count(n, grid.precision) for n in grid.ns],
    "superadditivity": lambda grid: [
        check_effdiv_superadditivity(n, r, grid.precision) for r in grid.rs for n in grid.ns
    ],
}


def resolve_checks(only: Optional[Sequence[str]] = None, include_all: bool = False) -> list[str]:
    if include_all:
        return list(ALL_CHECKS)
    if not only:
        return list(DEFAULT_CHECKS)
    unknown = [name for name in only if name not in _RUNNERS]
    if unknown:
        raise PreconditionError(f"unknown check(s) {unknown}; valid checks: {list(ALL_CHECKS)}")
    return list(dict.fromkeys(only))


def run_checks(
    grid: GridSpec = GridSpec(),
    only: Optional[Sequence[str]] = None,
    include_all: bool = False,
) -> VerificationRun:
    """Run the selected checks over the grid; outcomes come back in canonical order."""
    checks = resolve_checks(only, include_all)
    run = VerificationRun(grid=grid, checks=checks)
    for name in checks:
        outcomes = _RUNNERS[name](grid)
        logger.debug("check %s: %d outcome(s)", name, len(outcomes))
        run.outcomes.extend(outcomes)
    run.outcomes.sort(key=lambda o: o.sort_key)
    for outcome in run.discrepancies:
        logger.warning("discrepancy: %s %s %s", outcome.check, outcome.params, outcome.note or "")
    return run
