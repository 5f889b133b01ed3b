"""Explicit bounds on Neron-Severi torsion and the pipeline that evaluates them for an ideal.

Two families of numbers come out of the pipeline. The closed-form ones depend on
(d, r) only (plus codim X and deg X where the formula says so). The computed-chain
ones replace worst-case estimates by exact Hilbert polynomials and Gotzmann numbers.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Optional, Union

from nsbound.config import DEFAULT_SETTINGS, Settings
from nsbound.directed import Interval
from nsbound.errors import NotAdmissibleError, PreconditionError, ResourceLimitExceeded
from nsbound.gotzmann import HoaBoundInput, gotzmann_decomposition, hoa_bound
from nsbound.groebner import SmoothnessStatus, buchberger, smoothness_check
from nsbound.hilbert import (
    HilbertPolynomial,
    VarietyInvariants,
    divisor_hp,
    invariants,
    subscheme_to_ideal_hp,
)
from nsbound.poly_core import IdealPresentation, MonomialOrder
from nsbound.tower import TowerNumber

logger = logging.getLogger(__name__)

Value = Union[int, bool, str, TowerNumber, dict]


def _require(condition: bool, message: str):
    if not condition:
        raise PreconditionError(message)


# --- degenerate cases -----------------------------------------------------------------


def degenerate_reason(inv: VarietyInvariants) -> Optional[str]:
    """Why the torsion is trivially bounded by 1, or None."""
    if inv.dimX <= 1:
        return "point" if inv.dimX == 0 else "curve"
    if inv.codim == 0:
        return "projective space"
    if inv.d == 1 or inv.degX == 1:
        return "linear subspace"
    return None


def degenerate_case(inv: VarietyInvariants) -> Optional[TowerNumber]:
    """Curves and projective spaces have torsion-free Neron-Severi groups."""
    return TowerNumber.of(1) if degenerate_reason(inv) else None


# --- scalar ingredients ---------------------------------------------------------------


def m_divisor(d: int, codim: int) -> int:
    _require(d >= 1 and codim >= 1, f"m needs d >= 1 and codim >= 1 (d={d}, codim={codim})")
    return (d - 1) * codim


def n_degree(d: int, codim: int, degX: int) -> int:
    _require(
        d >= 1 and codim >= 1 and degX >= 1,
        f"n needs d, codim, degX >= 1 (d={d}, codim={codim}, degX={degX})",
    )
    return (d - 1) * codim * degX


def worst_case_n(d: int, r: int) -> int:
    _require(r >= 2 and d >= 1, f"worst-case n needs r >= 2 and d >= 1 (d={d}, r={r})")
    return (r - 2) * (d - 1) * d ** (r - 2)


def generator_bound(d: int) -> int:
    _require(d >= 1, f"generator bound needs d >= 1, got {d}")
    return (d - 1) * (d - 2)


def intersection_degree_bound(n: int, degX: int) -> int:
    return n * n * degX


def closed_form_t(d: int, r: int) -> int:
    _require(r >= 3 and d >= 2, f"closed-form t needs r >= 3 and d >= 2 (d={d}, r={r})")
    return (2 * r * d) ** ((r + 1) * 2 ** (r - 2))


# --- component counts -----------------------------------------------------------------


def andreotti_bezout_bound(d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """Irreducible components of an affine scheme in A^r cut out in degree <= d."""
    return TowerNumber.power(d, r, settings)


def biprojective_bound(d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """Same count for a closed subscheme of P^r x P^r cut out in degree <= d."""
    return TowerNumber.power(d, 2 * r, settings)


def counting_lemma_bound(p: int, q: int, n: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """max{p+1, q+1}^(q(n-q)) components for the rank/containment locus in Gr(q, n)."""
    _require(0 <= q <= n, f"need 0 <= q <= n (q={q}, n={n})")
    return TowerNumber.power(max(p + 1, q + 1), q * (n - q), settings)


@dataclass(frozen=True)
class GrassmannianStats:
    q: int
    N: int
    ambient_dim: int
    minor_degree: int

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "ambient_dim": self.ambient_dim,
            "minor_degree": self.minor_degree,
        }


def grassmannian_stats(P: HilbertPolynomial, t: int, r: int) -> GrassmannianStats:
    """Numbers of the Gotzmann embedding into Gr(P(t), k[x0..xr]_t)."""
    _require(t >= 1, f"t must be >= 1, got {t}")
    q = P.evaluate(t)
    N = comb(t + r, r)
    _require(0 <= q <= N, f"P({t}) = {q} is outside [0, {N}]")
    return GrassmannianStats(
        q=q,
        N=N,
        ambient_dim=q * (N - q),
        minor_degree=max(P.evaluate(t + 1) + 1, q + 1),
    )


def component_bound_hilb(
    P: HilbertPolynomial, t: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> TowerNumber:
    """Components of Hilb_{binom(t+r,r) - P} inside Gr(P(t), k[x0..xr]_t).

    P is the Hilbert polynomial of the ideal, not of the subscheme.
    """
    stats = grassmannian_stats(P, t, r)
    return counting_lemma_bound(P.evaluate(t + 1), stats.q, stats.N, settings)


def conn_bound_hilb(t: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """t^(r t^(2r)) components of the Hilbert scheme, for t >= max{phi, d, 8r}."""
    _require(r >= 2, f"r must be >= 2, got {r}")
    _require(t >= 8 * r, f"t must be >= 8r = {8 * r}, got {t}")
    return TowerNumber.power(t, r * t ** (2 * r), settings)


def conn_bound_intermediate(t: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """(binom(t+1+r, r) + 1)^(binom(t+r, r)^2), before relaxing to t^(r t^(2r))."""
    _require(r >= 2 and t >= 1, f"need r >= 2 and t >= 1 (r={r}, t={t})")
    return TowerNumber.power(comb(t + 1 + r, r) + 1, comb(t + r, r) ** 2, settings)


def hilbert_scheme_bound(d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """2^(d^(2^(r + 3 log2 r))); the inner exponent is the integer r^3 2^r."""
    _require(r >= 3 and d >= 2, f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    return TowerNumber.tower(d, Interval.point(r**3 * 2**r, settings.precision))


# --- effective divisors ---------------------------------------------------------------


def sn_bound(n: int, d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """binom(2 max{n,d} + (r-1)d, r)^(2 binom(n+r, r) - 2)."""
    _require(n >= 1 and d >= 1 and r >= 1, f"needs n, d, r >= 1 (n={n}, d={d}, r={r})")
    exponent = 2 * comb(n + r, r) - 2
    _require(exponent >= 2, "exponent 2 binom(n+r, r) - 2 must be >= 2")
    return TowerNumber.power(comb(2 * max(n, d) + (r - 1) * d, r), exponent, settings)


def effdiv_bound(n: int, d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """2^n times sn_bound: components of the degree-n effective divisors."""
    return TowerNumber.power(2, n, settings).multiply(sn_bound(n, d, r, settings), settings)


def effdiv_chain_intermediate(
    n: int, d: int, r: int, settings: Settings = DEFAULT_SETTINGS
) -> TowerNumber:
    """2^n binom(2n + (r-1)d, r)^(2 binom(n+r, r)), the first relaxation of effdiv_bound."""
    _require(n >= 1 and d >= 1 and r >= 1, f"needs n, d, r >= 1 (n={n}, d={d}, r={r})")
    relaxed = TowerNumber.power(comb(2 * n + (r - 1) * d, r), 2 * comb(n + r, r), settings)
    return TowerNumber.power(2, n, settings).multiply(relaxed, settings)


def effdiv_exponent(r: int, precision: int = 128) -> Interval:
    """r^2 + 2r log2 r, outward rounded."""
    return Interval.point(r, precision).log2() * (2 * r) + r * r


def effdiv_torsion_bound(d: int, r: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """2^(d^(r^2 + 2r log2 r))."""
    _require(r >= 3 and d >= 2, f"needs r >= 3 and d >= 2 (d={d}, r={r})")
    return TowerNumber.tower(d, effdiv_exponent(r, settings.precision))


def hoa_paper_faithful(d: int, r: int, dimX: int, settings: Settings = DEFAULT_SETTINGS) -> TowerNumber:
    """Hoa's bound with the worst-case substitution D = rd."""
    return hoa_bound(HoaBoundInput(D=r * d, r=r, a=dimX), settings)


# --- pipeline -------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    value: Value
    formula: str


@dataclass(frozen=True)
class PipelineOptions:
    paper_faithful: bool = False
    check_smooth: bool = False
    order: MonomialOrder = MonomialOrder.GREVLEX
    settings: Settings = DEFAULT_SETTINGS


@dataclass
class BoundReport:
    invariants: VarietyInvariants
    smoothness: SmoothnessStatus
    paper_faithful: bool
    degenerate: Optional[str] = None
    entries: dict[str, BoundEntry] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    hypotheses: dict[str, str] = field(default_factory=dict)

    def add(self, key: str, value: Value, formula: str):
        self.entries[key] = BoundEntry(value, formula)

    def value(self, key: str) -> Any:
        return self.entries[key].value


def _ceil(value: TowerNumber) -> Optional[int]:
    if not value.is_exact:
        return None
    exact = Fraction(value.exact)
    return -(-exact.numerator // exact.denominator)


def full_pipeline(
    ideal: IdealPresentation, options: PipelineOptions = PipelineOptions()
) -> BoundReport:
    settings = options.settings
    limits = settings.limits
    gb = buchberger(ideal, options.order, limits)
    inv = invariants(ideal, options.order, limits, gb=gb)
    smooth = (
        smoothness_check(ideal, options.order, limits)
        if options.check_smooth
        else SmoothnessStatus.ASSERTED
    )
    report = BoundReport(invariants=inv, smoothness=smooth, paper_faithful=options.paper_faithful)
    report.hypotheses = {
        "smooth": "checked" if smooth in (SmoothnessStatus.SMOOTH, SmoothnessStatus.SINGULAR) else "asserted",
        "irreducible": "asserted",
        "reduced": "asserted",
    }
    if smooth is SmoothnessStatus.INDETERMINATE:
        report.warnings.append(
            "smoothness check exceeded the resource budget; proceeding on the user's assertion"
        )
    elif smooth is SmoothnessStatus.SINGULAR:
        report.warnings.append("X is singular; every bound below assumes a smooth variety")
    if inv.linear_forms:
        report.warnings.append(
            f"contained in a hyperplane: the ideal has {inv.linear_forms} linear form(s); "
            f"bounds use the given r={inv.r}"
        )

    reason = degenerate_reason(inv)
    if reason:
        report.degenerate = reason
        report.add("bound", degenerate_case(inv), "torsion of NS is trivial for " + reason)
        logger.info("degenerate case (%s): bound 1", reason)
        return report

    d, r, codim, degX, dim = inv.d, inv.r, inv.codim, inv.degX, inv.dimX
    m = m_divisor(d, codim)
    report.add("m", m, "(d-1)*codim")
    n = n_degree(d, codim, degX)
    report.add("n", n, "(d-1)*codim*degX")
    n_worst = worst_case_n(d, r)
    report.add("n_worst", n_worst, "(r-2)(d-1)d^(r-2)")
    report.add("n_within_worst", n <= n_worst, "n <= (r-2)(d-1)d^(r-2)")
    if n > n_worst:
        report.warnings.append(f"n={n} exceeds the worst-case estimate {n_worst}")

    t_closed = closed_form_t(d, r)
    report.add("t_closed", TowerNumber.of(t_closed, settings), "(2rd)^((r+1)*2^(r-2))")
    hoa_paper = hoa_paper_faithful(d, r, dim, settings)
    report.add("phi_hoa_paper", hoa_paper, "(3/2*D^(r+1-a) + D)^(a*2^(a-1)), D=r*d, a=dimX")
    dominated = hoa_paper.le(TowerNumber.of(t_closed, settings))
    report.add("t_closed_dominates_hoa", bool(dominated), "t_closed >= Hoa bound with D=r*d")
    if dominated is not True:
        report.warnings.append("t_closed does not dominate the Hoa bound with D=r*d for this X")
    report.add(
        "conn_hilb_closed", conn_bound_hilb(t_closed, r, settings), "t^(r*t^(2r)), t=t_closed"
    )
    report.add(
        "effdiv_worst", effdiv_bound(n_worst, d, r, settings),
        "2^n*binom(2max(n,d)+(r-1)d, r)^(2binom(n+r,r)-2), n=n_worst",
    )
    report.add(
        "hilbert_scheme_bound", hilbert_scheme_bound(d, r, settings),
        "2^(d^(2^(r+3*log2 r))) = 2^(d^(r^3*2^r))",
    )
    report.add(
        "effdiv_torsion_bound", effdiv_torsion_bound(d, r, settings), "2^(d^(r^2+2r*log2 r))"
    )
    report.add("generator_bound", generator_bound(degX), "(degX-1)(degX-2)")
    report.add("generator_bound_at_d", generator_bound(d), "(d-1)(d-2)")
    report.add("andreotti_bezout", andreotti_bezout_bound(d, r, settings), "d^r")
    report.add("andreotti_bezout_biprojective", biprojective_bound(d, r, settings), "d^(2r)")
    report.add(
        "closed_form_comparison",
        report.value("effdiv_torsion_bound").compare(report.value("hilbert_scheme_bound")),
        "2^(d^(r^2+2r*log2 r)) vs 2^(d^(r^3*2^r))",
    )
    if options.paper_faithful:
        return report

    Q = divisor_hp(inv.hp, m)
    report.add("Q", Q.to_text(), "P(t) - P(t-m)")
    phi_exact: Optional[int] = None
    try:
        decomposition = gotzmann_decomposition(Q, limits)
        phi_exact = decomposition.length
        report.add("phi_exact", phi_exact, "length of the Gotzmann decomposition of Q")
        report.add("gotzmann_decomposition", decomposition.to_dict(), "greedy Macaulay expansion of Q")
    except NotAdmissibleError as exc:
        report.warnings.append(f"Q is not admissible, falling back to Hoa's bound: {exc}")
    except ResourceLimitExceeded as exc:
        report.warnings.append(f"exact Gotzmann number not computed, falling back to Hoa's bound: {exc}")
    hoa_input = HoaBoundInput(D=max(d, m, 2), r=r, a=dim)
    phi_hoa = hoa_bound(hoa_input, settings)
    report.add("phi_hoa", phi_hoa, "(3/2*D^(r+1-a) + D)^(a*2^(a-1)), D=max(d,m,2), a=dimX")

    phi = phi_exact if phi_exact is not None else _ceil(phi_hoa)
    if phi is None:
        report.warnings.append("Hoa's bound is too large to use exactly; t_sharp falls back to t_closed")
        t_sharp = t_closed
    else:
        t_sharp = max(phi, d, 8 * r)
    report.add("t_sharp", t_sharp, "max(phi, d, 8r)")
    report.add("t_sharp_within_closed", t_sharp <= t_closed, "t_sharp <= t_closed")
    conn_sharp = conn_bound_hilb(t_sharp, r, settings)
    report.add("conn_hilb_sharp", conn_sharp, "t^(r*t^(2r)), t=t_sharp")
    ideal_hp = subscheme_to_ideal_hp(Q, r)
    report.add(
        "gotzmann_embedding", grassmannian_stats(ideal_hp, t_sharp, r).to_dict(),
        "Gr(P(t), binom(t+r,r)) with P = binom(t+r,r) - Q, t=t_sharp",
    )
    report.add(
        "component_bound_hilb", component_bound_hilb(ideal_hp, t_sharp, r, settings),
        "max(P(t+1)+1, P(t)+1)^(P(t)*(binom(t+r,r)-P(t))), P = binom(t+r,r) - Q, t=t_sharp",
    )
    report.add("intersection_degree", intersection_degree_bound(n, degX), "n^2*degX")
    report.add("sn_bound", sn_bound(n, d, r, settings), "binom(2max(n,d)+(r-1)d, r)^(2binom(n+r,r)-2)")
    effdiv = effdiv_bound(n, d, r, settings)
    report.add("effdiv_bound", effdiv, "2^n*binom(2max(n,d)+(r-1)d, r)^(2binom(n+r,r)-2)")

    candidates = ["conn_hilb_sharp", "effdiv_bound", "effdiv_torsion_bound", "hilbert_scheme_bound"]
    best = candidates[0]
    for key in candidates[1:]:
        if report.value(key).compare(report.value(best)) == "less":
            best = key
    report.add("best_bound", best, "smallest certified bound among the computed and closed-form chains")
    report.add(
        "sharp_vs_closed", conn_sharp.compare(report.value("conn_hilb_closed")),
        "conn_hilb_sharp vs conn_hilb_closed",
    )
    return report
