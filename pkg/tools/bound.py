"""Bound tool: Neron-Severi torsion bounds, from an ideal or from (d, r) alone."""

from typing import Optional

from nsbound.bounds import (
    PipelineOptions,
    closed_form_t,
    conn_bound_hilb,
    effdiv_bound,
    effdiv_torsion_bound,
    full_pipeline,
    generator_bound,
    hilbert_scheme_bound,
    worst_case_n,
)
from nsbound.errors import PreconditionError
from nsbound.poly_core import MonomialOrder
from nsbound.report import bound_document, encode_value
from tools._common import dumps, error_json, load_ideal, settings_for, unknown_action

VALID_ACTIONS = ["full", "closed_form", "effdiv", "conn_hilb"]


def _need(**values):
    missing = [name for name, value in values.items() if value is None]
    if missing:
        raise PreconditionError(f"missing required parameter(s): {', '.join(missing)}")


def register_bound_tools(server):

    @server.tool()
    def bound(
        action: str,
        path: Optional[str] = None,
        ideal_text: Optional[str] = None,
        generators: Optional[str] = None,
        r: Optional[int] = None,
        d: Optional[int] = None,
        n: Optional[int] = None,
        t: Optional[int] = None,
        paper_faithful: bool = False,
        check_smooth: bool = False,
        order: str = "grevlex",
        precision: Optional[int] = None,
        max_pairs: Optional[int] = None,
        max_degree: Optional[int] = None,
    ) -> str:
        """
        Upper bounds for the torsion of the Neron-Severi group of a smooth projective X.

        Actions:
        - full: run the whole pipeline on an ideal (`path`, `ideal_text`, or `generators`
          with `r`). Reports the closed-form bounds 2^(d^(r^2+2r log2 r)) and
          2^(d^(r^3 2^r)), plus the sharpened chain built from the exact Hilbert polynomial
          and Gotzmann number. `paper_faithful=True` keeps only the closed-form section.
          Curves, points, projective spaces and linear subspaces report bound 1.
        - closed_form: the (d, r)-only quantities. Requires `d` and `r` (r >= 3, d >= 2).
        - effdiv: component bound for degree-n effective divisors. Requires `n`, `d`, `r`.
        - conn_hilb: t^(r t^(2r)), the Hilbert-scheme component bound. Requires `t`, `r`.

        Values are exact when small, otherwise {"kind": "log2"} or {"kind": "tower"}
        upper bounds whose decimal fields are rounded up.

        Examples:
            bound(action="full", generators="x0*x3 - x1*x2", r=3)
            bound(action="full", path="ideals/quadric.txt", paper_faithful=True)
            bound(action="closed_form", d=2, r=4)
            bound(action="effdiv", n=2, d=2, r=3)
        """
        if action not in VALID_ACTIONS:
            return unknown_action(action, VALID_ACTIONS)
        try:
            settings = settings_for(precision, max_pairs, max_degree)

            if action == "full":
                presentation = load_ideal(path, ideal_text, generators, r)
                options = PipelineOptions(
                    paper_faithful=paper_faithful,
                    check_smooth=check_smooth,
                    order=MonomialOrder.parse(order),
                    settings=settings,
                )
                return dumps(bound_document(full_pipeline(presentation, options)))

            if action == "closed_form":
                _need(d=d, r=r)
                return dumps(
                    {
                        "d": d,
                        "r": r,
                        "t_closed": encode_value(closed_form_t(d, r)),
                        "n_worst": worst_case_n(d, r),
                        "generator_bound_at_d": generator_bound(d),
                        "hilbert_scheme_bound": hilbert_scheme_bound(d, r, settings).to_json(),
                        "effdiv_torsion_bound": effdiv_torsion_bound(d, r, settings).to_json(),
                        "effdiv_worst": effdiv_bound(worst_case_n(d, r), d, r, settings).to_json(),
                    }
                )

            if action == "effdiv":
                _need(n=n, d=d, r=r)
                value = effdiv_bound(n, d, r, settings)
                return dumps({"n": n, "d": d, "r": r, "value": value.to_json(), "display": value.human()})

            _need(t=t, r=r)
            value = conn_bound_hilb(t, r, settings)
            return dumps({"t": t, "r": r, "value": value.to_json(), "display": value.human()})
        except Exception as e:
            return error_json(e)
