"""Ideal tool: Groebner bases, Hilbert polynomials and invariants of X = V(I) in P^r."""

from typing import Optional

from nsbound.groebner import buchberger, smoothness_check
from nsbound.hilbert import invariants
from nsbound.poly_core import MonomialOrder
from nsbound.report import invariants_document
from tools._common import dumps, error_json, load_ideal, settings_for, unknown_action

VALID_ACTIONS = ["invariants", "groebner", "smoothness"]


def register_ideal_tools(server):

    @server.tool()
    def ideal(
        action: str,
        path: Optional[str] = None,
        ideal_text: Optional[str] = None,
        generators: Optional[str] = None,
        r: Optional[int] = None,
        order: str = "grevlex",
        check_smooth: bool = False,
        max_pairs: Optional[int] = None,
        max_degree: Optional[int] = None,
    ) -> str:
        """
        Compute invariants of the projective scheme cut out by homogeneous generators.

        The ideal comes from `path` (an ideal file), `ideal_text` (the same format inline:
        a `vars N` header, then one generator per line) or `generators` separated by ';'
        together with the ambient dimension `r`. Variables are x0..xr.

        Actions:
        - invariants: dim X, codim X, deg X, d, and the Hilbert polynomial in dense and
          binomial form. With `check_smooth=True` also runs the Jacobian criterion.
        - groebner: the reduced Groebner basis in the chosen `order` (grevlex or lex).
        - smoothness: Jacobian-criterion status (smooth, singular or indeterminate).

        Examples:
            ideal(action="invariants", generators="x0*x3 - x1*x2", r=3)
            ideal(action="groebner", generators="x0*x2 - x1^2; x0*x3 - x1*x2; x1*x3 - x2^2", r=3, order="lex")
            ideal(action="smoothness", path="ideals/nodal_cubic.txt")
        """
        if action not in VALID_ACTIONS:
            return unknown_action(action, VALID_ACTIONS)
        try:
            settings = settings_for(max_pairs=max_pairs, max_degree=max_degree)
            limits = settings.limits
            mono_order = MonomialOrder.parse(order)
            presentation = load_ideal(path, ideal_text, generators, r)

            if action == "groebner":
                gb = buchberger(presentation, mono_order, limits)
                return dumps(
                    {
                        "order": mono_order.value,
                        "r": presentation.r,
                        "unit": gb.is_unit,
                        "size": len(gb),
                        "basis": [g.to_text(mono_order) for g in gb.elements],
                    }
                )

            if action == "smoothness":
                status = smoothness_check(presentation, mono_order, limits)
                return dumps({"r": presentation.r, "smoothness": status.value})

            inv = invariants(presentation, mono_order, limits)
            status = smoothness_check(presentation, mono_order, limits) if check_smooth else None
            return dumps(invariants_document(inv, status))
        except Exception as e:
            return error_json(e)
