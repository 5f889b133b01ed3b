"""Gotzmann tool: decompositions, Gotzmann numbers and Hoa's bound."""

from typing import Optional

from nsbound.errors import PreconditionError
from nsbound.gotzmann import (
    GotzmannDecomposition,
    HoaBoundInput,
    gotzmann_decomposition,
    hoa_bound,
    reconstruct,
)
from nsbound.hilbert import invariants, parse_hilbert_polynomial
from nsbound.report import gotzmann_document
from tools._common import dumps, error_json, load_ideal, settings_for, unknown_action

VALID_ACTIONS = ["decompose", "reconstruct", "hoa"]


def _parse_sequence(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise PreconditionError(f"decomposition must be a list of integers, got {text!r}") from None


def register_gotzmann_tools(server):

    @server.tool()
    def gotzmann(
        action: str,
        hp: Optional[str] = None,
        path: Optional[str] = None,
        ideal_text: Optional[str] = None,
        generators: Optional[str] = None,
        r: Optional[int] = None,
        decomposition: Optional[str] = None,
        D: Optional[int] = None,
        a: Optional[int] = None,
    ) -> str:
        """
        Gotzmann decomposition P(t) = sum_i binom(t + a_i - i + 1, a_i), a_1 >= ... >= a_s >= 0.

        The Gotzmann number phi(P) is the length s.

        Actions:
        - decompose: decompose `hp` (e.g. "2t+1", "(t+1)^2", "3t+1"), or the Hilbert
          polynomial of the subscheme given by `path`/`ideal_text`/`generators` + `r`.
          A polynomial that is not the Hilbert polynomial of any subscheme returns a
          "not_admissible" error with the greedy trace.
        - reconstruct: rebuild the polynomial from `decomposition` ("1,1,1,0").
        - hoa: Hoa's bound (3/2 D^(r+1-a) + D)^(a 2^(a-1)). Requires `D`, `r`, `a`.

        Examples:
            gotzmann(action="decompose", hp="2t+1")
            gotzmann(action="decompose", path="ideals/twisted_cubic.txt")
            gotzmann(action="reconstruct", decomposition="2,2")
            gotzmann(action="hoa", D=2, r=3, a=3)
        """
        if action not in VALID_ACTIONS:
            return unknown_action(action, VALID_ACTIONS)
        try:
            settings = settings_for()

            if action == "decompose":
                if hp:
                    Q, source = parse_hilbert_polynomial(hp), "hp"
                else:
                    presentation = load_ideal(path, ideal_text, generators, r)
                    Q, source = invariants(presentation, limits=settings.limits).hp, "ideal"
                return dumps(gotzmann_document(Q, gotzmann_decomposition(Q, settings.limits), source))

            if action == "reconstruct":
                if not decomposition:
                    raise PreconditionError("`decomposition` is required")
                decomp = GotzmannDecomposition.from_sequence(_parse_sequence(decomposition))
                Q = reconstruct(decomp)
                return dumps(
                    {
                        "hp": Q.to_text(),
                        "hp_dense": Q.dense_text(),
                        "hp_binomial": Q.binomial_text(),
                        "phi": decomp.length,
                    }
                )

            if D is None or r is None or a is None:
                raise PreconditionError("`D`, `r` and `a` are required")
            value = hoa_bound(HoaBoundInput(D=D, r=r, a=a), settings)
            return dumps({"D": D, "r": r, "a": a, "value": value.to_json(), "display": value.human()})
        except Exception as e:
            return error_json(e)
