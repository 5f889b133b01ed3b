"""Verify tool: re-check the inequality chains behind the bounds over parameter grids."""

from typing import Optional

from nsbound.errors import PreconditionError
from nsbound.report import JSON_SCHEMA, verify_document
from nsbound.verify import ALL_CHECKS, DEFAULT_CHECKS, GridSpec, run_checks
from tools._common import dumps, error_json, unknown_action

VALID_ACTIONS = ["run", "checks", "schema"]


def parse_range(text: Optional[str], default: tuple[int, int]) -> tuple[int, int]:
    """"A..B" or "A" -> (A, B)."""
    if not text:
        return default
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi) if sep else int(lo))
    except ValueError:
        raise PreconditionError(f"expected a range like 3..8, got {text!r}") from None


def register_verify_tools(server):

    @server.tool()
    def verify(
        action: str,
        r_range: Optional[str] = None,
        d_range: Optional[str] = None,
        t_range: Optional[str] = None,
        n_range: Optional[str] = None,
        only: Optional[str] = None,
        include_all: bool = False,
        precision: int = 128,
    ) -> str:
        """
        Check every inequality used to derive the torsion bounds, exactly or with
        directed rounding, over a grid of (r, d, t, n).

        Actions:
        - run: evaluate the checks. Ranges are "A..B" (inclusive); defaults r 3..8,
          d 2..8, n 1..64, t sampled at 8r, 8r+1, 8r+7, 16r, 64r. `only` is a
          comma-separated list of check names; `include_all=True` adds the opt-in checks.
          `all_hold` is false when any inequality fails; the failing points are listed
          under `discrepancies`.
        - checks: list the check names (default and opt-in).
        - schema: the JSON schema (ns-bound/1) of every report this server returns.

        Examples:
            verify(action="run")
            verify(action="run", r_range="2..8", only="binom")
            verify(action="run", r_range="3..5", d_range="2..3", only="hoa-t")
        """
        if action not in VALID_ACTIONS:
            return unknown_action(action, VALID_ACTIONS)
        try:
            if action == "checks":
                return dumps(
                    {
                        "default": list(DEFAULT_CHECKS),
                        "opt_in": [c for c in ALL_CHECKS if c not in DEFAULT_CHECKS],
                    }
                )
            if action == "schema":
                return dumps(JSON_SCHEMA)

            defaults = GridSpec()
            grid = GridSpec(
                r_range=parse_range(r_range, defaults.r_range),
                d_range=parse_range(d_range, defaults.d_range),
                t_range=parse_range(t_range, None) if t_range else None,
                n_range=parse_range(n_range, defaults.n_range),
                precision=precision,
            )
            names = [c.strip() for c in only.split(",") if c.strip()] if only else None
            return dumps(verify_document(run_checks(grid, names, include_all)))
        except Exception as e:
            return error_json(e)
