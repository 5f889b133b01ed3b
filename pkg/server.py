"""ns-bound MCP Server - Main entry point."""

import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from fastmcp import FastMCP

# Load environment variables from .env file (NS_BOUND_* limits and precision)
env_path = Path(__file__).parent / ".env"
if env_path.exists():
    load_dotenv(env_path)

from tools import register_all_tools  # noqa: E402

logging.basicConfig(level=os.getenv("NS_BOUND_LOG_LEVEL", "WARNING").upper())

ns_bound_server = FastMCP(
    "ns-bound",
    instructions="""
# ns-bound MCP Server

Explicit upper bounds for the torsion of the Neron-Severi group of a smooth
projective variety X in P^r, computed from homogeneous generators of its ideal.
All arithmetic is exact; huge values come back as certified upper bounds.

## Tools

### 1. ideal: invariants of X = V(I)

**ideal(action, path | ideal_text | generators + r, ...)**

Actions:
- **invariants**: dim X, codim X, deg X, d, Hilbert polynomial (dense and binomial)
- **groebner**: reduced Groebner basis (grevlex or lex)
- **smoothness**: Jacobian criterion

Examples:
```
ideal(action="invariants", generators="x0*x3 - x1*x2", r=3)
ideal(action="groebner", generators="x0*x2 - x1^2; x0*x3 - x1*x2; x1*x3 - x2^2", r=3)
```

### 2. bound: torsion bounds

**bound(action, ...)**

Actions:
- **full**: whole pipeline for an ideal (closed-form and sharpened chains)
- **closed_form**: quantities depending on (d, r) only
- **effdiv**: component bound for degree-n effective divisors
- **conn_hilb**: t^(r t^(2r))

Examples:
```
bound(action="full", generators="x0*x3 - x1*x2", r=3)
bound(action="closed_form", d=2, r=4)
```

### 3. gotzmann: Gotzmann decompositions

**gotzmann(action, ...)**

Actions:
- **decompose**: decomposition and Gotzmann number of a Hilbert polynomial
- **reconstruct**: polynomial from a decomposition
- **hoa**: Hoa's closed-form bound on the Gotzmann number

Examples:
```
gotzmann(action="decompose", hp="3t+1")
gotzmann(action="hoa", D=2, r=3, a=3)
```

### 4. verify: inequality checks

**verify(action, ...)**

Actions:
- **run**: evaluate the inequality chains over a grid; failures are listed as discrepancies
- **checks**: list check names
- **schema**: JSON schema of the reports

Examples:
```
verify(action="run", r_range="3..5", d_range="2..4")
verify(action="run", r_range="2..8", only="binom")
```

## Numbers

Values are {"kind": "exact", "decimal": ...} when small, otherwise
{"kind": "log2", "value": ...} (log2 of the bound, rounded up) or
{"kind": "tower", "base": 2, "inner_base": b, "inner_exp": e} meaning 2^(b^e).
""",
)

register_all_tools(ns_bound_server)


if __name__ == "__main__":
    print("Starting ns-bound MCP server with stdio transport", file=sys.stderr)
    ns_bound_server.run()
