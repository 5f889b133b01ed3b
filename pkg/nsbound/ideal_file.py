"""Reader for ideal files.

    # quadric surface in P^3
    vars 4
    x0*x3 - x1*x2

The header `vars N` declares N = r+1 variables x0..x{N-1}. Every other nonempty line
is one homogeneous generator; `#` starts a comment.
"""

import re
from pathlib import Path
from typing import Union

from nsbound.errors import ParseError, PreconditionError
from nsbound.poly_core import IdealPresentation, Polynomial, parse_polynomial

_HEADER = re.compile(r"^vars\s+(\d+)$")


def parse_ideal_text(text: str) -> IdealPresentation:
    r = None
    generators: list[Polynomial] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if r is None:
            match = _HEADER.match(line)
            if not match:
                raise ParseError("expected header `vars N` before any generator", line=number)
            nvars = int(match.group(1))
            if nvars < 2:
                raise ParseError(f"need at least 2 variables, got {nvars}", line=number)
            r = nvars - 1
            continue
        if _HEADER.match(line):
            raise ParseError("duplicate `vars` header", line=number)
        try:
            poly = parse_polynomial(line, r)
        except ParseError as exc:
            raise exc.with_line(number) from exc
        if poly.is_zero:
            raise ParseError("generator is zero", line=number)
        if not poly.is_homogeneous:
            raise ParseError(f"generator is not homogeneous: {line}", line=number)
        if poly.degree < 1:
            raise ParseError("generator is a nonzero constant", line=number)
        generators.append(poly)
    if r is None:
        raise ParseError("empty ideal file: missing `vars N` header")
    if not generators:
        raise ParseError("ideal file has no generators")
    try:
        return IdealPresentation.from_generators(r, generators)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def read_ideal_file(path: Union[str, Path]) -> IdealPresentation:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_ideal_text(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.position, exc.line) from exc
