"""Helpers shared by the tool modules: settings, ideal loading and the JSON error contract."""

import json
import logging
from typing import Any, Optional

from nsbound.config import Settings
from nsbound.errors import NsBoundError, ParseError
from nsbound.ideal_file import parse_ideal_text, read_ideal_file
from nsbound.poly_core import IdealPresentation

logger = logging.getLogger(__name__)


def settings_for(
    precision: Optional[int] = None,
    max_pairs: Optional[int] = None,
    max_degree: Optional[int] = None,
) -> Settings:
    return Settings.from_env().override(
        precision=precision, max_pairs=max_pairs, max_degree=max_degree
    )


def load_ideal(
    path: Optional[str] = None,
    ideal_text: Optional[str] = None,
    generators: Optional[str] = None,
    r: Optional[int] = None,
) -> IdealPresentation:
    """An ideal from a file path, ideal-file text, or `generators` (';' or newline separated) plus r."""
    if path:
        return read_ideal_file(path)
    if ideal_text:
        return parse_ideal_text(ideal_text)
    if generators:
        if r is None:
            raise ParseError("`r` is required together with `generators`")
        lines = [g.strip() for g in generators.replace(";", "\n").splitlines() if g.strip()]
        return parse_ideal_text("\n".join([f"vars {r + 1}", *lines]))
    raise ParseError("one of `path`, `ideal_text` or `generators` is required")


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2)


def error_json(exc: Exception) -> str:
    if isinstance(exc, NsBoundError):
        return dumps(exc.to_dict())
    logger.exception("unexpected error")
    return dumps({"error": str(exc)})


def unknown_action(action: str, valid_actions: list[str]) -> str:
    return dumps({"error": f"Unknown action '{action}'", "valid_actions": valid_actions})
