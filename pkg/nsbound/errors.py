"""Error types shared by the library, the tools and the CLI."""

from typing import Any, Optional


class NsBoundError(Exception):
    """Base class. `error_type` is the stable code tools and the CLI dispatch on."""

    error_type = "error"

    def to_dict(self) -> dict[str, Any]:
        return {"error": str(self), "error_type": self.error_type}


class ParseError(NsBoundError):
    error_type = "parse"

    def __init__(self, message: str, position: Optional[int] = None, line: Optional[int] = None):
        self.message = message
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)

    def with_line(self, line: int) -> "ParseError":
        return ParseError(self.message, self.position, line)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        if self.position is not None:
            data["position"] = self.position
        if self.line is not None:
            data["line"] = self.line
        return data


class UnknownVariable(ParseError):
    pass


class PreconditionError(NsBoundError, ValueError):
    error_type = "precondition"


class ImproperIdealError(NsBoundError):
    error_type = "improper"


class ResourceLimitExceeded(NsBoundError):
    error_type = "resource"

    def __init__(self, limit: str, value: int):
        self.limit = limit
        self.value = value
        super().__init__(f"resource limit exceeded: {limit}={value}")

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["limit"] = self.limit
        data["value"] = self.value
        return data


class NotAdmissibleError(NsBoundError):
    """The polynomial is not the Hilbert polynomial of any subscheme."""

    error_type = "not_admissible"

    def __init__(self, message: str, trace: list[dict]):
        self.trace = trace
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["trace"] = self.trace
        return data
