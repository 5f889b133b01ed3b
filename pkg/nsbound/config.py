"""Runtime configuration: precision, exact-value threshold and resource budgets."""

import os
from dataclasses import dataclass, field, replace


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw.strip().replace("_", ""))


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 20000
    max_degree: int = 64
    max_series_nodes: int = 500000
    max_gotzmann_length: int = 10_000_000


@dataclass(frozen=True)
class Settings:
    precision: int = 128
    exact_bits: int = 1_000_000
    limits: Limits = field(default_factory=Limits)

    @classmethod
    def from_env(cls) -> "Settings":
        """Read NS_BOUND_* variables (load `.env` before calling)."""
        defaults = Limits()
        return cls(
            precision=_env_int("NS_BOUND_PRECISION", 128),
            exact_bits=_env_int("NS_BOUND_EXACT_BITS", 1_000_000),
            limits=Limits(
                max_pairs=_env_int("NS_BOUND_MAX_PAIRS", defaults.max_pairs),
                max_degree=_env_int("NS_BOUND_MAX_DEGREE", defaults.max_degree),
                max_series_nodes=_env_int("NS_BOUND_MAX_SERIES_NODES", defaults.max_series_nodes),
                max_gotzmann_length=_env_int(
                    "NS_BOUND_MAX_GOTZMANN_LENGTH", defaults.max_gotzmann_length
                ),
            ),
        )

    def override(
        self,
        precision: int | None = None,
        max_pairs: int | None = None,
        max_degree: int | None = None,
    ) -> "Settings":
        """Return a copy with the given CLI/tool overrides applied."""
        limits = self.limits
        if max_pairs is not None:
            limits = replace(limits, max_pairs=max_pairs)
        if max_degree is not None:
            limits = replace(limits, max_degree=max_degree)
        return replace(
            self,
            precision=precision if precision is not None else self.precision,
            limits=limits,
        )


DEFAULT_SETTINGS = Settings()
