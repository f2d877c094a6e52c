"""Run configuration shared by the command line and the experiment helpers."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

from mpmath import mpf

from .errors import ConfigurationError
from .identifiability import AnalysisConfig
from .numerics import PrecisionContext

ENV_PREFIX = "FRACIDENT_"

# battery-typical ranges used for the random sweep
DEFAULT_RANGES = {
    "r_inf": (0.01, 0.2),
    "r1": (0.05, 5.0),
    "c1": (1.0, 20.0),
    "c2": (100.0, 500.0),
    "alpha1": (0.1, 0.9),
    "alpha2": (0.1, 0.9),
}


@dataclass(frozen=True)
class RunConfig:
    digits: int = 60
    root_tolerance: float = None
    max_iterations: int = 500
    verify_tol: float = 1e-12
    T: int = 100
    ts: str = "5e-4"
    ranges: dict = field(default_factory=lambda: dict(DEFAULT_RANGES))
    samples: int = 100
    seed: int = 0
    workers: int = 1
    out: str = None

    def __post_init__(self):
        ranges = dict(DEFAULT_RANGES)
        ranges.update({k: tuple(v) for k, v in (self.ranges or {}).items()})
        unknown = set(ranges) - set(DEFAULT_RANGES)
        if unknown:
            raise ConfigurationError(f"unknown range name(s): {', '.join(sorted(unknown))}")
        for name, (lo, hi) in ranges.items():
            if not lo <= hi:
                raise ConfigurationError(f"range {name}: low {lo} exceeds high {hi}")
        object.__setattr__(self, "ranges", ranges)
        if self.samples < 1:
            raise ConfigurationError("samples must be >= 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        if self.T < 7:
            raise ConfigurationError("T must be >= 7")
        # fail early on a bad precision setting
        self.context

    @property
    def context(self) -> PrecisionContext:
        return PrecisionContext(self.digits, self.root_tolerance, self.max_iterations)

    def analysis(self) -> AnalysisConfig:
        return AnalysisConfig(context=self.context, verify_tol=mpf(self.verify_tol))

    def merged(self, overrides: dict) -> "RunConfig":
        """Copy with non-None entries of ``overrides`` applied."""
        valid = {f.name for f in fields(self)}
        clean = {k: v for k, v in overrides.items() if v is not None}
        bad = set(clean) - valid
        if bad:
            raise ConfigurationError(f"unknown config key(s): {', '.join(sorted(bad))}")
        return replace(self, **clean)


_CASTS = {
    "digits": int, "max_iterations": int, "T": int, "samples": int, "seed": int, "workers": int,
    "root_tolerance": float, "verify_tol": float, "ts": str, "out": str,
}


def env_overrides(environ=None) -> dict:
    """Settings taken from ``FRACIDENT_<NAME>`` variables (e.g. FRACIDENT_DIGITS)."""
    environ = os.environ if environ is None else environ
    out = {}
    for name, cast in _CASTS.items():
        key = ENV_PREFIX + name.upper()
        if key in environ:
            try:
                out[name] = cast(environ[key])
            except ValueError as exc:
                raise ConfigurationError(f"{key}: cannot parse {environ[key]!r}") from exc
    return out


def config_from_mapping(doc: dict) -> RunConfig:
    try:
        return RunConfig().merged(doc)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from exc
