"""Run configuration: flat ``key = value`` files plus CLI overrides."""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Tuple

from ..errors import ConfigError
from ..exact import INF, Occupancy, as_occupancy
from ..semigroup import EXPLICIT_LIST, LOG_MODEL

_SECTION = "run"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    kind: str = LOG_MODEL
    rho_values: Tuple[float, ...] = (1.0,)
    gamma: float = 0.0
    delta: float = 1.0
    degrees: Tuple[float, ...] = ()
    k_set: Tuple[Occupancy, ...] = (INF,)
    x_grid: Tuple[float, ...] = ()
    tol: float = 1e-10
    max_primes: int = 10**8
    out: Optional[str] = None
    format: str = "csv"
    plot: Optional[str] = None
    threads: int = 1

    def validate(self) -> "RunConfig":
        if self.kind not in (LOG_MODEL, EXPLICIT_LIST):
            raise ConfigError(f"unknown model kind {self.kind!r}")
        if not self.rho_values:
            raise ConfigError("rho list is empty")
        if any(not r > 0 for r in self.rho_values):
            raise ConfigError("rho values must be positive")
        if self.kind == EXPLICIT_LIST and not self.degrees:
            raise ConfigError("explicit model needs a degree list")
        if not self.k_set:
            raise ConfigError("k set is empty")
        if not self.x_grid:
            raise ConfigError("x grid is empty")
        if any(not (x >= 0 and math.isfinite(x)) for x in self.x_grid):
            raise ConfigError("x grid values must be finite and nonnegative")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.max_primes < 1:
            raise ConfigError("max_primes must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        return self

    def update(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def fig1_config() -> RunConfig:
    """Exact-vs-asymptotic comparison grid: three rho values, k in {2, inf}, x = 1..7."""
    return RunConfig(
        rho_values=(0.5, 1.0, 2.0),
        k_set=(2, INF),
        x_grid=tuple(float(x) for x in range(1, 8)),
    )


def ksweep_config() -> RunConfig:
    """Dependence on the occupancy bound at x = 7."""
    return RunConfig(
        rho_values=(0.5, 1.0, 2.0),
        k_set=tuple(range(2, 9)),
        x_grid=(7.0,),
    )


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(t) for t in text.replace(",", " ").split())


def parse_grid(text: str) -> Tuple[float, ...]:
    """``a:b:step`` (inclusive of b up to rounding) or a comma/space list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ConfigError(f"grid must look like a:b:step, got {text!r}")
            a, b, step = (float(p) for p in parts)
            if not step > 0:
                raise ConfigError("grid step must be positive")
            n = math.floor((b - a) / step + 1e-9)
            if n < 0:
                raise ConfigError(f"empty grid {text!r}")
            return tuple(round(a + i * step, 12) for i in range(n + 1))
        return _floats(text)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad grid {text!r}: {exc}") from None


def parse_k_set(text: str) -> Tuple[Occupancy, ...]:
    text = text.strip()
    try:
        if ":" in text and "inf" not in text:
            a, b = (int(p) for p in text.split(":"))
            return tuple(as_occupancy(k) for k in range(a, b + 1))
        return tuple(as_occupancy(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise ConfigError(f"bad k set {text!r}: {exc}") from None


def load_config(path, base: Optional[RunConfig] = None) -> RunConfig:
    """Read a flat key-value file (``key = value`` per line, ``#`` comments)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(f"[{_SECTION}]\n" + text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    raw = dict(parser[_SECTION])
    cfg = base or RunConfig()
    fields = {}
    try:
        for key, value in raw.items():
            if key == "kind":
                fields["kind"] = value.strip()
            elif key in ("rho", "rho_values"):
                fields["rho_values"] = _floats(value)
            elif key in ("gamma", "delta", "tol"):
                fields[key] = float(value)
            elif key == "degrees":
                fields["degrees"] = _floats(value)
            elif key in ("k", "k_set"):
                fields["k_set"] = parse_k_set(value)
            elif key in ("x", "x_grid"):
                fields["x_grid"] = parse_grid(value)
            elif key in ("max_primes", "threads"):
                fields[key] = int(float(value))
            elif key in ("out", "plot", "format"):
                fields[key] = value.strip()
            else:
                raise ConfigError(f"{path}: unknown key {key!r}")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None
    return replace(cfg, **fields)
