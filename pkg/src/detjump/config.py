"""Run configuration: flat key-value files, validation, round-trip emission.

Grammar (one ``key: value`` pair per line, ``#`` starts a comment):

    system:        two_level | three_level
    shape:         gaussian | sech | lorentzian
    width:         positive float, the pulse width T (the time unit)
    omega0:        grid of Omega0*T values (see below)
    delta0:        grid of Delta0*T values
    window:        t_start,t_end in units of T, must contain 0
    tolerance:     local integrator error target
    tau_jump:      detuning-jump smoothing time in units of T (0 = ideal step)
    initial_state: 1 | 2 | 3 (3 only for three_level)
    outputs:       comma list of final_populations, trajectory,
                   residual_map, analytic_overlay

A grid is a single value ``5``, a comma list ``1,2,5``, or an inclusive
range ``start:stop:step`` (``0.1:10:0.1`` gives 100 values).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace

__all__ = ["ConfigError", "RunConfig", "parse_grid", "parse_config", "emit_config"]

SYSTEMS = ("two_level", "three_level")
SHAPES = ("gaussian", "sech", "lorentzian")
OUTPUT_KINDS = ("final_populations", "trajectory", "residual_map", "analytic_overlay")

_DEFAULT_GRID = "0.1:10:0.1"


class ConfigError(ValueError):
    pass


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse a grid spec into a tuple of strictly positive floats."""
    text = text.strip()
    if not text:
        raise ConfigError("empty grid specification")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range grid must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise ConfigError(f"bad number in grid {text!r}") from exc
        if step <= 0 or stop < start:
            raise ConfigError(f"need stop >= start and step > 0 in {text!r}")
        # half-step slack makes the stop value inclusive despite rounding
        n = int(math.floor((stop - start) / step + 0.5)) + 1
        values = tuple(start + k * step for k in range(n))
    else:
        try:
            values = tuple(float(p) for p in text.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad number in grid {text!r}") from exc
    if not values:
        raise ConfigError("empty grid specification")
    for v in values:
        if not (math.isfinite(v) and v > 0):
            raise ConfigError(f"grid values must be positive, got {v!r} in {text!r}")
    return values


def _format_grid(values: tuple[float, ...]) -> str:
    return ",".join(repr(v) for v in values)


@dataclass(frozen=True)
class RunConfig:
    system: str = "two_level"
    shape: str = "gaussian"
    width: float = 1.0
    omega0: tuple[float, ...] = parse_grid(_DEFAULT_GRID)
    delta0: tuple[float, ...] = (5.0,)
    window: tuple[float, float] = (-20.0, 20.0)
    tolerance: float = 1e-10
    tau_jump: float = 0.0
    initial_state: int = 1
    outputs: tuple[str, ...] = ("final_populations", "analytic_overlay", "residual_map")

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ConfigError(f"system must be one of {SYSTEMS}, got {self.system!r}")
        if self.shape not in SHAPES:
            raise ConfigError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        if not (math.isfinite(self.width) and self.width > 0):
            raise ConfigError(f"width must be positive, got {self.width!r}")
        for name in ("omega0", "delta0"):
            grid = getattr(self, name)
            if not grid:
                raise ConfigError(f"{name} grid is empty")
            for v in grid:
                if not (math.isfinite(v) and v > 0):
                    raise ConfigError(f"{name} values must be positive, got {v!r}")
        lo, hi = self.window
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < 0.0 < hi):
            raise ConfigError(f"window must contain 0, got {self.window!r}")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ConfigError(f"tolerance must be positive, got {self.tolerance!r}")
        if not (math.isfinite(self.tau_jump) and self.tau_jump >= 0):
            raise ConfigError(f"tau_jump must be >= 0, got {self.tau_jump!r}")
        dim = 2 if self.system == "two_level" else 3
        if self.initial_state not in range(1, dim + 1):
            raise ConfigError(
                f"initial_state must be in 1..{dim} for {self.system}, "
                f"got {self.initial_state!r}"
            )
        for kind in self.outputs:
            if kind not in OUTPUT_KINDS:
                raise ConfigError(
                    f"unknown output kind {kind!r}; valid kinds: {OUTPUT_KINDS}"
                )


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"window must be 't_start,t_end', got {text!r}")
    return (float(parts[0]), float(parts[1]))


_PARSERS = {
    "system": str,
    "shape": str,
    "width": float,
    "omega0": parse_grid,
    "delta0": parse_grid,
    "window": _parse_window,
    "tolerance": float,
    "tau_jump": float,
    "initial_state": int,
    "outputs": lambda s: tuple(p.strip() for p in s.split(",") if p.strip()),
}


def _parse_text(text: str, source: str) -> RunConfig:
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key: value', got {raw!r}")
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key not in _PARSERS:
            raise ConfigError(
                f"{source}:{lineno}: unknown key {key!r}; "
                f"valid keys: {', '.join(sorted(_PARSERS))}"
            )
        if key in overrides:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            overrides[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
    try:
        return RunConfig(**overrides)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def parse_config(source: str | os.PathLike) -> RunConfig:
    """Build a validated RunConfig from a file path or inline text.

    Single-line arguments naming an existing file are read from disk;
    anything else is parsed as config text.  Absent keys take the
    documented defaults.
    """
    if isinstance(source, os.PathLike):
        path = os.fspath(source)
        with open(path, "r", encoding="utf-8") as fh:
            return _parse_text(fh.read(), path)
    if "\n" not in source and os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_text(fh.read(), source)
    return _parse_text(source, "<config>")


def emit_config(config: RunConfig) -> str:
    """Serialize every field; parse_config(emit_config(c)) == c."""
    lines = []
    for f in fields(config):
        value = getattr(config, f.name)
        if f.name in ("omega0", "delta0"):
            rendered = _format_grid(value)
        elif f.name == "window":
            rendered = f"{value[0]!r},{value[1]!r}"
        elif f.name == "outputs":
            rendered = ",".join(value)
        elif isinstance(value, float):
            rendered = repr(value)
        else:
            rendered = str(value)
        lines.append(f"{f.name}: {rendered}")
    return "\n".join(lines) + "\n"


def with_overrides(config: RunConfig, **kwargs) -> RunConfig:
    """replace() ignoring None values; validation re-runs automatically."""
    return replace(config, **{k: v for k, v in kwargs.items() if v is not None})
