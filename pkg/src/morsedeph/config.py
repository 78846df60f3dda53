"""Run configuration: plain-text dotted-key files with reference-setup defaults."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bath import BathParams
from .dynamics import CoherentStateSpec
from .measures import TauOptions
from .oscillator import EnergySpectrum, OscillatorParams, harmonic_spectrum, morse_spectrum

__all__ = ["RunConfig", "SweepSpec", "parse_config", "serialize_config", "apply_overrides"]


@dataclass(frozen=True)
class RunConfig:
    """Everything one reproduction run needs; defaults match the reference setup."""

    # oscillator
    well_depth: float = 40.0
    width: float = 0.11
    equilibrium: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0
    omega0_mode: str = "exact"          # "exact" | "unit" (force omega0 = 1)
    n_max_override: int | None = None
    # bath; cutoff None means 10 * omega0
    coupling: float = 0.01
    cutoff: float | None = None
    kT: float = 0.01
    zero_temperature: bool = False
    # initial state
    state_mean: float = 2.4
    state_spread: float = 0.5
    # time grid, in omega0*t units
    grid_kind: str = "log"              # "log" | "linear"
    grid_start: float = 1e-2
    grid_stop: float = 1e4
    grid_count: int = 400
    # numerics
    truncation_eps: float = 1e-12
    tau_magnitude_threshold: float = 1e-10
    tau_tail_tol: float = 1e-8
    tau_t_max: float = 1e6              # omega0*t units
    # output
    out_dir: str = "out"

    def __post_init__(self):
        if self.omega0_mode not in ("exact", "unit"):
            raise ValueError("omega0_mode must be 'exact' or 'unit'")
        if self.grid_kind not in ("log", "linear"):
            raise ValueError("grid_kind must be 'log' or 'linear'")
        if not (0 < self.grid_start < self.grid_stop):
            raise ValueError("grid bounds must be positive and ordered")
        if self.grid_count < 2:
            raise ValueError("grid_count must be >= 2")

    # ---- derived pieces ----------------------------------------------------

    def oscillator(self) -> OscillatorParams:
        return OscillatorParams(
            well_depth=self.well_depth, width=self.width,
            equilibrium=self.equilibrium, mass=self.mass, hbar=self.hbar,
        )

    @property
    def omega0(self) -> float:
        return 1.0 if self.omega0_mode == "unit" else self.oscillator().omega0

    def bath(self) -> BathParams:
        cutoff = self.cutoff if self.cutoff is not None else 10.0 * self.omega0
        return BathParams(
            coupling=self.coupling, cutoff=cutoff, kT=self.kT,
            zero_temperature=self.zero_temperature,
        )

    def state_spec(self) -> CoherentStateSpec:
        return CoherentStateSpec(mean=self.state_mean, spread=self.state_spread)

    def spectrum(self, kind: str = "morse") -> EnergySpectrum:
        w0 = 1.0 if self.omega0_mode == "unit" else None
        if kind == "morse":
            return morse_spectrum(self.oscillator(), n_max_override=self.n_max_override,
                                  omega0_override=w0)
        if kind == "harmonic":
            n_levels = self.spectrum("morse").size
            return harmonic_spectrum(self.oscillator(), n_levels, omega0_override=w0)
        raise ValueError(f"unknown spectrum kind {kind!r}")

    def time_grid(self) -> np.ndarray:
        """Grid in omega0*t units."""
        if self.grid_kind == "log":
            return np.logspace(math.log10(self.grid_start), math.log10(self.grid_stop),
                               self.grid_count)
        return np.linspace(self.grid_start, self.grid_stop, self.grid_count)

    def physical_times(self) -> np.ndarray:
        return self.time_grid() / self.omega0

    def tau_options(self) -> TauOptions:
        return TauOptions(
            magnitude_threshold=self.tau_magnitude_threshold,
            tail_tol=self.tau_tail_tol,
            t_max=self.tau_t_max / self.omega0,
        )


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep: vary kT or the coupling, keep everything else."""

    parameter: str                      # "kT" | "coupling"
    values: tuple[float, ...]
    base: RunConfig = field(default_factory=RunConfig)

    def __post_init__(self):
        if self.parameter not in ("kT", "coupling"):
            raise ValueError("swept parameter must be 'kT' or 'coupling'")
        vals = tuple(float(v) for v in self.values)
        if not vals or any(v <= 0 for v in vals):
            raise ValueError("sweep values must be nonempty and positive")
        object.__setattr__(self, "values", vals)

    def configs(self) -> list[RunConfig]:
        return [replace(self.base, **{self.parameter: v}) for v in self.values]


# ---- plain-text round-trip ---------------------------------------------------

_SCHEMA: dict[str, tuple] = {
    "oscillator.well_depth": ("well_depth", float),
    "oscillator.width": ("width", float),
    "oscillator.equilibrium": ("equilibrium", float),
    "oscillator.mass": ("mass", float),
    "oscillator.hbar": ("hbar", float),
    "oscillator.omega0_mode": ("omega0_mode", str),
    "oscillator.n_max_override": ("n_max_override", "optional_int"),
    "bath.coupling": ("coupling", float),
    "bath.cutoff": ("cutoff", "optional_float"),
    "bath.kT": ("kT", float),
    "bath.zero_temperature": ("zero_temperature", bool),
    "state.mean": ("state_mean", float),
    "state.spread": ("state_spread", float),
    "grid.kind": ("grid_kind", str),
    "grid.start": ("grid_start", float),
    "grid.stop": ("grid_stop", float),
    "grid.count": ("grid_count", int),
    "truncation.eps": ("truncation_eps", float),
    "tau.magnitude_threshold": ("tau_magnitude_threshold", float),
    "tau.tail_tol": ("tau_tail_tol", float),
    "tau.t_max": ("tau_t_max", float),
    "out.dir": ("out_dir", str),
}

_FIELD_TO_KEY = {fieldname: key for key, (fieldname, _) in _SCHEMA.items()}


def _parse_value(key: str, raw: str):
    _, kind = _SCHEMA[key]
    raw = raw.strip()
    if kind is float:
        return float(raw)
    if kind is int:
        return int(raw)
    if kind is bool:
        if raw.lower() in ("true", "yes", "1"):
            return True
        if raw.lower() in ("false", "no", "0"):
            return False
        raise ValueError(f"config key {key!r}: cannot read {raw!r} as a boolean")
    if kind == "optional_float":
        return None if raw.lower() in ("auto", "none") else float(raw)
    if kind == "optional_int":
        return None if raw.lower() in ("auto", "none") else int(raw)
    return raw


def _format_value(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text: str) -> RunConfig:
    """Read `key = value` lines; '#' starts a comment; unknown keys are fatal."""
    fields = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _SCHEMA:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        fieldname, _ = _SCHEMA[key]
        fields[fieldname] = _parse_value(key, raw)
    return RunConfig(**fields)


def serialize_config(config: RunConfig) -> str:
    lines = []
    for key, (fieldname, _) in _SCHEMA.items():
        lines.append(f"{key} = {_format_value(getattr(config, fieldname))}")
    return "\n".join(lines) + "\n"


def apply_overrides(config: RunConfig, overrides: list[str]) -> RunConfig:
    """Apply `key=value` strings (the CLI --set flag) on top of a config."""
    fields = {}
    for item in overrides:
        if "=" not in item:
            raise ValueError(f"override {item!r} is not of the form key=value")
        key, raw = (part.strip() for part in item.split("=", 1))
        if key not in _SCHEMA:
            raise ValueError(f"unknown config key {key!r}")
        fieldname, _ = _SCHEMA[key]
        fields[fieldname] = _parse_value(key, raw)
    return replace(config, **fields)
