"""Morse well, its bound-state spectrum, the harmonic limit, and eigenfunctions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

__all__ = [
    "OscillatorParams",
    "EnergySpectrum",
    "morse_potential",
    "morse_spectrum",
    "harmonic_spectrum",
    "morse_wavefunction",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants of the anharmonic well V(x) = D_e (1 - e^{-a(x-x_e)})^2."""

    well_depth: float = 40.0
    width: float = 0.11
    equilibrium: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.well_depth <= 0 or self.width <= 0 or self.mass <= 0 or self.hbar <= 0:
            raise ValueError("well_depth, width, mass and hbar must all be positive")

    @property
    def omega0(self) -> float:
        """Curvature frequency at the well minimum, a*sqrt(2 D_e / m)."""
        return self.width * math.sqrt(2.0 * self.well_depth / self.mass)

    @property
    def depth_parameter(self) -> float:
        """Dimensionless well depth sqrt(2 m D_e)/(a hbar); must exceed 1/2 for binding."""
        return math.sqrt(2.0 * self.mass * self.well_depth) / (self.width * self.hbar)


@dataclass(frozen=True)
class EnergySpectrum:
    """Ordered bound-state energies plus the quantities derived from them."""

    kind: str                       # "morse" | "harmonic"
    levels: np.ndarray              # strictly increasing energies
    omega0: float
    lam: float | None = None        # dimensionless depth, morse only
    n_max: int = field(default=0)   # highest level index

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=float)
        object.__setattr__(self, "levels", levels)
        if self.kind not in ("morse", "harmonic"):
            raise ValueError(f"unknown spectrum kind {self.kind!r}")
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("levels must be a nonempty 1-d array")
        if not np.all(np.diff(levels) > 0):
            raise ValueError("levels must be strictly increasing")

    @property
    def size(self) -> int:
        return self.levels.size


def morse_potential(params: OscillatorParams, x) -> np.ndarray | float:
    """Potential energy D_e (1 - e^{-a(x - x_e)})^2 at position(s) x."""
    x = np.asarray(x, dtype=float)
    v = params.well_depth * (1.0 - np.exp(-params.width * (x - params.equilibrium))) ** 2
    return float(v) if v.ndim == 0 else v


def morse_spectrum(params: OscillatorParams,
                   n_max_override: int | None = None,
                   omega0_override: float | None = None) -> EnergySpectrum:
    """Bound-state energies E_n = hw0(n+1/2) - [hw0(n+1/2)]^2/(4 D_e), n = 0..n_max.

    n_max defaults to floor(lambda - 1/2) with lambda = sqrt(2 m D_e)/(a hbar);
    ``n_max_override`` substitutes a smaller ceiling (some references quote the
    level count rather than the top index).  ``omega0_override`` forces the
    frequency, e.g. to 1 exactly for runs in rounded natural units.
    """
    w0 = params.omega0 if omega0_override is None else float(omega0_override)
    # depth in units of the (possibly rounded) level spacing; fixes the level
    # count so the quantized gaps stay positive up to n_max
    lam = 2.0 * params.well_depth / (params.hbar * w0)
    if lam <= 0.5:
        raise ValueError(f"no bound states: depth parameter {lam:.6g} <= 1/2")
    n_top = int(math.floor(lam - 0.5))
    if n_max_override is not None:
        if not 0 <= n_max_override <= n_top:
            raise ValueError(f"n_max_override must lie in [0, {n_top}]")
        n_top = n_max_override
    n = np.arange(n_top + 1)
    x = params.hbar * w0 * (n + 0.5)
    levels = x - x**2 / (4.0 * params.well_depth)
    return EnergySpectrum(kind="morse", levels=levels, omega0=w0, lam=lam, n_max=n_top)


def harmonic_spectrum(params: OscillatorParams, n_levels: int,
                      omega0_override: float | None = None) -> EnergySpectrum:
    """Equally spaced limit E_n = hbar w0 (n + 1/2) with w0 from the well curvature."""
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    w0 = params.omega0 if omega0_override is None else float(omega0_override)
    n = np.arange(n_levels)
    levels = params.hbar * w0 * (n + 0.5)
    return EnergySpectrum(kind="harmonic", levels=levels, omega0=w0, n_max=n_levels - 1)


def morse_wavefunction(params: OscillatorParams, n: int, x) -> np.ndarray | float:
    """Normalized bound eigenfunction psi_n(x) of the Morse well.

    Evaluated as N_n z^{b/2} e^{-z/2} L_n^{(b)}(z) with z = 2 lam e^{-a(x-x_e)}
    and b = 2 lam - 2n - 1.  The prefactor is assembled in the log domain so
    that deep wells (lam ~ 80, Gamma-function arguments ~ 160) do not overflow.
    """
    lam = params.depth_parameter
    n_top = int(math.floor(lam - 0.5))
    if not 0 <= n <= n_top:
        raise ValueError(f"level {n} outside the bound range [0, {n_top}]")
    a = params.width
    b = 2.0 * lam - 2.0 * n - 1.0
    log_norm = 0.5 * (math.log(a) + math.log(b) + gammaln(n + 1) - gammaln(2.0 * lam - n))

    x = np.asarray(x, dtype=float)
    log_z = math.log(2.0 * lam) - a * (x - params.equilibrium)
    z = np.exp(log_z)
    # exponent of the envelope; underflows cleanly far outside the well
    log_env = log_norm + 0.5 * b * log_z - 0.5 * z
    psi = np.where(log_env > -700.0, np.exp(np.clip(log_env, -745.0, None)), 0.0)
    psi = psi * eval_genlaguerre(n, b, z)
    return float(psi) if psi.ndim == 0 else psi
