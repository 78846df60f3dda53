"""Initial Gaussian superposition state and the exact dephasing map.

In the energy eigenbasis the open-system evolution multiplies each matrix
element by a phase and a Gaussian damping factor,

    rho_nm(t) = e^{-i(E_n-E_m) t} e^{+i(E_n^2-E_m^2) eta(t)}
                e^{-(E_n-E_m)^2 gamma(t)} rho_nm(0),

so populations are exactly conserved and only off-diagonal coherences decay.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bath import BathParams, KernelTable
from .bath import eta as _eta_quad
from .bath import gamma as _gamma_quad
from .oscillator import EnergySpectrum

__all__ = [
    "DensityMatrix",
    "CoherentStateSpec",
    "KernelEvaluator",
    "DephasingMap",
    "coherent_state",
    "evolve",
    "evolve_series",
]

HERMITICITY_TOL = 1e-14
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Complex Hermitian unit-trace matrix in the energy eigenbasis."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError("density matrix trace differs from 1")
        if np.min(np.linalg.eigvalsh(m)) < -POSITIVITY_TOL:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def populations(self) -> np.ndarray:
        return np.diag(self.entries).real.copy()

    def write_text(self, path) -> None:
        """Row-major plain-text snapshot; each element as a "re,im" pair."""
        with open(path, "w") as fh:
            fh.write(f"{self.dim}\n")
            for row in self.entries:
                fh.write(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) + "\n")

    @classmethod
    def read_text(cls, path) -> "DensityMatrix":
        with open(path) as fh:
            n = int(fh.readline())
            rows = []
            for _ in range(n):
                parts = fh.readline().split()
                rows.append([complex(*map(float, p.split(","))) for p in parts])
        return cls(np.array(rows, dtype=complex))


@dataclass(frozen=True)
class CoherentStateSpec:
    """Gaussian weights over energy levels: amplitudes e^{-(n-mean)^2/4 spread^2}."""

    mean: float = 2.4
    spread: float = 0.5
    indices: tuple[int, ...] | None = None  # default: every level of the spectrum

    def __post_init__(self):
        if self.spread <= 0:
            raise ValueError("spread must be positive")
        if self.indices is not None:
            idx = tuple(sorted(set(int(i) for i in self.indices)))
            if not idx:
                raise ValueError("index set must be nonempty")
            object.__setattr__(self, "indices", idx)


def coherent_state(spec: CoherentStateSpec, spectrum: EnergySpectrum,
                   trunc_eps: float = 1e-12) -> DensityMatrix:
    """Pure-state matrix rho_nm = c_n c_m of the normalized Gaussian superposition.

    The basis is cut at the smallest size N whose excluded tail of normalized
    weights is below ``trunc_eps``; the kept amplitudes are renormalized.
    """
    if spec.indices is None:
        idx = np.arange(spectrum.size)
    else:
        idx = np.asarray(spec.indices, dtype=int)
        if idx.min() < 0 or idx.max() >= spectrum.size:
            raise ValueError("index set extends beyond the spectrum")
    weights = np.exp(-((idx - spec.mean) ** 2) / (2.0 * spec.spread**2))
    total = weights.sum()
    if total <= 0.0:
        raise ValueError("all level weights underflowed to zero")
    tail = 1.0 - np.cumsum(weights) / total  # excluded mass if cut after each level
    keep = int(np.searchsorted(tail < trunc_eps, True)) + 1
    if trunc_eps >= 1.0:
        raise ValueError("trunc_eps leaves no level in the state")
    kept = idx[:keep]
    if not np.array_equal(kept, np.arange(keep)):
        raise ValueError("truncated index set must form a prefix of the eigenbasis")
    c = np.sqrt(weights[:keep] / weights[:keep].sum())
    return DensityMatrix(np.outer(c, c).astype(complex))


class KernelEvaluator:
    """Bath kernels with a lookup table and a memo of quadrature results.

    Values are taken from the table only on exact grid matches; any other
    time goes straight to the adaptive quadrature (no silent interpolation).
    """

    def __init__(self, bath: BathParams, table: KernelTable | None = None):
        self.bath = bath
        self._eta_cache: dict[float, float] = {}
        self._gamma_cache: dict[float, float] = {}
        if table is not None:
            if table.bath != bath:
                raise ValueError("kernel table was computed for a different bath")
            self._eta_cache.update(zip(table.times.tolist(), table.eta.tolist()))
            self._gamma_cache.update(zip(table.times.tolist(), table.gamma.tolist()))

    def eta(self, t: float) -> float:
        v = self._eta_cache.get(t)
        if v is None:
            v = _eta_quad(self.bath, t)
            self._eta_cache[t] = v
        return v

    def gamma(self, t: float) -> float:
        v = self._gamma_cache.get(t)
        if v is None:
            v = _gamma_quad(self.bath, t)
            self._gamma_cache[t] = v
        return v


@dataclass(frozen=True)
class DephasingMap:
    """Energy spectrum plus bath kernels: everything the dephasing factor needs."""

    spectrum: EnergySpectrum
    kernels: KernelEvaluator

    @classmethod
    def for_bath(cls, spectrum: EnergySpectrum, bath: BathParams,
                 table: KernelTable | None = None) -> "DephasingMap":
        return cls(spectrum=spectrum, kernels=KernelEvaluator(bath, table))


def evolve(rho0: DensityMatrix, dmap: DephasingMap, t: float) -> DensityMatrix:
    """Apply the dephasing factors at time t; populations stay bit-identical."""
    if t < 0:
        raise ValueError("t must be >= 0")
    n = rho0.dim
    if dmap.spectrum.size < n:
        raise ValueError(
            f"spectrum has {dmap.spectrum.size} levels but the state needs {n}"
        )
    e = dmap.spectrum.levels[:n]
    d1 = e[:, None] - e[None, :]
    d2 = (e**2)[:, None] - (e**2)[None, :]
    g = dmap.kernels.gamma(t)
    ph = dmap.kernels.eta(t)
    factor = np.exp((-1j * t) * d1 + (1j * ph) * d2 - g * d1**2)
    return DensityMatrix(factor * rho0.entries)


def evolve_series(rho0: DensityMatrix, dmap: DephasingMap, times) -> list[DensityMatrix]:
    """One evolved matrix per grid point (the grid must be ordered)."""
    ts = np.asarray(times, dtype=float)
    if ts.size and np.any(np.diff(ts) <= 0):
        raise ValueError("times must be strictly increasing")
    return [evolve(rho0, dmap, float(t)) for t in ts]
