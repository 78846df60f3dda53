"""Coherence diagnostics and per-element decoherence times."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DensityMatrix, DephasingMap

__all__ = [
    "MeasureSeries",
    "TauOptions",
    "TauTable",
    "survival",
    "purity",
    "vn_entropy",
    "coherence_measures",
    "measure_series",
    "decoherence_times",
]

_IMAG_TOL = 1e-12


def _real_trace(value: complex, what: str) -> float:
    if abs(value.imag) > _IMAG_TOL:
        raise ValueError(f"{what} has imaginary residue {value.imag:.3e}")
    return value.real


def survival(rho0: DensityMatrix, rhot: DensityMatrix) -> float:
    """Overlap P(t) = Tr[rho(0) rho(t)]."""
    if rho0.dim != rhot.dim:
        raise ValueError("dimension mismatch")
    # Tr[A B] for Hermitian A, B equals <B, A> elementwise
    return _real_trace(complex(np.vdot(rhot.entries, rho0.entries)), "survival")


def purity(rho: DensityMatrix) -> float:
    """D = Tr(rho^2), between 1/N (maximally mixed) and 1 (pure)."""
    return _real_trace(complex(np.trace(rho.entries @ rho.entries)), "purity")


def vn_entropy(rho: DensityMatrix) -> float:
    """von Neumann entropy -Tr(rho ln rho) with 0 ln 0 := 0."""
    lam = np.linalg.eigvalsh(rho.entries)
    if np.min(lam) < -1e-10:
        raise ValueError(f"positivity violation: eigenvalue {np.min(lam):.3e}")
    lam = np.clip(lam, 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def coherence_measures(rho0: DensityMatrix, rhot: DensityMatrix) -> tuple[float, float]:
    """(relative entropy of coherence, 2-norm of coherence) against the initial state."""
    if rho0.dim != rhot.dim:
        raise ValueError("dimension mismatch")
    ce = vn_entropy(rhot) - vn_entropy(rho0)
    c2 = purity(rho0) - purity(rhot)
    return ce, c2


@dataclass(frozen=True)
class MeasureSeries:
    """All scalar diagnostics evaluated along one evolution."""

    times: np.ndarray
    P: np.ndarray
    D: np.ndarray
    S: np.ndarray
    Ce: np.ndarray
    C2: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        for name in ("P", "D", "S", "Ce", "C2"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series {name} length differs from the time grid")


def measure_series(rho0: DensityMatrix, states: list[DensityMatrix], times) -> MeasureSeries:
    ts = np.asarray(times, dtype=float)
    if len(states) != ts.size:
        raise ValueError("one state per time point required")
    P = np.array([survival(rho0, r) for r in states])
    D = np.array([purity(r) for r in states])
    S = np.array([vn_entropy(r) for r in states])
    s0 = vn_entropy(rho0)
    d0 = purity(rho0)
    return MeasureSeries(times=ts, P=P, D=D, S=S, Ce=S - s0, C2=d0 - D)


@dataclass(frozen=True)
class TauOptions:
    """Controls for the decoherence-time integrals."""

    magnitude_threshold: float = 1e-10  # include pairs with |rho_mn(0)| above this
    tail_tol: float = 1e-8              # stop once the integrand has dropped below
    t_max: float | None = None          # horizon; default 1e6 / omega0
    rel_tol: float = 1e-6               # refinement target for each integral


@dataclass(frozen=True)
class TauTable:
    """tau_mn per included off-diagonal pair and their minimum."""

    entries: dict[tuple[int, int], float]
    converged: dict[tuple[int, int], bool]
    included_pairs: tuple[tuple[int, int], ...]
    tau_element: float
    tau_element_pair: tuple[int, int]
    t_max: float

    def tau(self, m: int, n: int) -> float:
        key = (m, n) if m > n else (n, m)
        return self.entries[key]

    def is_converged(self, m: int, n: int) -> bool:
        key = (m, n) if m > n else (n, m)
        return self.converged[key]

    @property
    def all_converged(self) -> bool:
        return all(self.converged.values())

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("m,n,tau,converged\n")
            for (m, n) in self.included_pairs:
                fh.write(f"{m},{n},{self.entries[(m, n)]:.17g},{self.converged[(m, n)]}\n")
            fh.write(f"element,,{self.tau_element:.17g},{self.all_converged}\n")


def _integrate_decay(f, t_lo: float, t_max: float, tail_tol: float,
                     rel_tol: float) -> tuple[float, bool]:
    """integral of a smooth decreasing f on [0, t_max] with f(0) = 1.

    Composite Simpson on a uniform log-time grid, walked outward until
    f < tail_tol (or the horizon); the step is refined until the embedded
    step-doubling estimate meets rel_tol.  Identical grids are produced for
    every pair, so the kernel cache is shared across a whole TauTable.
    """
    def comp_simpson(h: np.ndarray, dx: float) -> float:
        s = 0.0
        i = 0
        while i + 2 < len(h):
            s += dx / 3.0 * (h[i] + 4.0 * h[i + 1] + h[i + 2])
            i += 2
        if i + 1 < len(h):  # odd leftover interval
            s += dx / 2.0 * (h[i] + h[i + 1])
        return s

    per_decade = 64
    while True:
        ratio = 10.0 ** (1.0 / per_decade)
        ts = [t_lo]
        fs = [f(t_lo)]
        converged = fs[-1] < tail_tol
        while not converged and ts[-1] * ratio <= t_max:
            ts.append(ts[-1] * ratio)
            fs.append(f(ts[-1]))
            converged = fs[-1] < tail_tol
        h = np.asarray(fs) * np.asarray(ts)  # substitution t = e^x
        dx = math.log(ratio)
        fine = comp_simpson(h, dx)
        coarse = comp_simpson(h[::2], 2.0 * dx)
        head = 0.5 * (1.0 + fs[0]) * t_lo  # integrand still flat on [0, t_lo]
        err = abs(fine - coarse) / 15.0 + (1.0 - fs[0]) * t_lo
        total = head + fine
        if not converged and ts[-1] < t_max:
            total += 0.5 * (fs[-1] + f(t_max)) * (t_max - ts[-1])
        if err <= rel_tol * total or per_decade >= 512 or len(fs) < 5:
            return total, converged
        per_decade *= 2


def decoherence_times(dmap: DephasingMap, rho0: DensityMatrix,
                      opts: TauOptions = TauOptions()) -> TauTable:
    """tau_mn = integral of e^{-(E_m-E_n)^2 gamma(t)} dt per significant pair.

    The unitary and eta phases drop out of |rho_mn(t)|/|rho_mn(0)|, so only
    the damping factor is integrated.  Diagonal elements never decay and are
    excluded; pairs below the magnitude threshold carry no information.
    """
    bath = dmap.kernels.bath
    if bath.coupling <= 0.0 or bath.zero_temperature:
        raise ValueError("decoherence times require coupling > 0 and kT > 0")
    n = rho0.dim
    if dmap.spectrum.size < n:
        raise ValueError("spectrum smaller than the state")
    mags = np.abs(rho0.entries)
    pairs = [
        (m, k) for m in range(n) for k in range(m)
        if mags[m, k] > opts.magnitude_threshold
    ]
    if not pairs:
        raise ValueError("no off-diagonal element above the magnitude threshold")
    t_max = opts.t_max if opts.t_max is not None else 1e6 / dmap.spectrum.omega0
    e = dmap.spectrum.levels
    entries: dict[tuple[int, int], float] = {}
    conv: dict[tuple[int, int], bool] = {}
    for m, k in pairs:
        gap2 = (e[m] - e[k]) ** 2
        tau, ok = _integrate_decay(
            lambda t: math.exp(-gap2 * dmap.kernels.gamma(t)),
            1e-4, t_max, opts.tail_tol, opts.rel_tol,
        )
        entries[(m, k)] = tau
        conv[(m, k)] = ok
    pair_min = min(entries, key=entries.get)
    return TauTable(
        entries=entries,
        converged=conv,
        included_pairs=tuple(pairs),
        tau_element=entries[pair_min],
        tau_element_pair=pair_min,
        t_max=t_max,
    )
