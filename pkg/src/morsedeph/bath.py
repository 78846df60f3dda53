"""Ohmic spectral density and the dephasing kernels eta(t), gamma(t).

Both kernels are semi-infinite frequency integrals with an oscillatory factor,

    eta(t)   = - int_0^inf dw J(w) sin(w t) / w^2
    gamma(t) =   int_0^inf dw J(w) sin^2(w t/2) coth(beta w / 2) / w^2

with J(w) = Gamma * w * exp(-w/w_c).  They are evaluated by adaptive
quadrature split into three pieces: a smooth head [0, w_a] with the w -> 0
limit substituted analytically, a non-oscillatory envelope integral on
[w_a, w_max] done in log-frequency, and an oscillatory tail summed over
half-period cycles u = w t in [k pi, (k+1) pi] with Wynn-epsilon series
acceleration, whose cost does not grow with t.  At finite temperature the
classical 2/(beta w) part of coth is split off first; without that
subtraction the envelope pieces cancel catastrophically for w_c t >> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

__all__ = [
    "BathParams",
    "KernelTable",
    "QuadratureError",
    "spectral_density",
    "eta",
    "gamma",
    "kernel_table",
]

ETA_ABS_TOL = 1e-10     # guaranteed absolute accuracy of eta
GAMMA_REL_TOL = 1e-8    # guaranteed relative accuracy of gamma
GAMMA_ABS_FLOOR = 1e-12

# requested per-piece tolerances (much tighter than the guarantees above)
_EPSABS = 1e-13
_EPSREL = 1e-11
_LIMIT = 300

# below this fraction of w_c the integrand is replaced by its w -> 0 limit
_ENDPOINT_FRACTION = 1e-12


class QuadratureError(RuntimeError):
    """Raised when the accumulated quadrature error estimate exceeds the contract."""

    def __init__(self, kernel: str, t: float, achieved: float, required: float):
        self.kernel = kernel
        self.t = t
        self.achieved = achieved
        self.required = required
        super().__init__(
            f"{kernel}(t={t:g}) did not converge: error estimate {achieved:.3e} "
            f"exceeds required {required:.3e}"
        )


@dataclass(frozen=True)
class BathParams:
    """Ohmic bath: coupling strength, exponential cutoff, temperature."""

    coupling: float = 0.01
    cutoff: float = 10.0
    kT: float = 0.1
    zero_temperature: bool = False

    def __post_init__(self):
        if self.coupling < 0:
            raise ValueError("coupling must be >= 0")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be > 0")
        if not self.zero_temperature and self.kT <= 0:
            raise ValueError("kT must be > 0 (use zero_temperature=True for T = 0)")

    @property
    def beta(self) -> float:
        if self.zero_temperature:
            return math.inf
        return 1.0 / self.kT


@dataclass(frozen=True)
class KernelTable:
    """eta and gamma tabulated on a fixed time grid."""

    times: np.ndarray
    eta: np.ndarray
    gamma: np.ndarray
    bath: BathParams

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("t,eta,gamma\n")
            for t, e, g in zip(self.times, self.eta, self.gamma):
                fh.write(f"{t:.17g},{e:.17g},{g:.17g}\n")


def spectral_density(bath: BathParams, omega) -> np.ndarray | float:
    """Ohmic density J(w) = Gamma * w * exp(-w / w_c)."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("spectral density is defined for omega >= 0 only")
    j = bath.coupling * w * np.exp(-w / bath.cutoff)
    return float(j) if j.ndim == 0 else j


def _coth(x: float) -> float:
    # series below 1e-4 avoids cancellation at the integrable endpoint
    if x < 1e-4:
        return 1.0 / x + x / 3.0 - x**3 / 45.0
    return 1.0 / math.tanh(x)


def _coth_quantum(x: float) -> float:
    """coth(x) - 1/x: the part of coth that survives at zero temperature."""
    if x < 1e-4:
        return x / 3.0 - x**3 / 45.0
    return 1.0 / math.tanh(x) - 1.0 / x


def _log_envelope_integral(env, wa: float, wmax: float) -> tuple[float, float]:
    """integral of a smooth positive envelope on [wa, wmax], in log-frequency."""
    val, err = quad(
        lambda u: env(math.exp(u)) * math.exp(u),
        math.log(wa), math.log(wmax),
        epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT,
    )
    return val, err


def _wynn_best(partials: list[float]) -> tuple[float, float]:
    """Wynn epsilon acceleration of a partial-sum sequence.

    Returns the most converged even-column estimate and the spread between
    the last two even columns as an error gauge.
    """
    n = len(partials)
    e_prev = [0.0] * (n + 1)
    e_curr = list(partials)
    best = e_curr[-1]
    best_diff = math.inf
    prev_even_last = e_curr[-1]
    for k in range(1, n):
        e_next = []
        for j in range(len(e_curr) - 1):
            d = e_curr[j + 1] - e_curr[j]
            if d == 0.0:
                return e_curr[j + 1], 0.0
            e_next.append(e_prev[j + 1] + 1.0 / d)
        e_prev, e_curr = e_curr, e_next
        if k % 2 == 0 and e_curr:
            last = e_curr[-1]
            if math.isfinite(last):
                diff = abs(last - prev_even_last)
                if diff < best_diff:
                    best, best_diff = last, diff
                elif best_diff < math.inf and diff > 100.0 * best_diff:
                    break  # deeper columns only amplify roundoff
                prev_even_last = last
    return best, best_diff


def _oscillatory_tail(env, t: float, wa: float, trig: str, abs_tol: float,
                      max_cycles: int = 600) -> tuple[float, float]:
    """integral of env(w) * trig(w t) on [wa, inf) to absolute accuracy abs_tol.

    Summed over half-period cycles in u = w t; the alternating partial sums
    are extrapolated with Wynn's epsilon algorithm, so slowly decaying
    envelopes converge in a few dozen cycles regardless of w_c t.
    """
    a = wa * t
    tri = math.cos if trig == "cos" else math.sin

    def g(u):
        return env(u / t) / t * tri(u)

    cyc_eps = max(abs_tol / 400.0, 1e-300)
    s = qerr = abs_sum = 0.0
    partials: list[float] = []
    est_prev = None
    for k in range(max_cycles):
        c, e = quad(g, a + k * math.pi, a + (k + 1) * math.pi,
                    epsabs=cyc_eps, epsrel=1e-12, limit=30)
        s += c
        qerr += e
        abs_sum += abs(c)
        partials.append(s)
        if abs(c) + qerr <= abs_tol:
            return s, qerr + abs(c)  # alternating-series remainder bound
        if k >= 11 and k % 4 == 3:
            est, diff = _wynn_best(partials[-32:])
            err = diff + 1e-15 * abs_sum + qerr
            if est_prev is not None:
                err += abs(est - est_prev)
            if err <= abs_tol:
                return est, err
            est_prev = est
    est, diff = _wynn_best(partials[-32:])
    return est, diff + qerr + 1e-15 * abs_sum


def eta(bath: BathParams, t: float) -> float:
    """Phase kernel: adaptive quadrature of -Gamma int_0^inf e^{-w/w_c} sin(w t)/w dw."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0 or bath.coupling == 0.0:
        return 0.0
    wc = bath.cutoff
    wa = min(math.pi / t, wc)
    w_eps = _ENDPOINT_FRACTION * wc

    def head(w):
        if w < w_eps:
            return t  # limit of sin(w t)/w at w -> 0
        return math.exp(-w / wc) * math.sin(w * t) / w

    v1, e1 = quad(head, 0.0, wa, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT)
    tail_tol = 0.3 * ETA_ABS_TOL / max(bath.coupling, 1e-300)
    v2, e2 = _oscillatory_tail(lambda w: math.exp(-w / wc) / w, t, wa, "sin", tail_tol)
    value = -bath.coupling * (v1 + v2)
    achieved = bath.coupling * (e1 + e2)
    if achieved > ETA_ABS_TOL:
        raise QuadratureError("eta", t, achieved, ETA_ABS_TOL)
    return value


def gamma(bath: BathParams, t: float) -> float:
    """Damping kernel: adaptive quadrature of
    Gamma int_0^inf e^{-w/w_c} coth(beta w/2) sin^2(w t/2)/w dw.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0 or bath.coupling == 0.0:
        return 0.0
    wc = bath.cutoff
    wa = min(math.pi / t, wc)
    wmax = wc * max(40.0, 40.0 / (wc * t))
    w_eps = _ENDPOINT_FRACTION * wc

    if bath.zero_temperature:
        def head(w):
            if w < w_eps:
                return w * (t * t / 4.0)  # limit of sin^2(w t/2)/w
            return math.exp(-w / wc) * math.sin(w * t / 2.0) ** 2 / w

        envelopes = [(1.0, lambda w: math.exp(-w / wc) / w)]
    else:
        beta = bath.beta

        def head(w):
            if w < w_eps:
                return t * t / (2.0 * beta)  # limit of the full integrand
            return math.exp(-w / wc) * _coth(beta * w / 2.0) * math.sin(w * t / 2.0) ** 2 / w

        # coth split into its classical 2/(beta w) piece, reattached with
        # weight 2 kT, and the quantum remainder; integrating the pieces
        # separately keeps the Fourier tail free of the 1/w^2 blow-up
        envelopes = [
            (1.0, lambda w: math.exp(-w / wc) * _coth_quantum(beta * w / 2.0) / w),
            (2.0 * bath.kT, lambda w: math.exp(-w / wc) / (w * w)),
        ]

    floor = GAMMA_ABS_FLOOR * (1.0 if bath.zero_temperature else max(1.0, bath.kT))
    v1, e1 = quad(head, 0.0, wa, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT)
    value, achieved = v1, e1
    if t * wc <= 0.5:
        # less than a fraction of an oscillation across the support: the
        # (1 - cos) split would cancel catastrophically, integrate directly
        for weight, env in envelopes:
            v, e = quad(lambda w: env(w) * math.sin(w * t / 2.0) ** 2,
                        wa, wmax, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT)
            value += weight * v
            achieved += weight * e
    else:
        # sin^2(w t/2) = (1 - cos(w t))/2; cos part via the oscillatory tail
        plains = [_log_envelope_integral(env, wa, wmax) for _, env in envelopes]
        scale = value + sum(w * 0.5 * p[0] for (w, _), p in zip(envelopes, plains))
        budget = max(GAMMA_REL_TOL * scale, floor)
        for (weight, env), (v2, e2) in zip(envelopes, plains):
            tail_tol = 0.5 * budget / (weight * len(envelopes))
            v3, e3 = _oscillatory_tail(env, t, wa, "cos", tail_tol)
            value += weight * 0.5 * (v2 - v3)
            achieved += weight * 0.5 * (e2 + e3)
    value *= bath.coupling
    achieved *= bath.coupling

    required = max(GAMMA_REL_TOL * abs(value), bath.coupling * floor, GAMMA_ABS_FLOOR)
    if achieved > required:
        raise QuadratureError("gamma", t, achieved, required)
    return value


def kernel_table(bath: BathParams, times) -> KernelTable:
    """Evaluate both kernels on an ordered, nonnegative time grid."""
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1:
        raise ValueError("times must be one-dimensional")
    if ts.size and (np.any(ts < 0) or np.any(np.diff(ts) <= 0)):
        raise ValueError("times must be nonnegative and strictly increasing")
    etas = np.array([eta(bath, t) for t in ts])
    gammas = np.array([gamma(bath, t) for t in ts])
    if ts.size:
        slack = 1e-10 * max(1.0, float(np.max(np.abs(gammas))))
        if np.any(np.diff(gammas) < -slack):
            raise RuntimeError("gamma failed to be nondecreasing on the grid")
        if np.any(np.diff(etas) > slack):
            raise RuntimeError("eta failed to be nonincreasing on the grid")
        if np.any(gammas < -slack) or np.any(etas > slack):
            raise RuntimeError("kernel sign invariant violated")
    return KernelTable(times=ts, eta=etas, gamma=gammas, bath=bath)
