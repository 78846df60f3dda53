import math

import numpy as np
import pytest

from morsedeph.bath import (
    BathParams,
    QuadratureError,
    eta,
    gamma,
    kernel_table,
    spectral_density,
)

OHMIC = BathParams(coupling=0.01, cutoff=10.0, kT=0.1)


def eta_closed_form(bath, t):
    """Analytic integral of the phase kernel, independent of the quadrature."""
    return -bath.coupling * math.atan(bath.cutoff * t)


def gamma_zero_t_closed_form(bath, t):
    """Analytic zero-temperature damping kernel."""
    return 0.25 * bath.coupling * math.log1p((bath.cutoff * t) ** 2)


def test_bath_validation():
    with pytest.raises(ValueError):
        BathParams(coupling=-1.0)
    with pytest.raises(ValueError):
        BathParams(cutoff=0.0)
    with pytest.raises(ValueError):
        BathParams(kT=0.0)
    BathParams(kT=-1.0, zero_temperature=True)  # kT ignored at T = 0


def test_spectral_density_values():
    assert spectral_density(OHMIC, 0.0) == 0.0
    assert spectral_density(OHMIC, 10.0) == pytest.approx(0.036787944117144232, rel=1e-14)
    with pytest.raises(ValueError):
        spectral_density(OHMIC, -1.0)


def test_spectral_density_peak_at_cutoff():
    b = BathParams(coupling=1.0, cutoff=10.0, kT=1.0)
    w = np.linspace(0.0, 200.0, 20001)
    j = spectral_density(b, w)
    assert abs(w[np.argmax(j)] - b.cutoff) < 0.02
    assert np.max(j) == pytest.approx(b.coupling * b.cutoff / math.e, rel=1e-4)


def test_eta_zero_and_sign():
    assert eta(OHMIC, 0.0) == 0.0
    with pytest.raises(ValueError):
        eta(OHMIC, -1.0)


def test_eta_against_closed_form():
    assert eta(OHMIC, 1.0) == pytest.approx(-0.014711276743037346, abs=1e-11)
    for t in np.logspace(-2, 2, 30):
        assert eta(OHMIC, float(t)) == pytest.approx(eta_closed_form(OHMIC, t), abs=1e-10)


def test_eta_long_time_limit():
    assert eta(OHMIC, 1e6) == pytest.approx(-OHMIC.coupling * math.pi / 2, abs=1e-8)


def test_gamma_zero_temperature_oracle():
    bz = BathParams(coupling=0.01, cutoff=10.0, kT=1.0, zero_temperature=True)
    assert gamma(bz, 1.0) == pytest.approx(0.011537801292103149, rel=1e-9)
    for t in np.logspace(-3, 3, 30):
        ref = gamma_zero_t_closed_form(bz, float(t))
        assert gamma(bz, float(t)) == pytest.approx(ref, rel=1e-6)


def test_gamma_zero_time():
    assert gamma(OHMIC, 0.0) == 0.0
    assert gamma(BathParams(coupling=0.0, cutoff=10.0, kT=1.0), 5.0) == 0.0


def test_gamma_high_temperature_slope():
    b = BathParams(coupling=0.01, cutoff=10.0, kT=100.0)
    h = 1e-3
    slope = (gamma(b, 100.0 + h) - gamma(b, 100.0 - h)) / (2 * h)
    assert slope == pytest.approx(math.pi * b.coupling * b.kT / 2, rel=2e-3)


def test_gamma_small_time_limit():
    # integrand limit at w -> 0 is Gamma t^2 / (2 beta); the kernel follows it
    b = BathParams(coupling=1.0, cutoff=10.0, kT=10.0)
    t = 1e-5
    # gamma ~ (Gamma kT / 2) t^2 * integral weight; just check quadratic scaling
    assert gamma(b, 2 * t) / gamma(b, t) == pytest.approx(4.0, rel=1e-4)


def test_gamma_temperature_monotone():
    ts = (0.1, 1.0, 10.0, 100.0)
    baths = [BathParams(coupling=0.01, cutoff=10.0, kT=k) for k in (0.01, 0.1, 1.0, 10.0)]
    for t in ts:
        vals = [gamma(b, t) for b in baths]
        assert all(np.diff(vals) > 0)


def test_kernels_linear_in_coupling():
    b1 = BathParams(coupling=0.25, cutoff=10.0, kT=0.7)
    b2 = BathParams(coupling=0.75, cutoff=10.0, kT=0.7)
    for t in (0.3, 3.0, 30.0):
        assert 3.0 * gamma(b1, t) == pytest.approx(gamma(b2, t), rel=1e-10)
        assert 3.0 * eta(b1, t) == pytest.approx(eta(b2, t), rel=1e-10)


def test_kernel_table_basic():
    empty = kernel_table(OHMIC, [])
    assert empty.times.size == 0
    single = kernel_table(OHMIC, [0.0])
    assert single.eta[0] == 0.0 and single.gamma[0] == 0.0
    with pytest.raises(ValueError):
        kernel_table(OHMIC, [1.0, 0.5])
    with pytest.raises(ValueError):
        kernel_table(OHMIC, [-1.0, 0.5])


def test_kernel_table_monotone_on_log_grid():
    ts = np.logspace(-2, 4, 60)
    tab = kernel_table(OHMIC, ts)
    assert np.all(np.diff(tab.gamma) >= 0)
    assert np.all(np.diff(tab.eta) <= 0)
    assert np.all(tab.gamma >= 0)
    assert np.all(tab.eta <= 0)


def test_kernel_table_csv_roundtrip(tmp_path):
    ts = np.logspace(-1, 1, 7)
    tab = kernel_table(OHMIC, ts)
    path = tmp_path / "kernels.csv"
    tab.write_csv(path)
    data = np.genfromtxt(path, delimiter=",", names=True)
    assert np.allclose(data["t"], ts, rtol=0, atol=0)
    assert np.allclose(data["gamma"], tab.gamma, rtol=0, atol=0)


def test_quadrature_error_carries_estimate(monkeypatch):
    import morsedeph.bath as mb

    def broken_tail(env, t, wa, trig, abs_tol, max_cycles=600):
        return 0.0, 1.0  # report a hopeless error estimate

    monkeypatch.setattr(mb, "_oscillatory_tail", broken_tail)
    with pytest.raises(QuadratureError) as err:
        mb.eta(OHMIC, 5.0)
    assert err.value.achieved > err.value.required
    assert err.value.t == 5.0
