import math

import numpy as np
import pytest
from scipy.integrate import quad

from morsedeph.bath import BathParams, gamma
from morsedeph.dynamics import (
    DensityMatrix,
    DephasingMap,
    KernelEvaluator,
    coherent_state,
    evolve,
)
from morsedeph.measures import (
    TauOptions,
    coherence_measures,
    decoherence_times,
    measure_series,
    purity,
    survival,
    vn_entropy,
)
from morsedeph.oscillator import EnergySpectrum


def dephased(rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.diag(np.diag(rho.entries)))


def test_survival_of_pure_state(reference_state):
    assert survival(reference_state, reference_state) == pytest.approx(1.0, abs=1e-12)


def test_survival_fully_dephased_limit(reference_state):
    p = reference_state.populations()
    assert survival(reference_state, dephased(reference_state)) == pytest.approx(np.sum(p**2), rel=1e-12)


def test_survival_dimension_mismatch(reference_state):
    small = DensityMatrix(np.eye(2, dtype=complex) / 2)
    with pytest.raises(ValueError):
        survival(reference_state, small)


def test_purity_limits(reference_state):
    assert purity(reference_state) == pytest.approx(1.0, abs=1e-12)
    mixed = DensityMatrix(np.eye(4, dtype=complex) / 4)
    assert purity(mixed) == pytest.approx(0.25, abs=1e-14)
    p = reference_state.populations()
    assert purity(dephased(reference_state)) == pytest.approx(np.sum(p**2), rel=1e-12)


def test_entropy_limits(reference_state):
    assert vn_entropy(reference_state) == pytest.approx(0.0, abs=1e-10)
    mixed = DensityMatrix(np.eye(2, dtype=complex) / 2)
    assert vn_entropy(mixed) == pytest.approx(math.log(2), rel=1e-12)
    p = reference_state.populations()
    shannon = -np.sum(p[p > 0] * np.log(p[p > 0]))
    assert vn_entropy(dephased(reference_state)) == pytest.approx(shannon, rel=1e-10)


def test_coherence_measures_limits(reference_state):
    assert coherence_measures(reference_state, reference_state) == pytest.approx((0.0, 0.0), abs=1e-10)
    p = reference_state.populations()
    ce, c2 = coherence_measures(reference_state, dephased(reference_state))
    assert ce == pytest.approx(-np.sum(p[p > 0] * np.log(p[p > 0])), rel=1e-10)
    assert c2 == pytest.approx(1.0 - np.sum(p**2), rel=1e-10)


def test_measures_nondecreasing_under_dephasing(reference_spectrum, reference_state, shared_kernels):
    bath = BathParams(coupling=0.05, cutoff=10.0, kT=1.0)
    dmap = DephasingMap(reference_spectrum, shared_kernels(bath))
    times = np.logspace(-2, 4, 25)
    states = [evolve(reference_state, dmap, float(t)) for t in times]
    series = measure_series(reference_state, states, times)
    assert np.all(np.diff(series.Ce) >= -1e-10)
    assert np.all(np.diff(series.C2) >= -1e-12)
    # C2 + D = D(0) by construction
    assert np.allclose(series.C2 + series.D, purity(reference_state), atol=1e-14)


def test_series_length_guard(reference_state):
    with pytest.raises(ValueError):
        measure_series(reference_state, [reference_state], [0.0, 1.0])


TWO_LEVEL = EnergySpectrum(kind="harmonic", levels=np.array([0.0, 1.0]), omega0=1.0, n_max=1)
EQUAL_SUPERPOSITION = DensityMatrix(np.full((2, 2), 0.5, dtype=complex))


def test_tau_two_level_matches_independent_quadrature():
    # independent route: scipy quad of the damping factor built from bath.gamma
    bath = BathParams(coupling=0.01, cutoff=10.0, kT=100.0)
    ref, _ = quad(lambda t: math.exp(-gamma(bath, t)), 0.0, 40.0,
                  limit=200, epsabs=1e-10, epsrel=1e-9)
    table = decoherence_times(DephasingMap.for_bath(TWO_LEVEL, bath), EQUAL_SUPERPOSITION)
    assert table.tau_element == pytest.approx(ref, rel=1e-6)
    assert table.all_converged


def test_tau_preconditions(reference_spectrum, reference_state):
    with pytest.raises(ValueError):
        decoherence_times(
            DephasingMap.for_bath(TWO_LEVEL, BathParams(coupling=0.0, cutoff=10.0, kT=1.0)),
            EQUAL_SUPERPOSITION)
    with pytest.raises(ValueError):
        decoherence_times(
            DephasingMap.for_bath(
                TWO_LEVEL, BathParams(coupling=0.01, cutoff=10.0, kT=1.0, zero_temperature=True)),
            EQUAL_SUPERPOSITION)
    diag_only = DensityMatrix(np.diag([0.6, 0.4]).astype(complex))
    with pytest.raises(ValueError):
        decoherence_times(
            DephasingMap.for_bath(TWO_LEVEL, BathParams(coupling=0.01, cutoff=10.0, kT=1.0)),
            diag_only)


def test_tau_symmetric_and_positive(reference_spectrum, reference_state, shared_kernels):
    bath = BathParams(coupling=0.1, cutoff=10.0, kT=1.0)
    table = decoherence_times(DephasingMap(reference_spectrum, shared_kernels(bath)), reference_state)
    for (m, n) in table.included_pairs:
        assert table.tau(m, n) == table.tau(n, m) > 0
    assert table.tau_element == min(table.entries.values())


def test_tau_monotone_in_coupling_and_temperature(shared_kernels):
    taus = []
    for g in (0.01, 0.1, 1.0):
        bath = BathParams(coupling=g, cutoff=10.0, kT=1.0)
        taus.append(decoherence_times(
            DephasingMap(TWO_LEVEL, shared_kernels(bath)), EQUAL_SUPERPOSITION).tau_element)
    assert taus[0] > taus[1] > taus[2]
    taus = []
    for kt in (0.1, 1.0, 10.0):
        bath = BathParams(coupling=0.1, cutoff=10.0, kT=kt)
        taus.append(decoherence_times(
            DephasingMap(TWO_LEVEL, shared_kernels(bath)), EQUAL_SUPERPOSITION).tau_element)
    assert taus[0] > taus[1] > taus[2]


def test_tau_invariant_under_offdiagonal_rescaling(reference_spectrum, reference_state, shared_kernels):
    # Eq-of-motion ratio normalizes initial magnitudes away
    bath = BathParams(coupling=0.1, cutoff=10.0, kT=1.0)
    dmap = DephasingMap(reference_spectrum, shared_kernels(bath))
    scaled = reference_state.entries.copy()
    off = ~np.eye(reference_state.dim, dtype=bool)
    scaled[off] *= 0.5
    table_a = decoherence_times(dmap, reference_state)
    table_b = decoherence_times(dmap, DensityMatrix(scaled))
    assert table_a.included_pairs == table_b.included_pairs
    for pair in table_a.included_pairs:
        assert table_a.entries[pair] == pytest.approx(table_b.entries[pair], rel=1e-12)


def test_tau_horizon_flags_nonconvergence(shared_kernels):
    bath = BathParams(coupling=0.01, cutoff=10.0, kT=0.01)
    opts = TauOptions(t_max=10.0)  # far too short for this bath
    table = decoherence_times(
        DephasingMap(TWO_LEVEL, shared_kernels(bath)), EQUAL_SUPERPOSITION, opts)
    assert not table.all_converged
    assert table.t_max == 10.0


def test_tau_threshold_controls_pairs(reference_spectrum, reference_state, shared_kernels):
    bath = BathParams(coupling=0.1, cutoff=10.0, kT=1.0)
    dmap = DephasingMap(reference_spectrum, shared_kernels(bath))
    loose = decoherence_times(dmap, reference_state, TauOptions(magnitude_threshold=1e-3))
    tight = decoherence_times(dmap, reference_state, TauOptions(magnitude_threshold=1e-10))
    assert set(loose.included_pairs) < set(tight.included_pairs)
    assert loose.tau_element >= tight.tau_element


def test_tau_csv(tmp_path, shared_kernels):
    bath = BathParams(coupling=0.1, cutoff=10.0, kT=1.0)
    table = decoherence_times(
        DephasingMap(TWO_LEVEL, shared_kernels(bath)), EQUAL_SUPERPOSITION)
    path = tmp_path / "tau.csv"
    table.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "m,n,tau,converged"
    assert lines[-1].startswith("element,,")


def test_survival_elementwise_oracle(reference_spectrum, reference_state, shared_kernels):
    # independent route for P(t) = Tr[rho(0) rho(t)]: with real rho(0),
    # P = sum_nm |rho_nm(0)|^2 cos((E_n-E_m) t - (E_n^2-E_m^2) eta) e^{-gap^2 gamma};
    # unlike the magnitude-based checks this pins the sign of the eta phase
    bath = BathParams(coupling=0.05, cutoff=10.0, kT=1.0)
    dmap = DephasingMap(reference_spectrum, shared_kernels(bath))
    e = reference_spectrum.levels[: reference_state.dim]
    d1 = e[:, None] - e[None, :]
    d2 = (e**2)[:, None] - (e**2)[None, :]
    mags2 = np.abs(reference_state.entries) ** 2
    for t in (0.3, 2.0, 15.0):
        g = dmap.kernels.gamma(t)
        ph = dmap.kernels.eta(t)
        oracle = float(np.sum(mags2 * np.cos(d1 * t - d2 * ph) * np.exp(-(d1**2) * g)))
        assert survival(reference_state, evolve(reference_state, dmap, t)) == \
            pytest.approx(oracle, abs=1e-12)


def _count_peaks(values, floor):
    v = np.asarray(values)
    inner = (v[1:-1] > v[:-2]) & (v[1:-1] > v[2:]) & (v[1:-1] > floor)
    return int(np.sum(inner))


def test_survival_oscillations_fade_with_temperature(reference_spectrum, reference_state, shared_kernels):
    # hot bath damps the recurrences of the overlap
    times = np.linspace(0.05, 40.0, 240)
    counts = {}
    for kT in (0.01, 100.0):
        dmap = DephasingMap(reference_spectrum, shared_kernels(BathParams(0.01, 10.0, kT)))
        p = [survival(reference_state, evolve(reference_state, dmap, float(t))) for t in times]
        counts[kT] = _count_peaks(p, 0.55)
    assert counts[100.0] < counts[0.01]


def test_purity_matrix_product_vs_elementwise(reference_spectrum, reference_state, shared_kernels):
    # the matrix-product purity must agree with the elementwise damping sum
    bath = BathParams(coupling=0.05, cutoff=10.0, kT=10.0)
    dmap = DephasingMap(reference_spectrum, shared_kernels(bath))
    e = reference_spectrum.levels[: reference_state.dim]
    gaps2 = (e[:, None] - e[None, :]) ** 2
    for t in (0.1, 1.0, 10.0):
        g = dmap.kernels.gamma(t)
        oracle = float(np.sum(np.abs(reference_state.entries) ** 2 * np.exp(-2.0 * gaps2 * g)))
        assert purity(evolve(reference_state, dmap, t)) == pytest.approx(oracle, abs=1e-10)
