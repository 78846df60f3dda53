import numpy as np
import pytest

from morsedeph.bath import BathParams
from morsedeph.dynamics import CoherentStateSpec, KernelEvaluator, coherent_state
from morsedeph.oscillator import OscillatorParams, morse_spectrum


@pytest.fixture(scope="session")
def reference_osc():
    return OscillatorParams(well_depth=40.0, width=0.11, equilibrium=1.0, mass=1.0, hbar=1.0)


@pytest.fixture(scope="session")
def reference_spectrum(reference_osc):
    return morse_spectrum(reference_osc)


@pytest.fixture(scope="session")
def reference_state(reference_spectrum):
    return coherent_state(CoherentStateSpec(mean=2.4, spread=0.5), reference_spectrum, 1e-12)


@pytest.fixture(scope="session")
def shared_kernels():
    """Session kernel caches, keyed by bath, so tests reuse quadrature work."""
    caches = {}

    def get(bath: BathParams) -> KernelEvaluator:
        if bath not in caches:
            caches[bath] = KernelEvaluator(bath)
        return caches[bath]

    return get
