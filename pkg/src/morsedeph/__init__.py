"""Pure-dephasing dynamics of a Morse oscillator coupled to an Ohmic bath."""

from .bath import BathParams, KernelTable, QuadratureError, eta, gamma, kernel_table, spectral_density
from .config import RunConfig, SweepSpec, apply_overrides, parse_config, serialize_config
from .dynamics import (
    CoherentStateSpec,
    DensityMatrix,
    DephasingMap,
    KernelEvaluator,
    coherent_state,
    evolve,
    evolve_series,
)
from .measures import (
    MeasureSeries,
    TauOptions,
    TauTable,
    coherence_measures,
    decoherence_times,
    measure_series,
    purity,
    survival,
    vn_entropy,
)
from .oscillator import (
    EnergySpectrum,
    OscillatorParams,
    harmonic_spectrum,
    morse_potential,
    morse_spectrum,
    morse_wavefunction,
)

__version__ = "0.1.0"
