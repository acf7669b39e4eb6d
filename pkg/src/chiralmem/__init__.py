"""Microwave quantum memory based on a superconducting chiral atom.

Simulation of a three-qubit artificial atom coupled to an open
transmission line: transmission spectra, slow light, and directional
storage/retrieval of microwave pulses, driven by a Lindblad master
equation in an 8-dimensional Hilbert space.
"""

from .config import ConfigError, RunConfig, dump_config, parse_config
from .dynamics import (
    IntegrationError,
    Trajectory,
    evolve,
    ground_state,
    steady_state,
)
from .experiments import (
    DelayResult,
    OptimizeBox,
    OptimizeResult,
    StorageResult,
    bandwidth_scan,
    delay_law,
    delay_scan,
    efficiency,
    fidelity,
    optimize_protocol,
    slow_light_run,
    spectrum_scan,
    storage_heatmap,
    storage_run,
    storage_time,
)
from .fields import (
    FieldRecord,
    fields_from_trajectory,
    transmission_analytic,
    transmission_numeric,
)
from .model import (
    ProtocolParams,
    SystemParams,
    build_hamiltonian,
    collapse_operators,
    coupling_envelope,
    modulation_phase,
    probe_envelope,
)

__version__ = "1.0.0"

__all__ = [
    "ConfigError", "RunConfig", "dump_config", "parse_config",
    "IntegrationError", "Trajectory", "evolve", "ground_state", "steady_state",
    "DelayResult", "OptimizeBox", "OptimizeResult", "StorageResult",
    "bandwidth_scan", "delay_law", "delay_scan", "efficiency", "fidelity",
    "optimize_protocol", "slow_light_run", "spectrum_scan", "storage_heatmap",
    "storage_run", "storage_time",
    "FieldRecord", "fields_from_trajectory", "transmission_analytic",
    "transmission_numeric",
    "ProtocolParams", "SystemParams", "build_hamiltonian",
    "collapse_operators", "coupling_envelope", "modulation_phase",
    "probe_envelope",
]
