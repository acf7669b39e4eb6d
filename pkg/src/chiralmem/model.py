"""Physical model: parameters, drive envelopes, Hamiltonian, dissipators.

All rates and frequencies are angular (rad/s), all times in seconds.
The rotating frame co-rotates with the probe, so only detunings appear.
"""

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .operators import N_1, N_2, N_M, SIGMA_1, SIGMA_2, SIGMA_M

TWO_PI = 2.0 * np.pi

# Ratio between the effective coupling Rabi frequency and the per-emitter
# modulation coupling strength: Omega_Phi = 2*sqrt(2)*g_Phi.
OMEGA_TO_G = 1.0 / (2.0 * np.sqrt(2.0))


@dataclass(frozen=True)
class SystemParams:
    """Fixed physical rates and phases of the chiral-atom model."""

    omega_e: float = TWO_PI * 5e9        # emitter transition (rad/s)
    omega_m: float = TWO_PI * 4e9        # memory transition (rad/s)
    Gamma: float = TWO_PI * 10e6         # emitter relaxation rate
    gamma_phi: float = TWO_PI * 0.1e6    # emitter pure dephasing
    Gamma_m: float = TWO_PI * 4e3        # memory loss rate
    kd: float = np.pi / 2                # propagation phase over d = lambda/4
    phi: float = -np.pi / 2              # modulation phase difference phi1 - phi2
    Omega_p: float = TWO_PI * 0.1e6      # peak probe Rabi frequency (0.01*Gamma)
    Delta_p: float = 0.0                 # probe detuning omega_e - omega_p
    coupling_detuning: float = 0.0       # omega_Phi - (omega_e - omega_m)
    g_Sigma: float = 0.0                 # emitter-emitter exchange, assumed cancelled
    probe_from_left: bool = True

    def validate(self) -> None:
        if self.Gamma <= 0:
            raise ValueError("Gamma must be positive")
        if self.gamma_phi < 0:
            raise ValueError("gamma_phi must be non-negative")
        if self.Gamma_m < 0:
            raise ValueError("Gamma_m must be non-negative")
        if self.Omega_p <= 0:
            raise ValueError("Omega_p must be positive")
        if self.Omega_p > 0.2 * self.Gamma:
            raise ValueError(
                "Omega_p exceeds 0.2*Gamma; the weak-probe model is invalid"
            )
        if self.Omega_p > 0.05 * self.Gamma:
            warnings.warn(
                "Omega_p above 0.05*Gamma; linear response may be inaccurate",
                stacklevel=2,
            )
        if self.g_Sigma != 0.0:
            raise ValueError("finite emitter-emitter coupling is not modelled")

    @property
    def omega_Phi_mod(self) -> float:
        """Parametric modulation frequency."""
        return self.omega_e - self.omega_m + self.coupling_detuning

    @property
    def gamma_total(self) -> float:
        """Total emitter decoherence rate gamma = gamma_phi + Gamma/2."""
        return self.gamma_phi + 0.5 * self.Gamma

    def with_(self, **kwargs) -> "SystemParams":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class ProtocolParams:
    """Control parameters of one probe/coupling pulse sequence."""

    Omega_Phi: float = TWO_PI * 6e6      # peak coupling Rabi frequency (rad/s)
    beta: float = 0.05e9                 # switching slope (1/s)
    t_off: float = 80e-9                 # coupling turn-off time
    t_on: float = 1180e-9                # coupling turn-on time
    phi_on: float = -np.pi / 2           # phase difference after turn-on
    tau_s: float = 100e-9                # probe Gaussian duration
    t_center: float = 0.0                # probe peak time
    continuous: bool = False             # hold the coupling constant (slow light)
    cw_probe: bool = False               # constant probe (spectrum mode)

    def validate(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.tau_s <= 0:
            raise ValueError("tau_s must be positive")
        if not self.continuous and self.t_on <= self.t_off:
            raise ValueError("t_on must exceed t_off for a storage sequence")

    @property
    def storage_time(self) -> float:
        """tau_d = t_on - t_off - 5/beta."""
        return self.t_on - self.t_off - 5.0 / self.beta

    @property
    def t_mid(self) -> float:
        """Phase switch time, midway through the dark interval."""
        return 0.5 * (self.t_off + self.t_on)

    def with_(self, **kwargs) -> "ProtocolParams":
        return replace(self, **kwargs)


def probe_envelope(t, p: ProtocolParams, sp: SystemParams):
    """Probe Rabi frequency Omega_p(t); Gaussian unless cw_probe."""
    if p.cw_probe:
        return sp.Omega_p * np.ones_like(np.asarray(t, dtype=float))
    x = (np.asarray(t, dtype=float) - p.t_center) / p.tau_s
    return sp.Omega_p * np.exp(-0.5 * x * x)


def coupling_envelope(t, p: ProtocolParams):
    """Coupling Rabi frequency Omega_c(t): tanh turn-off at t_off, turn-on at t_on."""
    t = np.asarray(t, dtype=float)
    if p.continuous:
        return p.Omega_Phi * np.ones_like(t)
    return 0.5 * p.Omega_Phi * (
        (1.0 - np.tanh(p.beta * (t - p.t_off)))
        + (1.0 + np.tanh(p.beta * (t - p.t_on)))
    )


def modulation_phase(t: float, p: ProtocolParams) -> float:
    """Modulation phase difference: -pi/2 before the dark interval midpoint,
    phi_on after. Switching happens where the coupling is exponentially small."""
    if p.continuous:
        return -np.pi / 2
    return -np.pi / 2 if t < p.t_mid else p.phi_on


def hamiltonian_terms(sp: SystemParams, phase: float):
    """Constant 8x8 building blocks of H(t) for a fixed modulation phase.

    Returns (H_det, H_coupling, H_drive) such that
        H(t) = H_det + g(t) * H_coupling + Omega_p(t) * H_drive
    with g(t) = coupling_envelope(t) / (2*sqrt(2)).
    """
    delta2 = sp.Delta_p + sp.coupling_detuning
    h_det = sp.Delta_p * (N_1 + N_2) + delta2 * N_M
    hc = np.exp(1j * phase) * (SIGMA_1.conj().T @ SIGMA_M) + SIGMA_2.conj().T @ SIGMA_M
    h_coupling = hc + hc.conj().T
    drive_phase = sp.kd if sp.probe_from_left else -sp.kd
    hd = 0.5 * (SIGMA_1.conj().T + np.exp(1j * drive_phase) * SIGMA_2.conj().T)
    h_drive = hd + hd.conj().T
    return h_det, h_coupling, h_drive


def build_hamiltonian(t: float, sp: SystemParams, p: ProtocolParams) -> np.ndarray:
    """Rotating-frame Hamiltonian H(t) as a dense Hermitian 8x8 matrix."""
    h_det, h_coupling, h_drive = hamiltonian_terms(sp, modulation_phase(t, p))
    g = float(coupling_envelope(t, p)) * OMEGA_TO_G
    w = float(probe_envelope(t, p, sp))
    return h_det + g * h_coupling + w * h_drive


def collapse_operators(sp: SystemParams):
    """Dissipation channels as (operator, prefactor) pairs.

    Prefactors multiply the doubled dissipator
    D[O]rho = 2 O rho O^dag - rho O^dag O - O^dag O rho,
    so (sigma_1, Gamma/2) gives population decay at rate Gamma.
    """
    return [
        (SIGMA_1, 0.5 * sp.Gamma),
        (SIGMA_2, 0.5 * sp.Gamma),
        (N_1, sp.gamma_phi),
        (N_2, sp.gamma_phi),
        (SIGMA_M, 0.5 * sp.Gamma_m),
    ]
