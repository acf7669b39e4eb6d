"""Lindblad time evolution and steady states for the 8-dim chiral atom.

The density matrix is propagated in vectorized form (row-major, 64
complex components) so the right-hand side reduces to three matrix-vector
products with precomputed superoperators.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .model import (
    OMEGA_TO_G,
    ProtocolParams,
    SystemParams,
    collapse_operators,
    coupling_envelope,
    hamiltonian_terms,
    modulation_phase,
    probe_envelope,
)
from .operators import DIM, GROUND, SIGMA_1, SIGMA_2, SIGMA_M, expect

RTOL = 1e-9
ATOL = 1e-12

I8 = np.eye(DIM, dtype=complex)


class IntegrationError(RuntimeError):
    """Raised when the adaptive integrator fails; carries the failure time."""

    def __init__(self, message: str, t_fail: float):
        super().__init__(message)
        self.t_fail = t_fail


@dataclass
class Trajectory:
    """Sampled solution of the master equation."""

    times: np.ndarray              # (n,), strictly increasing
    states: np.ndarray             # (n, 8, 8) Hermitian, unit trace
    expectations: dict             # 'sigma1', 'sigma2', 'sigma_m' -> complex (n,)


def hamiltonian_superop(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i[H, .] acting on row-major vec(rho)."""
    return -1j * (np.kron(h, I8) - np.kron(I8, h.T))


def dissipator_superop(cops) -> np.ndarray:
    """Superoperator of the doubled-dissipator sum acting on vec(rho)."""
    l = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for op, pref in cops:
        opdop = op.conj().T @ op
        l += pref * (
            2.0 * np.kron(op, op.conj())
            - np.kron(opdop, I8)
            - np.kron(I8, opdop.T)
        )
    return l


def lindblad_rhs(rho: np.ndarray, h: np.ndarray, cops) -> np.ndarray:
    """Right-hand side of the master equation for a single density matrix."""
    out = -1j * (h @ rho - rho @ h)
    for op, pref in cops:
        opdop = op.conj().T @ op
        out += pref * (2.0 * (op @ rho @ op.conj().T) - rho @ opdop - opdop @ rho)
    return out


def liouvillian(sp: SystemParams, Omega_Phi: float, Omega_p: float = None,
                phase: float = None) -> np.ndarray:
    """Full 64x64 Liouvillian for constant coupling and constant probe."""
    if phase is None:
        phase = sp.phi
    if Omega_p is None:
        Omega_p = sp.Omega_p
    h_det, h_c, h_d = hamiltonian_terms(sp, phase)
    h = h_det + Omega_Phi * OMEGA_TO_G * h_c + Omega_p * h_d
    return hamiltonian_superop(h) + dissipator_superop(collapse_operators(sp))


def _segment_superops(sp: SystemParams, phase: float):
    l_det = hamiltonian_superop(hamiltonian_terms(sp, phase)[0])
    l_c = hamiltonian_superop(hamiltonian_terms(sp, phase)[1])
    l_d = hamiltonian_superop(hamiltonian_terms(sp, phase)[2])
    l0 = l_det + dissipator_superop(collapse_operators(sp))
    return l0, l_c, l_d


def evolve(rho0: np.ndarray, t0: float, t1: float, sp: SystemParams,
           p: ProtocolParams, sample_dt: float) -> Trajectory:
    """Integrate the master equation over [t0, t1], sampling every sample_dt.

    Splits the integration at the modulation-phase switch time so the
    right-hand side is smooth within each segment.
    """
    if t1 <= t0:
        raise ValueError("t1 must exceed t0")
    if sample_dt <= 0:
        raise ValueError("sample_dt must be positive")
    sp.validate()
    p.validate()

    n = int(np.floor((t1 - t0) / sample_dt)) + 1
    times = t0 + sample_dt * np.arange(n)
    if times[-1] < t1 - 1e-15 * abs(t1 - t0):
        times = np.append(times, t1)

    # Segment boundaries: split at the phase switch if it lies inside the window.
    cuts = [t0, t1]
    if not p.continuous and t0 < p.t_mid < t1:
        cuts = [t0, p.t_mid, t1]

    y = np.asarray(rho0, dtype=complex).reshape(-1).copy()
    states = np.empty((len(times), DIM, DIM), dtype=complex)
    filled = 0
    n_seg = len(cuts) - 1
    for i_seg, (a, b) in enumerate(zip(cuts[:-1], cuts[1:])):
        phase = modulation_phase(0.5 * (a + b), p)
        l0, l_c, l_d = _segment_superops(sp, phase)

        def rhs(t, yv):
            g = float(coupling_envelope(t, p)) * OMEGA_TO_G
            w = float(probe_envelope(t, p, sp))
            return l0 @ yv + g * (l_c @ yv) + w * (l_d @ yv)

        # Each sample belongs to exactly one segment; clip away float fuzz.
        if i_seg < n_seg - 1:
            mask = (times >= a) & (times < b)
        else:
            mask = (times >= a) & (times <= b)
        if filled > 0:
            mask &= np.arange(len(times)) >= filled
        t_samples = np.clip(times[mask], a, b)
        # Always evaluate the segment end so the next segment can continue.
        t_eval = t_samples
        append_end = t_eval.size == 0 or t_eval[-1] < b
        if append_end:
            t_eval = np.append(t_eval, b)
        sol = solve_ivp(rhs, (a, b), y, method="DOP853", t_eval=t_eval,
                        rtol=RTOL, atol=ATOL)
        if not sol.success:
            t_fail = float(sol.t[-1]) if sol.t.size else a
            raise IntegrationError(
                f"integrator failed at t = {t_fail}: {sol.message}", t_fail
            )
        n_store = sol.y.shape[1] - (1 if append_end else 0)
        for k in range(n_store):
            rho = sol.y[:, k].reshape(DIM, DIM)
            states[filled] = 0.5 * (rho + rho.conj().T)
            filled += 1
        rho_end = sol.y[:, -1].reshape(DIM, DIM)
        rho_end = 0.5 * (rho_end + rho_end.conj().T)
        y = rho_end.reshape(-1)

    times = times[:filled]
    states = states[:filled]
    expectations = {
        "sigma1": np.array([expect(SIGMA_1, s) for s in states]),
        "sigma2": np.array([expect(SIGMA_2, s) for s in states]),
        "sigma_m": np.array([expect(SIGMA_M, s) for s in states]),
    }
    return Trajectory(times=times, states=states, expectations=expectations)


def steady_state(sp: SystemParams, Omega_Phi: float) -> np.ndarray:
    """Steady state under constant coupling and constant probe.

    Solves L vec(rho) = 0 with the trace-one condition replacing the
    redundant first row of the (scaled) Liouvillian.
    """
    sp.validate()
    l = liouvillian(sp, Omega_Phi) / sp.Gamma
    a = l.copy()
    diag_idx = np.arange(DIM) * (DIM + 1)
    a[0, :] = 0.0
    a[0, diag_idx] = 1.0
    b = np.zeros(DIM * DIM, dtype=complex)
    b[0] = 1.0
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"singular Liouvillian system: {exc}") from exc
    residual = float(np.max(np.abs(l @ x)))
    if residual > 1e-10:
        raise RuntimeError(f"steady-state residual too large: {residual:.3e}")
    rho = x.reshape(DIM, DIM)
    return 0.5 * (rho + rho.conj().T)


def ground_state() -> np.ndarray:
    """Density matrix |ggg><ggg|."""
    return GROUND.copy()
