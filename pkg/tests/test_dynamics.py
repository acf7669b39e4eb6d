import numpy as np
import pytest

from chiralmem.dynamics import (
    dissipator_superop,
    evolve,
    ground_state,
    hamiltonian_superop,
    lindblad_rhs,
    liouvillian,
    steady_state,
)
from chiralmem.model import TWO_PI, ProtocolParams, SystemParams, collapse_operators
from chiralmem.operators import DIM, N_1, SIGMA_1, basis_index, expect


def test_superops_match_direct_rhs():
    rng = np.random.default_rng(7)
    h = rng.normal(size=(DIM, DIM)) + 1j * rng.normal(size=(DIM, DIM))
    h = h + h.conj().T
    rho = rng.normal(size=(DIM, DIM)) + 1j * rng.normal(size=(DIM, DIM))
    rho = rho @ rho.conj().T
    rho /= np.trace(rho)
    cops = collapse_operators(SystemParams())
    direct = lindblad_rhs(rho, h, cops)
    l = hamiltonian_superop(h) + dissipator_superop(cops)
    assert np.allclose((l @ rho.reshape(-1)).reshape(DIM, DIM), direct,
                       atol=1e-8)


def test_evolve_argument_errors():
    sp = SystemParams()
    p = ProtocolParams(continuous=True)
    with pytest.raises(ValueError, match="t1"):
        evolve(ground_state(), 1e-6, 0.0, sp, p, 1e-9)
    with pytest.raises(ValueError, match="sample_dt"):
        evolve(ground_state(), 0.0, 1e-6, sp, p, 0.0)


def test_trace_and_positivity_preserved():
    sp = SystemParams()
    p = ProtocolParams()  # switched protocol, crosses the phase flip
    rho0 = ground_state()
    traj = evolve(rho0, -0.3e-6, 2.5e-6, sp, p, 5e-9)
    traces = np.array([np.trace(s).real for s in traj.states])
    assert np.max(np.abs(traces - 1.0)) < 1e-8
    eigs = np.array([np.linalg.eigvalsh(s).min() for s in traj.states])
    assert eigs.min() > -1e-8


def test_two_level_decay_analytic():
    """Excited emitter 1, no drives: population decays exactly at Gamma."""
    sp = SystemParams(gamma_phi=0.0, Gamma_m=0.0,
                      Omega_p=1e-30)  # negligible drive
    p = ProtocolParams(Omega_Phi=0.0, continuous=True)
    rho0 = np.zeros((DIM, DIM), dtype=complex)
    idx = basis_index(1, 0, 0)
    rho0[idx, idx] = 1.0
    t1 = 2.0 / sp.Gamma
    traj = evolve(rho0, 0.0, t1, sp, p, t1 / 40)
    pop = np.array([expect(N_1, s).real for s in traj.states])
    expected = np.exp(-sp.Gamma * traj.times)
    assert np.max(np.abs(pop - expected) / expected) < 1e-7


def test_sampling_cadence():
    sp = SystemParams()
    p = ProtocolParams(continuous=True)
    traj = evolve(ground_state(), 0.0, 100e-9, sp, p, 10e-9)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(100e-9)
    assert np.allclose(np.diff(traj.times), 10e-9)
    assert set(traj.expectations) == {"sigma1", "sigma2", "sigma_m"}


def test_segment_split_continuity():
    """Sampling across the phase switch stays on the same uniform comb."""
    sp = SystemParams()
    p = ProtocolParams(t_off=80e-9, t_on=1080e-9)
    traj = evolve(ground_state(), -0.5e-6, 2e-6, sp, p, 7e-9)
    assert np.allclose(np.diff(traj.times), 7e-9)


def test_steady_state_properties():
    sp = SystemParams()
    rho = steady_state(sp, TWO_PI * 6e6)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-10
    # stationarity under the full Liouvillian
    l = liouvillian(sp, TWO_PI * 6e6)
    assert np.max(np.abs(l @ rho.reshape(-1))) / sp.Gamma < 1e-9


def test_steady_state_weak_probe_mostly_ground():
    sp = SystemParams()
    rho = steady_state(sp, TWO_PI * 6e6)
    assert rho[0, 0].real > 0.99


def test_expectation_linearity_in_probe():
    """Linear response: coherences scale linearly in Omega_p."""
    sp1 = SystemParams(Omega_p=1e-5 * SystemParams().Gamma)
    sp2 = sp1.with_(Omega_p=2 * sp1.Omega_p)
    r1 = steady_state(sp1, TWO_PI * 6e6)
    r2 = steady_state(sp2, TWO_PI * 6e6)
    s1 = expect(SIGMA_1, r1)
    s2 = expect(SIGMA_1, r2)
    assert abs(s2 / s1 - 2.0) < 1e-3
