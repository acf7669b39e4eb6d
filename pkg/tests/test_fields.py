import numpy as np
import pytest
from scipy.integrate import trapezoid

from chiralmem.dynamics import evolve, ground_state
from chiralmem.fields import (
    fields_from_trajectory,
    transmission_analytic,
    transmission_left_numeric,
    transmission_numeric,
)
from chiralmem.model import TWO_PI, ProtocolParams, SystemParams


def test_transparency_point_ideal():
    sp = SystemParams(gamma_phi=0.0, Gamma_m=0.0)
    t = transmission_numeric(0.0, TWO_PI * 8e6, sp)
    assert abs(t - 1.0) < 1e-6


def test_two_level_resonant_extinction():
    """With the coupling off, the pair is a resonant mirror: t_c -> -1."""
    sp = SystemParams(gamma_phi=0.0, Gamma_m=0.0)
    t = transmission_numeric(0.0, 0.0, sp)
    assert abs(t + 1.0) < 1e-3
    # all power comes out the left port
    r = transmission_left_numeric(0.0, 0.0, sp)
    assert abs(abs(r) ** 2 + 0.0) == pytest.approx(abs(r) ** 2)
    assert abs(t) ** 2 + abs(r) ** 2 == pytest.approx(1.0, abs=1e-3)


def test_analytic_two_level_limit():
    sp = SystemParams()
    t = transmission_analytic(0.0, 0.0, sp.Gamma, 0.0, 0.0)
    assert t == pytest.approx(-1.0)


def test_analytic_far_detuned_transparent():
    sp = SystemParams()
    t = transmission_analytic(TWO_PI * 1e9, TWO_PI * 6e6, sp.Gamma,
                              sp.gamma_phi, sp.Gamma_m)
    assert abs(t - 1.0) < 1e-2


def test_analytic_degenerate_denominator():
    # lossless dressed-state pole: dm*(Delta_p) = Omega_Phi^2/4 exactly
    with pytest.raises(ZeroDivisionError):
        transmission_analytic(0.5, 1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ZeroDivisionError):
        transmission_analytic(0.0, 0.0, 0.0, 0.0, 0.0)


def test_numeric_matches_analytic_on_a_slice():
    sp = SystemParams()
    om = TWO_PI * 6e6
    for dp in TWO_PI * np.array([-8e6, -2e6, 0.0, 3e6, 9e6]):
        tn = transmission_numeric(dp, om, sp)
        ta = transmission_analytic(dp, om, sp.Gamma, sp.gamma_phi, sp.Gamma_m)
        assert abs(tn - ta) < 2e-3


def test_ideal_atom_is_all_pass():
    """Ideal rates: |t| = 1 at every detuning; the dressed resonances at
    Delta_p = +-Omega_Phi/2 appear as full phase flips (t -> -1)."""
    sp = SystemParams(gamma_phi=0.0, Gamma_m=0.0)
    om = TWO_PI * 8e6
    for dp in np.linspace(-2 * om, 2 * om, 41):
        t = transmission_analytic(dp, om, sp.Gamma, 0.0, 0.0)
        assert abs(t) == pytest.approx(1.0, abs=1e-9)
    t_dip = transmission_analytic(om / 2, om, sp.Gamma, 0.0, 0.0)
    assert t_dip == pytest.approx(-1.0, abs=1e-9)


def test_dephasing_creates_absorption_dips():
    """With finite dephasing the dressed resonances absorb: |t| dips at
    +-Omega_Phi/2 while the center stays nearly transparent."""
    sp = SystemParams()
    om = TWO_PI * 8e6
    t_dip = transmission_analytic(om / 2, om, sp.Gamma, sp.gamma_phi,
                                  sp.Gamma_m)
    t_center = transmission_analytic(0.0, om, sp.Gamma, sp.gamma_phi,
                                     sp.Gamma_m)
    assert abs(t_dip) < abs(t_center)
    assert abs(t_center) > 0.99


def test_fields_energy_conservation_ideal():
    sp = SystemParams(gamma_phi=0.0, Gamma_m=0.0)
    p = ProtocolParams(Omega_Phi=TWO_PI * 6e6, continuous=True, tau_s=100e-9)
    traj = evolve(ground_state(), -0.5e-6, 2.5e-6, sp, p, 1e-9)
    rec = fields_from_trajectory(traj, sp, p)
    e_in = trapezoid(np.abs(rec.a_in_right) ** 2, rec.times)
    e_out = trapezoid(np.abs(rec.a_out_right) ** 2
                      + np.abs(rec.a_out_left) ** 2, rec.times)
    assert e_out / e_in == pytest.approx(1.0, abs=5e-3)


def test_port_selector():
    sp = SystemParams()
    p = ProtocolParams(continuous=True)
    traj = evolve(ground_state(), 0.0, 50e-9, sp, p, 10e-9)
    rec = fields_from_trajectory(traj, sp, p)
    assert rec.port("right") is rec.a_out_right
    assert rec.port("left") is rec.a_out_left
    with pytest.raises(ValueError, match="direction"):
        rec.port("up")
