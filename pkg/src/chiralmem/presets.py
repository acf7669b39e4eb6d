"""Built-in figure presets: locked golden configurations, one per figure.

Each preset is a complete TOML config routed through the ordinary parser,
so presets and user configs cannot drift apart.
"""

PRESETS = {
    # Transmission spectra over the detuning x coupling grid.
    "fig2a": """\
experiment = "spectrum"
output_dir = "out_fig2a"

[grids]
delta_min_mhz = -15.0
delta_max_mhz = 15.0
delta_points = 61
omega_phi_list_mhz = [2.0, 4.0, 6.0, 8.0, 10.0]
""",

    # Spectrum slices and slow-light traces at two coupling strengths.
    "fig2bc": """\
experiment = "slowlight"
output_dir = "out_fig2bc"

[protocol]
tau_s_ns = 300.0
continuous = true

[grids]
omega_phi_list_mhz = [3.2, 5.6]
""",

    # Group delay versus coupling strength and the optical-depth fit.
    "fig2d": """\
experiment = "slowlight"
output_dir = "out_fig2d"

[protocol]
tau_s_ns = 300.0
continuous = true

[grids]
omega_phi_list_mhz = [3.2, 4.0, 4.8, 5.6, 6.4, 7.2, 8.0]
""",

    # Ideal-rate storage efficiency/fidelity heatmap over (Omega_Phi, beta).
    "fig3": """\
experiment = "heatmap"
output_dir = "out_fig3"

[system]
gamma_phi_mhz = 0.0
gamma_m_mhz = 0.0

[protocol]
tau_s_ns = 100.0
t_off_ns = 80.0

[grids]
omega_phi_min_mhz = 2.0
omega_phi_max_mhz = 12.0
omega_phi_points = 41
beta_min_per_ns = 0.01
beta_max_per_ns = 0.2
beta_points = 41
tau_d_ns = 500.0
""",

    # Storage bandwidth at the golden storage controls, tau_d = 1 us.
    "fig4": """\
experiment = "bandwidth"
output_dir = "out_fig4"

[protocol]
omega_phi_mhz = 6.0
beta_per_ns = 0.01
t_off_ns = 80.0
t_on_ns = 1580.0
tau_s_ns = 100.0

[grids]
delta_min_mhz = -4.0
delta_max_mhz = 4.0
delta_points = 81
""",

    # Optimized controls versus probe duration, t_off = 0 fixed.
    "fig5": """\
experiment = "optimize"
output_dir = "out_fig5"

[protocol]
t_off_ns = 0.0

[grids]
tau_s_list_ns = [50.0, 100.0, 200.0, 300.0, 400.0, 500.0, 600.0]
omega_phi_min_mhz = 2.0
omega_phi_max_mhz = 6.0
beta_min_per_ns = 0.01
beta_max_per_ns = 0.2
tau_d_ns = 500.0
""",
}
