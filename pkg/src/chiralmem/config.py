"""Strict TOML run configuration with natural units at the boundary.

Config files use the units of the figure axes — frequencies in MHz (as
ordinary frequencies f, converted internally to angular 2*pi*f), times
in ns, switching slopes in 1/ns — so the unit conversion happens in
exactly one audited place. Unknown keys are rejected.
"""

import io
from dataclasses import asdict, dataclass, field, fields

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .model import TWO_PI, ProtocolParams, SystemParams

EXPERIMENTS = ("spectrum", "slowlight", "storage", "bandwidth", "heatmap",
               "optimize")
FIDELITY_METHODS = ("peak", "xcorr")

MHZ = TWO_PI * 1e6
GHZ = TWO_PI * 1e9
NS = 1e-9
PER_NS = 1e9


class ConfigError(ValueError):
    """Invalid configuration; message names the offending key."""


@dataclass(frozen=True)
class SystemConfig:
    """SystemParams in file units (MHz / GHz / rad)."""

    omega_e_ghz: float = 5.0
    omega_m_ghz: float = 4.0
    gamma_mhz: float = 10.0
    gamma_phi_mhz: float = 0.1
    gamma_m_mhz: float = 0.004
    omega_p_mhz: float = 0.1
    delta_p_mhz: float = 0.0
    coupling_detuning_mhz: float = 0.0
    kd_rad: float = np.pi / 2
    phi_rad: float = -np.pi / 2

    def to_params(self) -> SystemParams:
        return SystemParams(
            omega_e=self.omega_e_ghz * GHZ,
            omega_m=self.omega_m_ghz * GHZ,
            Gamma=self.gamma_mhz * MHZ,
            gamma_phi=self.gamma_phi_mhz * MHZ,
            Gamma_m=self.gamma_m_mhz * MHZ,
            Omega_p=self.omega_p_mhz * MHZ,
            Delta_p=self.delta_p_mhz * MHZ,
            coupling_detuning=self.coupling_detuning_mhz * MHZ,
            kd=self.kd_rad,
            phi=self.phi_rad,
        )


@dataclass(frozen=True)
class ProtocolConfig:
    """ProtocolParams in file units (MHz / ns / rad)."""

    omega_phi_mhz: float = 6.0
    beta_per_ns: float = 0.05
    t_off_ns: float = 80.0
    t_on_ns: float = 1180.0
    phi_on_rad: float = -np.pi / 2
    tau_s_ns: float = 100.0
    t_center_ns: float = 0.0
    continuous: bool = False
    cw_probe: bool = False

    def to_params(self) -> ProtocolParams:
        return ProtocolParams(
            Omega_Phi=self.omega_phi_mhz * MHZ,
            beta=self.beta_per_ns * PER_NS,
            t_off=self.t_off_ns * NS,
            t_on=self.t_on_ns * NS,
            phi_on=self.phi_on_rad,
            tau_s=self.tau_s_ns * NS,
            t_center=self.t_center_ns * NS,
            continuous=self.continuous,
            cw_probe=self.cw_probe,
        )


@dataclass(frozen=True)
class GridConfig:
    """Per-experiment grid specifications in file units."""

    delta_min_mhz: float = -15.0
    delta_max_mhz: float = 15.0
    delta_points: int = 61
    omega_phi_list_mhz: tuple = (2.0, 4.0, 6.0, 8.0, 10.0)
    tau_s_list_ns: tuple = (100.0,)
    omega_phi_min_mhz: float = 2.0
    omega_phi_max_mhz: float = 12.0
    omega_phi_points: int = 41
    beta_min_per_ns: float = 0.01
    beta_max_per_ns: float = 0.2
    beta_points: int = 41
    tau_d_ns: float = 500.0

    def delta_grid(self):
        """Probe-detuning grid in rad/s."""
        return MHZ * np.linspace(self.delta_min_mhz, self.delta_max_mhz,
                                 self.delta_points)

    def omega_phi_grid(self):
        """Coupling list in rad/s."""
        return MHZ * np.asarray(self.omega_phi_list_mhz, dtype=float)


@dataclass(frozen=True)
class RunConfig:
    experiment: str = "spectrum"
    output_dir: str = "out"
    fidelity_method: str = "peak"
    system: SystemConfig = field(default_factory=SystemConfig)
    protocol: ProtocolConfig = field(default_factory=ProtocolConfig)
    grids: GridConfig = field(default_factory=GridConfig)


# The bandwidth experiment defaults to the narrower grid around the
# storage band rather than the full spectrum span.
_EXPERIMENT_GRID_DEFAULTS = {
    "bandwidth": {"delta_min_mhz": -4.0, "delta_max_mhz": 4.0,
                  "delta_points": 81},
}

_NONNEGATIVE = {
    "gamma_mhz", "gamma_phi_mhz", "gamma_m_mhz", "omega_p_mhz",
    "omega_phi_mhz", "beta_per_ns", "tau_s_ns", "tau_d_ns",
}


def _line_of(text: str, key: str):
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped.startswith(key) and stripped[len(key):].lstrip()[:1] == "=":
            return i
    return None


def _err(text: str, key: str, message: str):
    line = _line_of(text, key.split(".")[-1])
    where = f" (line {line})" if line else ""
    raise ConfigError(f"{key}{where}: {message}")


def _coerce(text, section, key, value, default):
    name = f"{section}.{key}" if section else key
    if isinstance(default, bool):
        if not isinstance(value, bool):
            _err(text, name, f"expected boolean, got {value!r}")
        return value
    if isinstance(default, (int,)) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, int):
            _err(text, name, f"expected integer, got {value!r}")
        if value <= 0:
            _err(text, name, "must be a positive integer")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            _err(text, name, f"expected number, got {value!r}")
        return float(value)
    if isinstance(default, tuple):
        if not isinstance(value, list) or not value or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool)
                for v in value):
            _err(text, name, f"expected nonempty list of numbers, got {value!r}")
        return tuple(float(v) for v in value)
    if isinstance(default, str):
        if not isinstance(value, str):
            _err(text, name, f"expected string, got {value!r}")
        return value
    raise AssertionError(f"unhandled default type for {name}")


def _parse_section(text, section, data, cls, defaults):
    known = {f.name: defaults[f.name] for f in fields(cls)}
    out = dict(known)
    for key, value in data.items():
        if key not in known:
            _err(text, f"{section}.{key}" if section else key, "unknown key")
        out[key] = _coerce(text, section, key, value, known[key])
    return cls(**out)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration.

    Absent keys take documented defaults (the paper's parameter set);
    unknown keys, type mismatches, and invariant violations raise
    ConfigError naming the key and, best-effort, its line.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc

    top = dict(data)
    sections = {}
    for name in ("system", "protocol", "grids"):
        sec = top.pop(name, {})
        if not isinstance(sec, dict):
            _err(text, name, "expected a section (table)")
        sections[name] = sec

    experiment = top.pop("experiment", "spectrum")
    output_dir = top.pop("output_dir", "out")
    fidelity_method = top.pop("fidelity_method", "peak")
    for key in top:
        _err(text, key, "unknown key")
    if not isinstance(experiment, str) or experiment not in EXPERIMENTS:
        _err(text, "experiment",
             f"must be one of {', '.join(EXPERIMENTS)}; got {experiment!r}")
    if not isinstance(output_dir, str) or not output_dir:
        _err(text, "output_dir", "must be a nonempty string")
    if fidelity_method not in FIDELITY_METHODS:
        _err(text, "fidelity_method",
             f"must be one of {', '.join(FIDELITY_METHODS)}")

    sys_defaults = {f.name: f.default for f in fields(SystemConfig)}
    proto_defaults = {f.name: f.default for f in fields(ProtocolConfig)}
    grid_defaults = {f.name: f.default for f in fields(GridConfig)}
    grid_defaults["omega_phi_list_mhz"] = (2.0, 4.0, 6.0, 8.0, 10.0)
    grid_defaults["tau_s_list_ns"] = (100.0,)
    grid_defaults.update(_EXPERIMENT_GRID_DEFAULTS.get(experiment, {}))

    system = _parse_section(text, "system", sections["system"], SystemConfig,
                            sys_defaults)
    protocol = _parse_section(text, "protocol", sections["protocol"],
                              ProtocolConfig, proto_defaults)
    grids = _parse_section(text, "grids", sections["grids"], GridConfig,
                           grid_defaults)

    for section, cfg in (("system", system), ("protocol", protocol),
                         ("grids", grids)):
        for f in fields(cfg):
            if f.name in _NONNEGATIVE:
                v = getattr(cfg, f.name)
                if v < 0:
                    _err(text, f"{section}.{f.name}",
                         f"{f.name.rsplit('_', 1)[0]} must be non-negative, "
                         f"got {v}")
    if grids.delta_min_mhz >= grids.delta_max_mhz:
        _err(text, "grids.delta_min_mhz", "delta grid must have min < max")
    if grids.omega_phi_min_mhz >= grids.omega_phi_max_mhz:
        _err(text, "grids.omega_phi_min_mhz",
             "omega_phi box must have min < max")
    if grids.beta_min_per_ns >= grids.beta_max_per_ns:
        _err(text, "grids.beta_min_per_ns", "beta box must have min < max")

    cfg = RunConfig(experiment=experiment, output_dir=output_dir,
                    fidelity_method=fidelity_method, system=system,
                    protocol=protocol, grids=grids)
    # Physical-invariant validation via the parameter classes themselves.
    try:
        cfg.system.to_params().validate()
        cfg.protocol.to_params().validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return f'"{v}"'
    if isinstance(v, tuple):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    raise AssertionError(f"unhandled config value {v!r}")


def dump_config(cfg: RunConfig) -> str:
    """Serialize the effective configuration; re-parses to an equal RunConfig."""
    out = io.StringIO()
    out.write(f'experiment = "{cfg.experiment}"\n')
    out.write(f'output_dir = "{cfg.output_dir}"\n')
    out.write(f'fidelity_method = "{cfg.fidelity_method}"\n')
    for name, sub in (("system", cfg.system), ("protocol", cfg.protocol),
                      ("grids", cfg.grids)):
        out.write(f"\n[{name}]\n")
        for f in fields(sub):
            out.write(f"{f.name} = {_format_value(getattr(sub, f.name))}\n")
    return out.getvalue()


def config_dict(cfg: RunConfig) -> dict:
    """Plain nested dict of the effective config (for the JSON summary)."""
    d = asdict(cfg)
    for sec in ("system", "protocol", "grids"):
        d[sec] = {k: list(v) if isinstance(v, tuple) else v
                  for k, v in d[sec].items()}
    return d
