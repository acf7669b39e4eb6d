import json

import numpy as np
import pytest

from chiralmem.cli import main, write_csv
from chiralmem.config import (
    ConfigError,
    dump_config,
    parse_config,
)
from chiralmem.model import TWO_PI
from chiralmem.presets import PRESETS


def test_empty_config_gives_paper_defaults():
    cfg = parse_config("")
    sp = cfg.system.to_params()
    assert sp.Gamma == pytest.approx(TWO_PI * 10e6)
    assert sp.gamma_phi == pytest.approx(TWO_PI * 0.1e6)
    assert sp.Gamma_m == pytest.approx(TWO_PI * 4e3)
    assert cfg.experiment == "spectrum"


def test_unknown_key_rejected_with_line():
    with pytest.raises(ConfigError, match=r"frobnicate \(line 2\)"):
        parse_config("experiment = \"storage\"\nfrobnicate = 1\n")
    with pytest.raises(ConfigError, match="system.whatever"):
        parse_config("[system]\nwhatever = 3.0\n")


def test_negative_rate_rejected_naming_key():
    with pytest.raises(ConfigError, match="gamma_phi"):
        parse_config("[system]\ngamma_phi_mhz = -1\n")


def test_type_mismatch_rejected():
    with pytest.raises(ConfigError, match="grids.delta_points"):
        parse_config("[grids]\ndelta_points = 2.5\n")
    with pytest.raises(ConfigError, match="protocol.continuous"):
        parse_config("[protocol]\ncontinuous = \"yes\"\n")
    with pytest.raises(ConfigError, match="omega_phi_list_mhz"):
        parse_config("[grids]\nomega_phi_list_mhz = []\n")


def test_malformed_toml():
    with pytest.raises(ConfigError, match="malformed"):
        parse_config("experiment = =\n")


def test_bandwidth_default_grid_spans_pm_4mhz():
    cfg = parse_config('experiment = "bandwidth"')
    assert cfg.grids.delta_min_mhz == -4.0
    assert cfg.grids.delta_max_mhz == 4.0
    assert cfg.grids.delta_points == 81


def test_roundtrip_effective_config():
    for text in ["", 'experiment = "storage"\n[protocol]\nbeta_per_ns = 0.013',
                 *PRESETS.values()]:
        cfg = parse_config(text)
        assert parse_config(dump_config(cfg)) == cfg


def test_all_presets_parse():
    assert set(PRESETS) == {"fig2a", "fig2bc", "fig2d", "fig3", "fig4", "fig5"}
    for name, text in PRESETS.items():
        cfg = parse_config(text)
        assert cfg.output_dir.endswith(name)


def test_write_csv_format(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(path, ["a", "b"], [(1.0, 2), (np.pi, -1)])
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "a,b"
    assert lines[1] == "1.00000000000e+00,2"
    assert lines[2].startswith("3.14159265359")


def test_cli_storage_run_outputs(tmp_path):
    cfgfile = tmp_path / "run.toml"
    cfgfile.write_text(
        'experiment = "storage"\n'
        "[protocol]\n"
        "omega_phi_mhz = 6.0\n"
        "beta_per_ns = 0.02\n"
        "t_off_ns = 80.0\n"
        "t_on_ns = 830.0\n"
    )
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfgfile), "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    for key in ("eta", "fidelity", "tau_d_ns", "energy_in", "energy_right",
                "energy_left"):
        assert key in summary
    assert (out / "storage.csv").exists()
    assert (out / "run.log").exists()
    assert (out / "config_effective.toml").exists()
    # echoed config round-trips to the same effective config
    echoed = parse_config((out / "config_effective.toml").read_text())
    assert echoed.protocol.beta_per_ns == 0.02
    header = (out / "storage.csv").read_text().splitlines()[0]
    assert header.split(",")[:4] == ["time_ns", "abs_a_in_sq",
                                    "abs_a_out_right_sq", "abs_a_out_left_sq"]


def test_cli_error_paths(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("nonsense = true\n")
    assert main(["run", "--config", str(bad)]) == 1
    assert "nonsense" in capsys.readouterr().err
    assert main(["run", "--config", str(tmp_path / "missing.toml")]) == 1
    capsys.readouterr()


def test_cli_spectrum_small_grid(tmp_path):
    cfgfile = tmp_path / "run.toml"
    cfgfile.write_text(
        'experiment = "spectrum"\n'
        "[grids]\n"
        "delta_min_mhz = -2.0\n"
        "delta_max_mhz = 2.0\n"
        "delta_points = 5\n"
        "omega_phi_list_mhz = [8.0]\n"
    )
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfgfile), "--out", str(out)]) == 0
    rows = (out / "spectrum.csv").read_text().splitlines()
    assert len(rows) == 1 + 5
