"""Command-line entry point: run one experiment from a config or preset.

Usage:
    chiralmem run --config run.toml [--out DIR] [--threads N]
    chiralmem run --preset fig2a [--out DIR] [--threads N]

Writes one CSV per result table, a JSON summary with scalar metrics and
the effective config, an echo of the effective config, and a plain-text
log. Outputs are byte-identical across runs of the same config.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from .config import (
    MHZ,
    NS,
    PER_NS,
    ConfigError,
    RunConfig,
    config_dict,
    dump_config,
    parse_config,
)
from .presets import PRESETS

log = logging.getLogger("chiralmem")

FLOAT_FMT = "%.11e"  # 12 significant digits, scientific


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return FLOAT_FMT % float(value)


def write_csv(path: Path, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _field_table(rec, extra_cols=()):
    header = ["time_ns", "abs_a_in_sq", "abs_a_out_right_sq",
              "abs_a_out_left_sq"]
    cols = [rec.times / NS, np.abs(rec.a_in_right) ** 2,
            np.abs(rec.a_out_right) ** 2, np.abs(rec.a_out_left) ** 2]
    for name, col in extra_cols:
        header.append(name)
        cols.append(col)
    return header, list(zip(*cols))


def _run_spectrum(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    rows = ex.spectrum_scan(cfg.grids.delta_grid(), cfg.grids.omega_phi_grid(),
                            sp, n_jobs=n_jobs)
    table = [(dp / MHZ, om / MHZ, tr, ti, ar, ai)
             for (dp, om, tr, ti, ar, ai) in rows]
    diffs = [abs(complex(tr, ti) - complex(ar, ai))
             for (_, _, tr, ti, ar, ai) in rows]
    tables = {"spectrum": (["delta_p_mhz", "omega_phi_mhz", "re_tc_num",
                            "im_tc_num", "re_tc_ana", "im_tc_ana"], table)}
    return tables, {"max_abs_diff": max(diffs)}


def _run_slowlight(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    tau_s = cfg.protocol.tau_s_ns * NS
    tables = {}
    delay_rows = []
    for i, om in enumerate(cfg.grids.omega_phi_grid()):
        rec, res = ex.slow_light_run(om, tau_s, sp)
        tables[f"slowlight_{i:02d}"] = _field_table(rec)
        delay_rows.append((om / MHZ, res.t_d / NS,
                           ex.delay_law(om, 4.0, sp.Gamma) / NS, res.D_fit))
    d_fit = float(np.mean([r[3] for r in delay_rows]))
    tables["delays"] = (["omega_phi_mhz", "t_d_ns", "t_d_law_ns",
                         "d_fit_point"], delay_rows)
    return tables, {"d_fit": d_fit}


def _run_storage(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    p = cfg.protocol.to_params()
    res = ex.storage_run(sp, p, fidelity_method=cfg.fidelity_method)
    rec = res.field_record
    tables = {"storage": _field_table(
        rec, extra_cols=[("memory_coherence", res.memory_coherence)])}
    metrics = {
        "eta": res.eta,
        "fidelity": res.fidelity,
        "tau_d_ns": res.tau_d / NS,
        "t_prime_ns": res.t_prime / NS,
        "energy_in": res.energy_in,
        "energy_right": res.energy_right,
        "energy_left": res.energy_left,
        "direction": res.direction,
    }
    return tables, metrics


def _run_bandwidth(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    p = cfg.protocol.to_params()
    rows, bw = ex.bandwidth_scan(cfg.grids.delta_grid(), sp, p, n_jobs=n_jobs)
    table = [(dp / MHZ, eta, f) for (dp, eta, f) in rows]
    tables = {"bandwidth": (["delta_p_mhz", "eta", "fidelity"], table)}
    etas = [r[1] for r in table]
    return tables, {"bandwidth_mhz": bw / MHZ, "eta_max": max(etas)}


def _run_heatmap(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    g = cfg.grids
    oms = MHZ * np.linspace(g.omega_phi_min_mhz, g.omega_phi_max_mhz,
                            g.omega_phi_points)
    betas = PER_NS * np.linspace(g.beta_min_per_ns, g.beta_max_per_ns,
                                 g.beta_points)
    rows = ex.storage_heatmap(oms, betas, cfg.protocol.tau_s_ns * NS, sp,
                              t_off=cfg.protocol.t_off_ns * NS,
                              tau_d=g.tau_d_ns * NS, n_jobs=n_jobs)
    table = [(om / MHZ, be / PER_NS, eta, f) for (om, be, eta, f) in rows]
    tables = {"heatmap": (["omega_phi_mhz", "beta_per_ns", "eta", "fidelity"],
                          table)}
    etas = np.array([r[2] for r in table])
    k = int(np.nanargmax(etas))
    return tables, {"eta_max": float(etas[k]),
                    "omega_phi_at_max_mhz": table[k][0],
                    "beta_at_max_per_ns": table[k][1]}


def _run_optimize(cfg: RunConfig, n_jobs: int):
    sp = cfg.system.to_params()
    g = cfg.grids
    box = ex.OptimizeBox(
        Omega_Phi_min=g.omega_phi_min_mhz * MHZ,
        Omega_Phi_max=g.omega_phi_max_mhz * MHZ,
        beta_min=g.beta_min_per_ns * PER_NS,
        beta_max=g.beta_max_per_ns * PER_NS,
        t_off=cfg.protocol.t_off_ns * NS,
        tau_d=g.tau_d_ns * NS,
    )
    table = []
    incumbents = []
    for tau_ns in g.tau_s_list_ns:
        r = ex.optimize_protocol(tau_ns * NS, sp, box=box, n_jobs=n_jobs)
        row = (tau_ns, r.Omega_Phi_opt / MHZ, r.beta_opt / PER_NS,
               r.eta_opt, r.fidelity_opt)
        table.append(row)
        incumbents.append({
            "tau_s_ns": tau_ns,
            "omega_phi_opt_mhz": r.Omega_Phi_opt / MHZ,
            "beta_opt_per_ns": r.beta_opt / PER_NS,
            "eta_opt": r.eta_opt,
            "fidelity_opt": r.fidelity_opt,
        })
        log.info("optimize tau_s=%gns: eta=%.5f", tau_ns, r.eta_opt)
    tables = {"optimize": (["tau_s_ns", "omega_phi_opt_mhz", "beta_opt_per_ns",
                            "eta_opt", "fidelity_opt"], table)}
    return tables, {"incumbents": incumbents}


_RUNNERS = {
    "spectrum": _run_spectrum,
    "slowlight": _run_slowlight,
    "storage": _run_storage,
    "bandwidth": _run_bandwidth,
    "heatmap": _run_heatmap,
    "optimize": _run_optimize,
}


def run(cfg: RunConfig, n_jobs: int = 1) -> Path:
    """Execute the configured experiment; returns the output directory."""
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    handler = logging.FileHandler(out_dir / "run.log", mode="w",
                                  encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    try:
        log.info("experiment: %s (threads=%d)", cfg.experiment, n_jobs)
        tables, metrics = _RUNNERS[cfg.experiment](cfg, n_jobs)
        for name, (header, rows) in sorted(tables.items()):
            write_csv(out_dir / f"{name}.csv", header, rows)
            log.info("wrote %s.csv (%d rows)", name, len(rows))
        summary = dict(metrics)
        summary["experiment"] = cfg.experiment
        summary["config"] = config_dict(cfg)
        (out_dir / "summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n",
            encoding="utf-8", newline="\n")
        (out_dir / "config_effective.toml").write_text(
            dump_config(cfg), encoding="utf-8", newline="\n")
        log.info("done")
    finally:
        log.removeHandler(handler)
        handler.close()
    return out_dir


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chiralmem",
        description="Chiral-atom microwave quantum memory simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run one experiment")
    src = runp.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="TOML config file")
    src.add_argument("--preset", choices=sorted(PRESETS),
                     help="built-in figure preset")
    runp.add_argument("--out", type=Path, default=None,
                      help="output directory (overrides config)")
    runp.add_argument("--threads", type=int, default=1,
                      help="concurrent sweep jobs")
    args = parser.parse_args(argv)

    try:
        text = (PRESETS[args.preset] if args.preset
                else args.config.read_text(encoding="utf-8"))
        cfg = parse_config(text)
        if args.out is not None:
            cfg = RunConfig(experiment=cfg.experiment, output_dir=str(args.out),
                            fidelity_method=cfg.fidelity_method,
                            system=cfg.system, protocol=cfg.protocol,
                            grids=cfg.grids)
        out_dir = run(cfg, n_jobs=max(1, args.threads))
    except (ConfigError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
