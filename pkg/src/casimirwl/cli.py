"""Command-line front end.

Subcommands: `pressure` (one point, JSON), `sweep` (field/temperature/
separation grid, CSV or JSON), `conductivity` (normalized 2D-plate DC
conductivity on the same grid machinery), `fluctuations` (distribution
report with optional scaling fits and sampled Gaussian curves).

Exit codes: 0 success, 2 configuration error, 3 convergence failure,
4 I/O error.  Sweeps degrade gracefully: a grid point that fails to
converge is flagged in its row (converged=false) and the run continues.
Numbers are emitted in scientific notation with 12 significant digits;
identical configs produce byte-identical output at any worker count.
"""

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .config import (GAUSS, build_job, build_kernel, parse_config,
                     plate_model, serialize)
from .errors import (CasimirError, ConfigError, ConvergenceError,
                     DegenerateDistributionError, ValidationError)
from .fluctuations import (ScreenedResponse, distribution_width,
                           energy_distribution, fit_scaling_distance,
                           fit_scaling_tau, one_loop_energy)
from .lifshitz import casimir_pressure
from .materials import Dimensionality, MaterialInput, derive_material
from .response import ResponseKind, ResponseModel, dc_conductivity

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4

SWEEP_COLUMNS = ("swept", "H_gauss", "T_K", "a_nm", "P_Pa", "P_norm",
                 "sigma_norm", "n_terms", "converged")
CONDUCTIVITY_COLUMNS = ("swept", "H_gauss", "T_K", "sigma_norm")


def _fmt(x):
    """Scientific notation, 12 significant digits, or the empty cell."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{x:.11e}"


def _grid(cfg):
    if cfg.sweep_spacing == "log":
        return np.geomspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count)
    return np.linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count)


def _point_state(cfg, value):
    """(field_gauss, temperature_k, separation_nm) for one grid value."""
    state = dict(field_gauss=cfg.field_gauss, temperature_k=cfg.temperature_k,
                 separation_nm=cfg.separation_nm)
    if cfg.sweep_variable == "field":
        state["field_gauss"] = value
    elif cfg.sweep_variable == "temperature":
        state["temperature_k"] = value
    elif cfg.sweep_variable == "separation":
        state["separation_nm"] = value
    return state


def _sigma_norm(cfg, field_gauss, temperature_k):
    """sigma / sigma_Drude of the 2D plate; None when not applicable."""
    model = plate_model(cfg, 2)
    if model.kind is ResponseKind.DRUDE:
        return 1.0
    if model.kind is not ResponseKind.DRUDE_WL:
        return None
    drude = ResponseModel(ResponseKind.DRUDE, model.material)
    return (dc_conductivity(model, temperature_k, field_gauss * GAUSS)
            / dc_conductivity(drude))


def _sweep_row(cfg, value):
    state = _point_state(cfg, value)
    row = {
        "swept": float(value),
        "H_gauss": state["field_gauss"],
        "T_K": state["temperature_k"],
        "a_nm": state["separation_nm"],
        "sigma_norm": _sigma_norm(cfg, state["field_gauss"],
                                  state["temperature_k"]),
    }
    try:
        result = casimir_pressure(build_job(cfg, **state))
        row.update(P_Pa=result.pressure, P_norm=result.normalized,
                   n_terms=result.n_terms_used, converged=result.converged)
    except ConvergenceError as exc:
        row.update(P_Pa=exc.partial_pressure, P_norm=None,
                   n_terms=exc.n_terms or 0, converged=False)
    return row


def _run_grid(cfg, workers, row_func):
    values = _grid(cfg)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: row_func(cfg, v), values))
    else:
        rows = [row_func(cfg, v) for v in values]
    return rows


def _emit_table(cfg, columns, rows, out_path, fmt):
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt(row.get(c)) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        payload = {"meta": _meta(cfg), "rows": rows}
        text = json.dumps(payload, indent=2, default=_fmt) + "\n"
    _write(out_path, text)


def _meta(cfg):
    return {
        "config": serialize(cfg).splitlines(),
        "package_version": __version__,
        "tolerances": {"quad_rel_tol": cfg.quad_rel_tol,
                       "matsubara_rel_tol": cfg.matsubara_rel_tol},
    }


def _write(out_path, text):
    if not out_path:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc


class _IOFailure(Exception):
    pass


def cmd_pressure(cfg, out_path, fmt, workers):
    del fmt, workers
    try:
        result = casimir_pressure(build_job(cfg))
    except ConvergenceError as exc:
        payload = {"error": str(exc),
                   "partial_pressure_Pa": exc.partial_pressure,
                   "partial_energy_J_per_m2": exc.partial_energy,
                   "tail_estimate": exc.tail_estimate,
                   "n_terms": exc.n_terms}
        _write(out_path, json.dumps(payload, indent=2) + "\n")
        return EXIT_CONVERGENCE
    payload = {
        "pressure_Pa": result.pressure,
        "energy_J_per_m2": result.energy_per_area,
        "normalized": result.normalized,
        "n_terms": result.n_terms_used,
        "quad_error_est": result.quad_error_est,
        "converged": result.converged,
        "meta": _meta(cfg),
    }
    _write(out_path, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_sweep(cfg, out_path, fmt, workers):
    if cfg.sweep_variable == "none":
        raise ConfigError("sweep.variable: must be set for the sweep command")
    rows = _run_grid(cfg, workers, _sweep_row)
    _emit_table(cfg, SWEEP_COLUMNS, rows, out_path, fmt)
    return EXIT_OK


def _conductivity_row(cfg, value):
    state = _point_state(cfg, value)
    sigma = _sigma_norm(cfg, state["field_gauss"], state["temperature_k"])
    if sigma is None:
        raise ConfigError(
            "plate2.model: conductivity requires a drude or drude_wl 2D plate")
    return {"swept": float(value), "H_gauss": state["field_gauss"],
            "T_K": state["temperature_k"], "sigma_norm": sigma}


def cmd_conductivity(cfg, out_path, fmt, workers):
    if cfg.sweep_variable == "none":
        raise ConfigError(
            "sweep.variable: must be set for the conductivity command")
    rows = _run_grid(cfg, workers, _conductivity_row)
    _emit_table(cfg, CONDUCTIVITY_COLUMNS, rows, out_path, fmt)
    return EXIT_OK


def _fluct_material(cfg):
    return MaterialInput(epsilon_f_ev=cfg.plate2_epsilon_f_ev,
                         mstar_ratio=cfg.plate2_mstar_ratio,
                         mfp_nm=cfg.plate2_mfp_nm,
                         dimensionality=Dimensionality.TWO_D)


def cmd_fluctuations(cfg, out_path, fmt, workers):
    del workers
    material = _fluct_material(cfg)
    mat = derive_material(material)
    kernel = build_kernel(cfg)
    temperature = cfg.temperature_k
    report = {"meta": _meta(cfg), "separations": []}
    for a_nm in cfg.fluct_separations_nm:
        a = a_nm * 1e-9
        plate1 = ScreenedResponse(ResponseModel(ResponseKind.DRUDE, mat))
        plate2 = ScreenedResponse(ResponseModel(ResponseKind.PLASMA, mat))
        plasma1 = ScreenedResponse(ResponseModel(ResponseKind.PLASMA, mat))
        e0_dr = one_loop_energy(plate1, plate2, a, temperature)
        e0_pl = one_loop_energy(plasma1, plate2, a, temperature)
        width = distribution_width(plate1, plate2, kernel, a, temperature)
        gap = abs(e0_dr - e0_pl)
        entry = {
            "a_nm": a_nm,
            "e0_drude_J_per_m2": e0_dr,
            "e0_plasma_J_per_m2": e0_pl,
            "width_J_per_m2": width,
            "ratio_w_over_e0": width / abs(e0_dr),
            "ratio_w_over_gap": width / gap if gap > 0 else math.inf,
            "sharply_peaked": bool(gap > 0 and width / gap < 0.1),
            "degenerate": width == 0.0,
        }
        if width > 0.0:
            es = np.linspace(e0_dr - 4 * width, e0_dr + 4 * width, 81)
            entry["curve"] = [
                {"e_J_per_m2": float(e),
                 "density": float(energy_distribution(e0_dr, width, e))}
                for e in es]
        report["separations"].append(entry)
    if cfg.fluct_sweep == "tau":
        fit = fit_scaling_tau(material, cfg.separation_nm * 1e-9,
                              temperature, kernel)
        report["tau_fit"] = {"c1": fit.c1, "intercept": fit.intercept,
                             "residual": fit.residual}
    elif cfg.fluct_sweep == "separation":
        fit = fit_scaling_distance(material, temperature, kernel)
        report["distance_fit"] = {"c2": fit.c2, "exponent": fit.exponent,
                                  "residual": fit.residual}
    if fmt == "csv":
        lines = ["a_nm,e_J_per_m2,density"]
        for entry in report["separations"]:
            for point in entry.get("curve", []):
                lines.append(",".join((
                    _fmt(float(entry["a_nm"])),
                    _fmt(point["e_J_per_m2"]),
                    _fmt(point["density"]))))
        _write(out_path, "\n".join(lines) + "\n")
    else:
        _write(out_path, json.dumps(report, indent=2, default=_fmt) + "\n")
    return EXIT_OK


_COMMANDS = {
    "pressure": cmd_pressure,
    "sweep": cmd_sweep,
    "conductivity": cmd_conductivity,
    "fluctuations": cmd_fluctuations,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="casimirwl",
        description="Casimir pressure and disorder-fluctuation calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to config file")
        p.add_argument("--out", default="", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default from config)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--strict", action="store_true",
                       help="reject unknown config keys")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_config(text, strict=args.strict)
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        fmt = args.format or cfg.output_format
        out_path = args.out or cfg.output_path
        return _COMMANDS[args.command](cfg, out_path, fmt, args.workers)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CasimirError, DegenerateDistributionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
