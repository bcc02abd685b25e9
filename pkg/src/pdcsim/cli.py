"""Command-line interface.

Subcommands: gvm-scan, table, jsa, schmidt, filter-sweep, purity, run.
Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import dispersion as disp
from . import fock
from . import jsa as jsamod
from . import phasematching as pmmod
from . import scenario as scmod
from . import schmidt as schmod
from .constants import rad_to_deg
from .errors import CliError, ConfigError, PdcSimError

VALIDATION_ERRORS = (ConfigError, CliError, ValueError)


def _angles_from_spec(spec: str) -> list[float]:
    """Parse '0,2,5.325' or 'start:stop:step' (degrees)."""
    if ":" in spec:
        start, stop, step = (float(x) for x in spec.split(":"))
        n = int(math.floor((stop - start) / step + 0.5)) + 1
        return [start + i * step for i in range(n)]
    return [float(x) for x in spec.split(",")]


def cmd_gvm_scan(args) -> int:
    crystal = disp.load_crystal(args.crystal, args.crystal_data)
    pols = pmmod.Polarizations.resolve(
        args.type,
        *pmmod.default_polarizations(crystal, args.type, args.pump_pol, args.signal_pol),
    )
    angles_deg = _angles_from_spec(args.theta_s)
    sols = pmmod.gvm_scan(crystal, args.type, [math.radians(a) for a in angles_deg], pols)
    out = Path(args.out) / f"gvm_scan_{args.crystal.lower()}_{args.type}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta_s_deg", "lambda_gvm_nm", "theta_gvm_deg",
                    "residual_pm", "residual_gvm", "status"])
        for a, sol in zip(angles_deg, sols):
            if sol is None:
                w.writerow([a, "", "", "", "", "no-solution"])
            else:
                w.writerow([a, repr(sol.lambda_gvm_nm), repr(rad_to_deg(sol.theta_gvm)),
                            repr(sol.residual_pm), repr(sol.residual_gvm), "ok"])
    if args.gv_curve_lambda is not None:
        _write_gv_curve(crystal, args, pols)
    print(out)
    return 0


def _write_gv_curve(crystal, args, pols) -> None:
    """Inverse group velocities of pump and signal vs cut angle at a fixed
    pump wavelength (the curves whose crossing is the GVM angle)."""
    import numpy as np

    lam = args.gv_curve_lambda
    thetas = np.linspace(math.radians(0.5), math.pi / 2, 180)
    res = pmmod.gvm_residual(crystal, args.type, 0.0, lam, thetas, pols)
    kp = pmmod._group_index(crystal, pols.pump, lam * 1e-3, thetas) / pmmod.C_LIGHT
    ks = kp + np.asarray(res)  # residual = k'_s - k'_p for collinear
    out = Path(args.out) / f"gv_curve_{args.crystal.lower()}_{args.type}.csv"
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta_c_deg", "inverse_gv_pump_s_m", "inverse_gv_signal_s_m"])
        for t, a, b in zip(thetas, kp, ks):
            w.writerow([repr(rad_to_deg(float(t))), repr(float(a)), repr(float(b))])
    print(out)


def cmd_table(args) -> int:
    rows = scmod.run_table(args.which, args.crystal_data)
    out = Path(args.out) / f"{args.which}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["crystal", "lambda_gvm_nm", "theta_gvm_deg", "status"])
        for r in rows:
            if r["status"] == "ok":
                w.writerow([r["crystal"], repr(r["lambda_gvm_nm"]),
                            repr(r["theta_gvm_deg"]), "ok"])
            else:
                w.writerow([r["crystal"], "", "", r["status"]])
    print(out)
    return 0


def _load_config(args) -> scmod.ScenarioConfig:
    if not args.config:
        raise ConfigError("--config <path> is required for this subcommand")
    return scmod.ScenarioConfig.from_json(args.config)


def cmd_jsa(args) -> int:
    cfg = _load_config(args)
    pdc, _ = scmod.resolve_pdc_config(cfg, args.crystal_data)
    model = args.model or cfg.model
    grid = jsamod.FrequencyGrid.centered(pdc, cfg.grid_points, cfg.grid_span_sigma)
    built = jsamod.build_jsa(pdc, grid, model)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    retained = None
    if cfg.filter_width_nm is not None:
        center = cfg.filter_center_nm or 2.0 * pdc.lambda_p_nm
        built, retained = jsamod.apply_idler_filter(
            built, jsamod.FilterSpec(center, cfg.filter_width_nm)
        )
    scmod.write_jsa_csv(out / "jsa_grid.csv", built)
    meta = {
        "config": json.loads(cfg.to_json()),
        "lambda_p_nm": pdc.lambda_p_nm,
        "theta_cut_deg": rad_to_deg(pdc.theta_cut),
        "model": model,
        "norm": built.norm,
        "retained_fraction": retained,
    }
    (out / "metadata.json").write_text(json.dumps(meta, sort_keys=True, indent=2))
    print(out / "jsa_grid.csv")
    return 0


def cmd_schmidt(args) -> int:
    cfg = _load_config(args)
    pdc, _ = scmod.resolve_pdc_config(cfg, args.crystal_data)
    model = args.model or cfg.model
    grid = jsamod.FrequencyGrid.centered(pdc, cfg.grid_points, cfg.grid_span_sigma)
    built = jsamod.build_jsa(pdc, grid, model)
    if cfg.filter_width_nm is not None:
        center = cfg.filter_center_nm or 2.0 * pdc.lambda_p_nm
        built, _ = jsamod.apply_idler_filter(
            built, jsamod.FilterSpec(center, cfg.filter_width_nm)
        )
    dec = schmod.decompose(built)
    ref = schmod.pump_shape_on_signal_axis(pdc, grid.omega_s)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = {
        "K": dec.mode_number,
        "eigenvalues": [float(x) for x in dec.eigenvalues[:10]],
        "overlap_first_mode_vs_pump": schmod.mode_overlap(
            dec.signal_modes[0], ref, dec.d_omega_s
        ),
    }
    (out / "schmidt.json").write_text(json.dumps(result, sort_keys=True, indent=2))
    scmod.write_modes_csv(out / "signal_modes.csv", grid.omega_s, dec.signal_modes)
    scmod.write_modes_csv(out / "idler_modes.csv", grid.omega_i, dec.idler_modes)
    print(out / "schmidt.json")
    return 0


def cmd_filter_sweep(args) -> int:
    cfg = _load_config(args)
    pdc, _ = scmod.resolve_pdc_config(cfg, args.crystal_data)
    model = args.model or cfg.model
    grid = jsamod.FrequencyGrid.centered(pdc, cfg.grid_points, cfg.grid_span_sigma)
    built = jsamod.build_jsa(pdc, grid, model)
    center = cfg.filter_center_nm or 2.0 * pdc.lambda_p_nm
    widths = [float(x) for x in args.widths.split(",")]
    out = Path(args.out) / "filter_sweep.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["width_nm", "K", "retained_fraction"])
        w.writerow(["", repr(schmod.decompose(built).mode_number), repr(1.0)])
        for width in widths:
            filt, retained = jsamod.apply_idler_filter(
                built, jsamod.FilterSpec(center, width)
            )
            w.writerow([width, repr(schmod.decompose(filt).mode_number), repr(retained)])
    print(out)
    return 0


def cmd_purity(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ks = np.linspace(args.k_min, args.k_max, args.k_points)
    nbars = np.linspace(args.nbar_min, args.nbar_max, args.nbar_points)
    surface = fock.purity_surface(list(ks), list(nbars))
    surf_path = out / "purity_surface.csv"
    with surf_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["K", "nbar", "purity"])
        # single-mode edge: at K = 1 the output stays pure for any input
        for nb in nbars:
            w.writerow([repr(1.0), repr(float(nb)), repr(1.0)])
        for i, k in enumerate(ks):
            for j, nb in enumerate(nbars):
                w.writerow([repr(float(k)), repr(float(nb)), repr(float(surface[i, j]))])
    rep = fock.verify_nonsaturation(
        trials=args.trials, modes=2, truncation=5, seed=args.seed
    )
    report = {
        "trials": rep.trials,
        "min_purity_gap": rep.min_purity_gap,
        "min_cs_gap": rep.min_cs_gap,
        "seed": rep.seed,
    }
    (out / "nonsaturation.json").write_text(json.dumps(report, sort_keys=True, indent=2))
    print(surf_path)
    return 0


def cmd_run(args) -> int:
    cfg = _load_config(args)
    report = scmod.run_scenario(cfg, args.out, args.crystal_data, model=args.model)
    print((Path(args.out) / "report.json"))
    print(f"K = {report.mode_number:.4f}"
          + (f", filtered K = {report.mode_number_filtered:.4f}"
             if report.mode_number_filtered is not None else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pdcsim",
        description="Mode-selective single-photon addition via PDC: "
        "phase matching, JSA, Schmidt modes, heralded purity.",
    )
    p.add_argument("--crystal-data", help="alternative crystal registry JSON")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=["sinc", "gaussian"], default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gvm-scan", help="GVM solutions over noncollinear angles")
    s.add_argument("--crystal", required=True)
    s.add_argument("--type", choices=["type1", "type2"], required=True)
    s.add_argument("--theta-s", required=True,
                   help="degrees: comma list '0,2,5' or range 'start:stop:step'")
    s.add_argument("--pump-pol", choices=["ordinary", "extraordinary"])
    s.add_argument("--signal-pol", choices=["ordinary", "extraordinary"])
    s.add_argument("--gv-curve-lambda", type=float, metavar="NM",
                   help="also emit pump/signal inverse group velocities vs cut "
                        "angle at this pump wavelength")
    s.set_defaults(func=cmd_gvm_scan)

    s = sub.add_parser("table", help="collinear GVM tables")
    s.add_argument("--which", choices=[scmod.TABLE_ONE, scmod.TABLE_TWO], required=True)
    s.set_defaults(func=cmd_table)

    for name, fn in (("jsa", cmd_jsa), ("schmidt", cmd_schmidt), ("run", cmd_run)):
        s = sub.add_parser(name)
        s.add_argument("--config", required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("filter-sweep", help="K vs idler filter width")
    s.add_argument("--config", required=True)
    s.add_argument("--widths", required=True, help="comma list of widths in nm")
    s.set_defaults(func=cmd_filter_sweep)

    s = sub.add_parser("purity", help="two-mode purity surface + non-saturation check")
    s.add_argument("--k-min", type=float, default=1.001)
    s.add_argument("--k-max", type=float, default=2.0)
    s.add_argument("--k-points", type=int, default=60)
    s.add_argument("--nbar-min", type=float, default=0.0)
    s.add_argument("--nbar-max", type=float, default=5.0)
    s.add_argument("--nbar-points", type=int, default=60)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_purity)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PdcSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
