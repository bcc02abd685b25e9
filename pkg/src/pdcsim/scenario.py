"""Scenario configuration, end-to-end execution, and file emission.

A scenario composes the pipeline dispersion -> phase matching -> JSA ->
Schmidt analysis (optionally through an idler filter) and writes its
data products (grid CSV, mode CSVs, JSON reports) plus a manifest with
content digests.  All physical quantities in config files carry unit
suffixes in their key names.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import dispersion as disp
from . import jsa as jsamod
from . import phasematching as pmmod
from . import schmidt as schmod
from .constants import rad_to_deg
from .errors import ConfigError
from .jsa import FilterSpec
from .phasematching import PdcConfig

CONFIG_KEYS = {
    "name",
    "crystal",
    "pdc_type",
    "lambda_p_nm",
    "pump_sigma_nm",
    "crystal_length_mm",
    "theta_s_deg",
    "waist_um",
    "cut_angle_deg",
    "pump_order",
    "pump_polarization",
    "signal_polarization",
    "model",
    "grid_points",
    "grid_span_sigma",
    "filter_center_nm",
    "filter_width_nm",
    "solve_gvm",
    "seed",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """One full pipeline run, serializable to/from JSON losslessly."""

    name: str
    crystal: str
    pdc_type: str
    pump_sigma_nm: float
    crystal_length_mm: float
    lambda_p_nm: Optional[float] = None  # None: solve the GVM wavelength
    theta_s_deg: float = 0.0
    waist_um: Optional[float] = None
    cut_angle_deg: Optional[float] = None  # None: phase-matching angle
    pump_order: int = 0
    pump_polarization: Optional[str] = None
    signal_polarization: Optional[str] = None
    model: str = jsamod.MODEL_SINC
    grid_points: int = jsamod.DEFAULT_GRID_POINTS
    grid_span_sigma: float = jsamod.DEFAULT_SPAN_SIGMA
    filter_center_nm: Optional[float] = None
    filter_width_nm: Optional[float] = None
    solve_gvm: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.model not in (jsamod.MODEL_SINC, jsamod.MODEL_GAUSSIAN):
            raise ConfigError(f"model must be sinc or gaussian, got {self.model!r}")
        if self.lambda_p_nm is None and not self.solve_gvm:
            raise ConfigError("either lambda_p_nm or solve_gvm must be given")
        if self.grid_points < 16:
            raise ConfigError("grid_points must be >= 16")
        if self.grid_span_sigma <= 0:
            raise ConfigError("grid_span_sigma must be positive")

    @classmethod
    def from_json(cls, path: str | Path) -> "ScenarioConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"name", "crystal", "pdc_type", "pump_sigma_nm", "crystal_length_mm"} - set(data)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        return cls(**data)

    def to_json(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(data, sort_keys=True, indent=2)


@dataclass
class ScenarioReport:
    """Results of one scenario run; serialized canonically for
    reproducibility checks (bit-identical for identical config+seed)."""

    config_name: str
    lambda_p_nm: float
    theta_cut_deg: float
    theta_s_deg: float
    model: str
    mode_number: float
    eigenvalues: list[float]
    overlap_first_mode_vs_pump: float
    bandwidth_witness: float
    analytic_mode_number: Optional[float] = None
    retained_fraction: Optional[float] = None
    mode_number_filtered: Optional[float] = None
    residual_pm: Optional[float] = None
    residual_gvm: Optional[float] = None
    manifest: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def resolve_pdc_config(
    cfg: ScenarioConfig, data_path: Optional[str] = None
) -> tuple[PdcConfig, Optional[pmmod.GvmSolution]]:
    """Build the physical configuration, solving for the GVM wavelength
    and angle when requested."""
    crystal = disp.load_crystal(cfg.crystal, data_path)
    pump_pol, signal_pol = pmmod.default_polarizations(
        crystal, cfg.pdc_type, cfg.pump_polarization, cfg.signal_polarization
    )
    pols = pmmod.Polarizations.resolve(cfg.pdc_type, pump_pol, signal_pol)
    theta_s = math.radians(cfg.theta_s_deg)

    solution = None
    lambda_p = cfg.lambda_p_nm
    cut_deg = cfg.cut_angle_deg
    if cfg.solve_gvm:
        solution = pmmod.find_gvm_wavelength(crystal, cfg.pdc_type, theta_s, pols)
        if solution is None:
            raise ConfigError(
                f"{cfg.crystal} {cfg.pdc_type} at theta_s={cfg.theta_s_deg} deg "
                "has no group-velocity-matched wavelength"
            )
        if lambda_p is None:
            lambda_p = solution.lambda_gvm_nm
        if cut_deg is None:
            cut_deg = rad_to_deg(solution.theta_gvm)

    pdc = PdcConfig.build(
        crystal=crystal,
        pdc_type=cfg.pdc_type,
        lambda_p_nm=lambda_p,
        sigma_nm=cfg.pump_sigma_nm,
        length_mm=cfg.crystal_length_mm,
        theta_s_deg=cfg.theta_s_deg,
        waist_um=cfg.waist_um,
        cut_angle_deg=cut_deg,
        pump_order=cfg.pump_order,
        pump_polarization=pump_pol,
        signal_polarization=signal_pol if cfg.pdc_type == pmmod.TYPE_II else None,
    )
    return pdc, solution


def write_jsa_csv(path: Path, grid_jsa: jsamod.JsaGrid) -> None:
    g = grid_jsa.grid
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["omega_s_rad_s", "omega_i_rad_s", "re", "im", "abs2"])
        amp = grid_jsa.amplitude
        for j, ws in enumerate(g.omega_s):
            for k, wi in enumerate(g.omega_i):
                a = amp[j, k]
                w.writerow([repr(float(ws)), repr(float(wi)), repr(a.real), repr(a.imag),
                            repr(float(abs(a) ** 2))])


def write_modes_csv(path: Path, axis: np.ndarray, modes: np.ndarray, count: int = 4) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        header = ["omega_rad_s"]
        for n in range(min(count, modes.shape[0])):
            header += [f"mode{n}_re", f"mode{n}_im"]
        w.writerow(header)
        for j, om in enumerate(axis):
            row = [repr(float(om))]
            for n in range(min(count, modes.shape[0])):
                row += [repr(float(np.real(modes[n, j]))), repr(float(np.imag(modes[n, j])))]
            w.writerow(row)


def run_scenario(
    cfg: ScenarioConfig,
    out_dir: str | Path,
    data_path: Optional[str] = None,
    model: Optional[str] = None,
) -> ScenarioReport:
    """Execute the full pipeline and emit grid/mode/report files.

    Deterministic: identical config (and seed) produce bit-identical
    report JSON.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model = model or cfg.model

    pdc, solution = resolve_pdc_config(cfg, data_path)
    grid = jsamod.FrequencyGrid.centered(pdc, cfg.grid_points, cfg.grid_span_sigma)
    built = jsamod.build_jsa(pdc, grid, model)

    filtered = None
    retained = None
    if cfg.filter_width_nm is not None:
        center = cfg.filter_center_nm
        if center is None:
            center = 2.0 * pdc.lambda_p_nm  # degenerate idler wavelength
        filtered, retained = jsamod.apply_idler_filter(
            built, FilterSpec(center_nm=center, width_nm=cfg.filter_width_nm)
        )

    dec = schmod.decompose(built)
    ref = schmod.pump_shape_on_signal_axis(pdc, grid.omega_s)
    overlap = schmod.mode_overlap(dec.signal_modes[0], ref, dec.d_omega_s)

    analytic = None
    if pdc.collinear:
        try:
            analytic = schmod.analytic_mode_number(schmod.walk_off_coefficients(pdc))
        except Exception:
            analytic = None

    report = ScenarioReport(
        config_name=cfg.name,
        lambda_p_nm=pdc.lambda_p_nm,
        theta_cut_deg=rad_to_deg(pdc.theta_cut),
        theta_s_deg=cfg.theta_s_deg,
        model=model,
        mode_number=dec.mode_number,
        eigenvalues=[float(x) for x in dec.eigenvalues[:10]],
        overlap_first_mode_vs_pump=overlap,
        bandwidth_witness=jsamod.bandwidth_condition_witness(pdc),
        analytic_mode_number=analytic,
        retained_fraction=retained,
        residual_pm=None if solution is None else solution.residual_pm,
        residual_gvm=None if solution is None else solution.residual_gvm,
    )

    write_jsa_csv(out / "jsa_grid.csv", built)
    write_modes_csv(out / "signal_modes.csv", grid.omega_s, dec.signal_modes)
    write_modes_csv(out / "idler_modes.csv", grid.omega_i, dec.idler_modes)
    if filtered is not None:
        dec_f = schmod.decompose(filtered)
        report.mode_number_filtered = dec_f.mode_number
        write_jsa_csv(out / "jsa_grid_filtered.csv", filtered)

    meta = {
        "config": json.loads(cfg.to_json()),
        "lambda_p_nm": pdc.lambda_p_nm,
        "theta_cut_deg": rad_to_deg(pdc.theta_cut),
        "norm": built.norm,
        "retained_fraction": retained,
        "model": model,
    }
    (out / "metadata.json").write_text(json.dumps(meta, sort_keys=True, indent=2))

    for name in sorted(p.name for p in out.iterdir() if p.suffix in (".csv", ".json")):
        if name != "report.json":
            report.manifest[name] = _digest(out / name)
    (out / "report.json").write_text(report.to_json())
    return report


TABLE_ONE = "table1"
TABLE_TWO = "table2"


def run_table(which: str, data_path: Optional[str] = None) -> list[dict]:
    """GVM wavelengths/angles per crystal for the collinear Type-II
    (table1) or Type-I (table2) degenerate process."""
    if which == TABLE_ONE:
        pdc_type = pmmod.TYPE_II
        names = ["KDP", "BBO", "LN", "BiBO", "KTP"]
    elif which == TABLE_TWO:
        pdc_type = pmmod.TYPE_I
        names = ["KDP", "BBO", "LN", "KTP"]
    else:
        raise ConfigError(f"unknown table {which!r} (use table1 or table2)")
    rows = []
    for name in names:
        crystal = disp.load_crystal(name, data_path)
        sol = pmmod.find_gvm_wavelength(crystal, pdc_type, 0.0)
        if sol is None:
            rows.append({"crystal": name, "status": "no-solution"})
        else:
            rows.append(
                {
                    "crystal": name,
                    "lambda_gvm_nm": sol.lambda_gvm_nm,
                    "theta_gvm_deg": rad_to_deg(sol.theta_gvm),
                    "residual_pm": sol.residual_pm,
                    "residual_gvm": sol.residual_gvm,
                    "status": "ok",
                }
            )
    return rows
