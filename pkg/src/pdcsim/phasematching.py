"""Phase-matching and group-velocity-matching solvers for degenerate PDC.

Geometry conventions (all angles internal to the crystal):

* the pump propagates at the cut angle theta_c from the optic axis;
* the signal propagates at theta_s from the pump (collinear: theta_s = 0),
  in the plane containing pump and optic axis, on the far side from the
  axis (polar angle theta_c + theta_s);
* the idler propagates on the opposite side of the pump (theta_i = -theta_s
  in the joint-spectral-amplitude geometry; the phase-matching system
  solves the exact idler angle).

Polarizations: the pump defaults to extraordinary with an ordinary signal
(Type-II) -- the negative-uniaxial workhorse assignment.  Positive-like
principal planes of the biaxial crystals phase-match with the roles
swapped (ordinary pump, extraordinary daughters carrying the angle
tuning), so both pump and signal polarizations are configurable.  Type-I
always places both daughters orthogonal to the pump; Type-II places
signal and idler orthogonal to each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from . import dispersion as disp
from .constants import C_LIGHT, TWO_PI, sigma_nm_to_omega, wavelength_to_omega
from .dispersion import CrystalModel, EXTRAORDINARY, ORDINARY
from .errors import ConfigError, NoGvmAngle, NoPhaseMatching, OutOfValidityRange

TYPE_I = "type1"
TYPE_II = "type2"

# bracketing grids (rad / nm);  residuals are smooth, so a coarse scan
# followed by Brent refinement is cheap and robust
_THETA_GRID_STEP = math.radians(0.05)
_THETA_EPS = math.radians(1e-4)
_LAMBDA_SCAN_STEP_NM = 1.0
_THETA_XTOL = 1e-12


def _flip(pol: str) -> str:
    return EXTRAORDINARY if pol == ORDINARY else ORDINARY


@dataclass(frozen=True)
class Polarizations:
    """Resolved (pump, signal, idler) polarization assignment."""

    pump: str
    signal: str
    idler: str

    @classmethod
    def resolve(cls, pdc_type: str, pump: str = EXTRAORDINARY,
                signal: Optional[str] = None) -> "Polarizations":
        if pump not in (ORDINARY, EXTRAORDINARY):
            raise ConfigError(f"unknown pump polarization {pump!r}")
        if pdc_type == TYPE_I:
            want = _flip(pump)
            if signal is not None and signal != want:
                raise ConfigError("Type-I daughters are orthogonal to the pump")
            return cls(pump, want, want)
        if pdc_type == TYPE_II:
            if signal is None:
                signal = ORDINARY
            if signal not in (ORDINARY, EXTRAORDINARY):
                raise ConfigError(f"unknown signal polarization {signal!r}")
            return cls(pump, signal, _flip(signal))
        raise ConfigError(f"pdc_type must be {TYPE_I!r} or {TYPE_II!r}")


@dataclass(frozen=True)
class PdcConfig:
    """One degenerate PDC scenario (immutable).

    Internal units: rad, rad/s, m.  Use :meth:`build` to construct from
    the interface units (nm, mm, um, degrees).
    """

    crystal: CrystalModel
    pdc_type: str
    lambda_p_nm: float
    sigma_omega: float  # pump amplitude std dev, rad/s
    length_m: float
    theta_cut: float  # rad
    theta_s: float = 0.0  # rad; 0 => collinear
    waist_m: Optional[float] = None
    pump_order: int = 0
    pump_polarization: str = EXTRAORDINARY
    signal_polarization: Optional[str] = None  # None => Type-II default / Type-I derived

    def __post_init__(self):
        if self.length_m <= 0:
            raise ConfigError("crystal length must be positive")
        if self.sigma_omega <= 0:
            raise ConfigError("pump spectral width must be positive")
        if self.pump_order < 0:
            raise ConfigError("pump order must be >= 0")
        if self.theta_s < 0:
            raise ConfigError("noncollinear angle must be >= 0")
        if self.collinear and self.waist_m is not None:
            raise ConfigError("collinear geometry must not carry a beam waist")
        if not self.collinear and (self.waist_m is None or self.waist_m <= 0):
            raise ConfigError("noncollinear geometry requires a positive beam waist")
        # validates pdc_type and the polarization assignment
        object.__setattr__(
            self,
            "_pols",
            Polarizations.resolve(self.pdc_type, self.pump_polarization, self.signal_polarization),
        )

    @property
    def polarizations(self) -> Polarizations:
        return self._pols

    @property
    def collinear(self) -> bool:
        return self.theta_s == 0.0

    @property
    def lambda_s_nm(self) -> float:
        # degenerate process: both daughters at twice the pump wavelength
        return 2.0 * self.lambda_p_nm

    lambda_i_nm = lambda_s_nm

    @property
    def omega_p0(self) -> float:
        return wavelength_to_omega(self.lambda_p_nm * 1e-9)

    @property
    def omega_s0(self) -> float:
        return 0.5 * self.omega_p0

    omega_i0 = omega_s0

    @classmethod
    def build(
        cls,
        crystal: CrystalModel | str,
        pdc_type: str,
        lambda_p_nm: float,
        sigma_nm: float,
        length_mm: float,
        theta_s_deg: float = 0.0,
        waist_um: Optional[float] = None,
        cut_angle_deg: Optional[float] = None,
        pump_order: int = 0,
        pump_polarization: Optional[str] = None,
        signal_polarization: Optional[str] = None,
    ) -> "PdcConfig":
        """Construct from interface units; cut angle defaults to the
        phase-matching angle solved for the given geometry, polarizations
        default to the crystal registry's assignment for the process."""
        if isinstance(crystal, str):
            crystal = disp.load_crystal(crystal)
        pump_polarization, signal_polarization = default_polarizations(
            crystal, pdc_type, pump_polarization, signal_polarization
        )
        theta_s = math.radians(theta_s_deg)
        pols = Polarizations.resolve(pdc_type, pump_polarization, signal_polarization)
        if cut_angle_deg is not None:
            theta_cut = math.radians(cut_angle_deg)
        else:
            theta_cut = find_pm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
        return cls(
            crystal=crystal,
            pdc_type=pdc_type,
            lambda_p_nm=lambda_p_nm,
            sigma_omega=sigma_nm_to_omega(sigma_nm, lambda_p_nm),
            length_m=length_mm * 1e-3,
            theta_cut=theta_cut,
            theta_s=theta_s,
            waist_m=None if waist_um is None else waist_um * 1e-6,
            pump_order=pump_order,
            pump_polarization=pump_polarization,
            signal_polarization=pols.signal,
        )

    def with_pump_order(self, order: int) -> "PdcConfig":
        return replace(self, pump_order=order)


def default_polarizations(
    crystal: CrystalModel,
    pdc_type: str,
    pump: Optional[str] = None,
    signal: Optional[str] = None,
) -> tuple[str, Optional[str]]:
    """Fill unspecified polarizations from the crystal registry defaults
    (extraordinary pump / ordinary signal when the registry is silent)."""
    defaults = (crystal.pdc_defaults or {}).get(pdc_type, {})
    if pump is None:
        pump = defaults.get("pump", EXTRAORDINARY)
    if signal is None:
        signal = defaults.get("signal")
        if signal is None and pdc_type == TYPE_II:
            signal = ORDINARY
    return pump, signal


@dataclass(frozen=True)
class GvmSolution:
    """Joint solution of phase matching and group-velocity matching."""

    lambda_gvm_nm: float
    theta_gvm: float  # rad
    theta_s: float  # rad
    residual_pm: float  # index-equation residual (dimensionless)
    residual_gvm: float  # k'_p - k'_s cos(theta_s), s/m


@dataclass(frozen=True)
class MismatchComponents:
    """Longitudinal and transverse wavevector mismatch, rad/m."""

    dk_z: np.ndarray | float
    dk_perp: np.ndarray | float


# --- polarization-resolved index helpers -----------------------------------


def _index(crystal, pol: str, wl_um, polar_angle):
    if pol == ORDINARY:
        return disp.n_ordinary_array(crystal, np.asarray(wl_um, dtype=float))
    return disp.n_e_angle_array(crystal, np.asarray(wl_um, dtype=float), polar_angle)


def _group_index(crystal, pol: str, wl_um, polar_angle):
    if pol == ORDINARY:
        return disp.group_index_ordinary_array(crystal, np.asarray(wl_um, dtype=float))
    return disp.group_index_e_angle_array(crystal, np.asarray(wl_um, dtype=float), polar_angle)


def daughter_polar_angle(pdc_type: str, theta_c, theta_s: float):
    """Polar angle (from the optic axis) at which an extraordinary daughter
    field's index is evaluated.

    Type-II daughters sit on the emission cone out of the principal plane:
    their polar angle obeys cos(theta') = cos(theta_c) cos(theta_s).
    Type-I daughters are treated at the cut angle itself (their shared
    index makes the walk-off symmetric, and the transverse mismatch then
    vanishes identically at degeneracy).  Both reduce to theta_c in the
    collinear limit.
    """
    if theta_s == 0.0:
        return theta_c
    if pdc_type == TYPE_II:
        return np.arccos(np.cos(theta_c) * math.cos(theta_s))
    return theta_c


def mismatch(cfg: PdcConfig, omega_s, omega_i) -> MismatchComponents:
    """Exact (non-Taylor) wavevector mismatch components from dispersion.

    Accepts scalars or broadcastable arrays of angular frequencies.
    Collinear configurations give dk_perp identically zero and dk_z equal
    to the scalar mismatch k_p - k_s - k_i.  Signal and idler propagate
    at +theta_s / -theta_s from the pump; extraordinary daughters carry
    the polar angle of :func:`daughter_polar_angle`.
    """
    pols = cfg.polarizations
    omega_s = np.asarray(omega_s, dtype=float)
    omega_i = np.asarray(omega_i, dtype=float)
    omega_p = omega_s + omega_i
    wl_s_um = TWO_PI * C_LIGHT / omega_s * 1e6
    wl_i_um = TWO_PI * C_LIGHT / omega_i * 1e6
    wl_p_um = TWO_PI * C_LIGHT / omega_p * 1e6

    polar_d = daughter_polar_angle(cfg.pdc_type, cfg.theta_cut, cfg.theta_s)
    k_s = omega_s * _index(cfg.crystal, pols.signal, wl_s_um, polar_d) / C_LIGHT
    k_i = omega_i * _index(cfg.crystal, pols.idler, wl_i_um, polar_d) / C_LIGHT
    k_p = omega_p * _index(cfg.crystal, pols.pump, wl_p_um, cfg.theta_cut) / C_LIGHT

    if cfg.collinear:
        dk_z = k_p - k_s - k_i
        dk_perp = np.zeros_like(dk_z)
    else:
        dk_z = k_p - (k_s + k_i) * math.cos(cfg.theta_s)
        dk_perp = (k_i - k_s) * math.sin(cfg.theta_s)
    if dk_z.ndim == 0:
        return MismatchComponents(float(dk_z), float(dk_perp))
    return MismatchComponents(dk_z, dk_perp)


# --- phase-matching angle ---------------------------------------------------


def pm_residual(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s: float,
    lambda_p_nm: float,
    theta_c,
    pols: Optional[Polarizations] = None,
):
    """Residual of the degenerate phase-matching condition at cut angle
    theta_c (scalar or array).  Zero at the phase-matching angle.

    This is the longitudinal mismatch at the central frequencies with the
    idler direction fixed at theta_i = -theta_s:

        2 n_p(theta_c) - (n_s + n_i) cos(theta_s)

    For Type-II the transverse component is left nonzero (orthogonally
    polarized daughters cannot balance it), so only approximate
    phasematching is possible; Type-I balances transversally by symmetry.
    """
    if pols is None:
        pols = Polarizations.resolve(pdc_type)
    theta_c = np.asarray(theta_c, dtype=float)
    wl_p = lambda_p_nm * 1e-3
    wl_s = 2.0 * wl_p
    n_p = _index(crystal, pols.pump, wl_p, theta_c)
    polar_d = daughter_polar_angle(pdc_type, theta_c, theta_s)
    n_s = _index(crystal, pols.signal, wl_s, polar_d)
    n_i = _index(crystal, pols.idler, wl_s, polar_d)
    if theta_s == 0.0:
        return 2.0 * n_p - n_s - n_i
    return 2.0 * n_p - (n_s + n_i) * math.cos(theta_s)


def _bracket_roots(f: Callable[[np.ndarray], np.ndarray], grid: np.ndarray) -> list[float]:
    """All roots of f on the grid's span: vectorized scan for sign changes,
    then Brent refinement inside each bracketing interval."""
    vals = f(grid)
    roots = []
    sign = np.sign(vals)
    for j in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        roots.append(brentq(lambda t: float(f(np.asarray(t))), grid[j], grid[j + 1], xtol=_THETA_XTOL))
    for j in np.nonzero(vals == 0.0)[0]:
        roots.append(float(grid[j]))
    return sorted(roots)


def _theta_grid() -> np.ndarray:
    grid = np.arange(_THETA_EPS, math.pi / 2 + _THETA_GRID_STEP, _THETA_GRID_STEP)
    grid[-1] = min(grid[-1], math.pi / 2)
    return grid


def find_pm_angle(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s: float,
    lambda_p_nm: float,
    pols: Optional[Polarizations] = None,
    all_roots: bool = False,
):
    """Phase-matching cut angle(s) in (0, pi/2] for a degenerate process.

    Returns the unique root, or with ``all_roots=True`` the full list.
    When several roots exist and ``all_roots`` is not set, the one closest
    to the group-velocity-matching angle is returned.
    Raises NoPhaseMatching when the residual has no zero crossing.
    """
    if pols is None:
        pols = Polarizations.resolve(pdc_type, *default_polarizations(crystal, pdc_type))

    def f(th):
        return pm_residual(crystal, pdc_type, theta_s, lambda_p_nm, th, pols)

    roots = _bracket_roots(f, _theta_grid())
    if not roots:
        raise NoPhaseMatching(
            f"{crystal.name} {pdc_type}: no phase-matching angle in (0, 90 deg] "
            f"for pump {lambda_p_nm:.1f} nm at theta_s={math.degrees(theta_s):.3f} deg"
        )
    if all_roots:
        return roots
    if len(roots) == 1:
        return roots[0]
    try:
        th_gvm = find_gvm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
        return min(roots, key=lambda r: abs(r - th_gvm))
    except NoGvmAngle:
        return roots[0]


# --- group-velocity-matching angle ------------------------------------------


def gvm_residual(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s: float,
    lambda_p_nm: float,
    theta_c,
    pols: Optional[Polarizations] = None,
):
    """Group-velocity-matching residual k'_s - k'_p cos(theta_s), in s/m
    (scalar or array over theta_c).

    Collinear this is plain matching of the inverse group velocities.
    Noncollinear, the signal pulse travels at theta_s from the pump, and
    the condition matches its axial group velocity to the pump's:
    v_s cos(theta_s) = v_p, i.e. k'_s = k'_p cos(theta_s).
    """
    if pols is None:
        pols = Polarizations.resolve(pdc_type)
    theta_c = np.asarray(theta_c, dtype=float)
    wl_p = lambda_p_nm * 1e-3
    wl_s = 2.0 * wl_p
    kp = _group_index(crystal, pols.pump, wl_p, theta_c) / C_LIGHT
    polar_d = daughter_polar_angle(pdc_type, theta_c, theta_s)
    ks = _group_index(crystal, pols.signal, wl_s, polar_d) / C_LIGHT
    return ks - kp * math.cos(theta_s)


def find_gvm_angle(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s: float,
    lambda_p_nm: float,
    pols: Optional[Polarizations] = None,
) -> float:
    """Cut angle at which the pump group velocity matches the signal's
    (projected on the pump axis for noncollinear geometries).

    Raises NoGvmAngle when no root exists in (0, pi/2].
    """
    if pols is None:
        pols = Polarizations.resolve(pdc_type, *default_polarizations(crystal, pdc_type))

    def f(th):
        return gvm_residual(crystal, pdc_type, theta_s, lambda_p_nm, th, pols)

    roots = _bracket_roots(f, _theta_grid())
    if not roots:
        raise NoGvmAngle(
            f"{crystal.name} {pdc_type}: group velocities of pump "
            f"({pols.pump}) and signal ({pols.signal}) do not match at any "
            f"cut angle for pump {lambda_p_nm:.1f} nm"
        )
    return roots[0]


# --- joint solution over the pump wavelength ---------------------------------


def _pump_wavelength_window(crystal: CrystalModel) -> tuple[float, float]:
    lo_um, hi_um = crystal.range_um
    margin = 1.002
    lo = lo_um * 1e3 * margin
    hi = hi_um * 1e3 / 2.0 / margin  # signal at 2*lambda_p must stay in range
    if lo >= hi:
        raise OutOfValidityRange(
            f"{crystal.name}: validity range {crystal.range_um} um cannot host "
            "a degenerate process"
        )
    return lo, hi


def _curve_difference(crystal, pdc_type, theta_s, lambda_p_nm, pols):
    """theta_PM - theta_GVM at one pump wavelength; None when either is missing.

    The pump-polarization-ordinary case has an angle-independent k'_p, so
    the GVM residual is used directly (in s/m) instead of an angle
    difference; its zero crossing in wavelength is the GVM wavelength and
    phase matching alone fixes the angle.
    """
    try:
        if pols.pump == ORDINARY and pols.signal == ORDINARY:
            # both group velocities angle-independent: the GVM condition
            # selects the wavelength alone; phase matching must still exist
            find_pm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
            return float(gvm_residual(crystal, pdc_type, theta_s, lambda_p_nm, 0.1, pols))
        th_gvm = find_gvm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
        roots = find_pm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols, all_roots=True)
    except (NoPhaseMatching, NoGvmAngle, OutOfValidityRange):
        return None
    th_pm = min(roots, key=lambda r: abs(r - th_gvm))
    return th_pm - th_gvm


def find_gvm_wavelength(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s: float = 0.0,
    pols: Optional[Polarizations] = None,
    lambda_window_nm: Optional[tuple[float, float]] = None,
    scan_step_nm: float = _LAMBDA_SCAN_STEP_NM,
) -> Optional[GvmSolution]:
    """Pump wavelength where the phase-matching and group-velocity-matching
    curves intersect, with the common angle and both residuals.

    Returns None when the curves do not intersect anywhere in the scan
    window -- that is physical information (e.g. LN in collinear Type-II),
    not an error.
    """
    if pols is None:
        pols = Polarizations.resolve(pdc_type, *default_polarizations(crystal, pdc_type))
    if lambda_window_nm is None:
        lambda_window_nm = _pump_wavelength_window(crystal)
    lo, hi = lambda_window_nm
    lams = np.arange(lo, hi + scan_step_nm, scan_step_nm)
    lams[-1] = min(lams[-1], hi)

    diff_fn = lambda x: _curve_difference(crystal, pdc_type, theta_s, x, pols)  # noqa: E731

    prev_lam = None
    prev_diff = None
    for lam in lams:
        diff = diff_fn(lam)
        if diff is None:
            prev_lam, prev_diff = None, None
            continue
        if prev_diff is not None and prev_diff * diff < 0:
            lam_star = brentq(diff_fn, prev_lam, lam, xtol=1e-6)
            return _solution_at(crystal, pdc_type, theta_s, lam_star, pols)
        if diff == 0.0:
            return _solution_at(crystal, pdc_type, theta_s, lam, pols)
        prev_lam, prev_diff = lam, diff
    return None


def _solution_at(crystal, pdc_type, theta_s, lambda_p_nm, pols) -> GvmSolution:
    if pols.pump == ORDINARY and pols.signal == ORDINARY:
        theta_star = find_pm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
    else:
        theta_star = find_gvm_angle(crystal, pdc_type, theta_s, lambda_p_nm, pols)
    res_pm = float(pm_residual(crystal, pdc_type, theta_s, lambda_p_nm, theta_star, pols))
    res_gvm = float(gvm_residual(crystal, pdc_type, theta_s, lambda_p_nm, theta_star, pols))
    return GvmSolution(
        lambda_gvm_nm=lambda_p_nm,
        theta_gvm=theta_star,
        theta_s=theta_s,
        residual_pm=res_pm,
        residual_gvm=res_gvm,
    )


def gvm_scan(
    crystal: CrystalModel,
    pdc_type: str,
    theta_s_values,
    pols: Optional[Polarizations] = None,
) -> list[Optional[GvmSolution]]:
    """find_gvm_wavelength over a list of noncollinear angles.

    Seeds each angle's wavelength window from the previous solution
    (monotone continuation) and falls back to the full window on a miss.
    """
    out: list[Optional[GvmSolution]] = []
    window = None
    for th in theta_s_values:
        if th < 0 or not math.isfinite(th):
            raise ConfigError(f"noncollinear angle must be finite and >= 0, got {th}")
        sol = None
        if window is not None:
            sol = find_gvm_wavelength(crystal, pdc_type, th, pols, lambda_window_nm=window)
        if sol is None:
            sol = find_gvm_wavelength(crystal, pdc_type, th, pols)
        out.append(sol)
        if sol is not None:
            full = _pump_wavelength_window(crystal)
            window = (
                max(full[0], sol.lambda_gvm_nm - 40.0),
                min(full[1], sol.lambda_gvm_nm + 40.0),
            )
        else:
            window = None
    return out


def center_inverse_group_velocities(cfg: PdcConfig) -> tuple[float, float, float]:
    """(k'_p, k'_s, k'_i) in s/m at the central wavelengths for the
    configured cut angle; each field at its own polarization."""
    pols = cfg.polarizations
    wl_p = cfg.lambda_p_nm * 1e-3
    wl_s = 2.0 * wl_p
    polar_d = daughter_polar_angle(cfg.pdc_type, cfg.theta_cut, cfg.theta_s)
    kp = float(_group_index(cfg.crystal, pols.pump, wl_p, cfg.theta_cut)) / C_LIGHT
    ks = float(_group_index(cfg.crystal, pols.signal, wl_s, polar_d)) / C_LIGHT
    ki = float(_group_index(cfg.crystal, pols.idler, wl_s, polar_d)) / C_LIGHT
    return kp, ks, ki
