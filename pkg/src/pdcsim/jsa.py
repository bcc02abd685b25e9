"""Joint spectral amplitudes on discretized frequency grids.

The JSA is the pump spectral envelope times the phasematching function,

    R(omega_s, omega_i) = alpha_p(omega_s + omega_i) * phi(omega_s, omega_i),

sampled on a uniform (omega_s, omega_i) grid and normalized so that
sum |R|^2 domega_s domega_i = 1.  Phasematching comes in two models:
the exact sinc(dk L/2) and its matched-FWHM Gaussian surrogate
exp(-GAMMA_SINC (dk L/2)^2).  Noncollinear geometries factor into a
longitudinal part (crystal length) times a transverse Gaussian whose
width is set by the pump beam waist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.hermite import hermval

from .constants import C_LIGHT, GAMMA_SINC, TWO_PI
from .errors import EmptyFilter, GridTooCoarse, JsaError
from .phasematching import PdcConfig, center_inverse_group_velocities, mismatch

MODEL_SINC = "sinc"
MODEL_GAUSSIAN = "gaussian"

DEFAULT_GRID_POINTS = 512
DEFAULT_SPAN_SIGMA = 5.0


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform rectangular grid in (omega_s, omega_i), rad/s."""

    omega_s: np.ndarray
    omega_i: np.ndarray

    def __post_init__(self):
        for ax, name in ((self.omega_s, "signal"), (self.omega_i, "idler")):
            if ax.size < 16:
                raise JsaError(f"{name} axis needs >= 16 points, got {ax.size}")
            steps = np.diff(ax)
            if not np.allclose(steps, steps[0], rtol=1e-9):
                raise JsaError(f"{name} axis must be uniformly spaced")
            if steps[0] <= 0:
                raise JsaError(f"{name} axis must be increasing")

    @property
    def d_omega_s(self) -> float:
        return float(self.omega_s[1] - self.omega_s[0])

    @property
    def d_omega_i(self) -> float:
        return float(self.omega_i[1] - self.omega_i[0])

    @property
    def measure(self) -> float:
        return self.d_omega_s * self.d_omega_i

    @classmethod
    def centered(
        cls,
        config: PdcConfig,
        points: int = DEFAULT_GRID_POINTS,
        span_sigma: float = DEFAULT_SPAN_SIGMA,
    ) -> "FrequencyGrid":
        """Square grid of ``points`` per axis spanning +-span_sigma pump
        widths around the degenerate central frequencies."""
        half = span_sigma * config.sigma_omega
        w0 = config.omega_s0
        ax = np.linspace(w0 - half, w0 + half, points)
        return cls(omega_s=ax, omega_i=ax.copy())


@dataclass(frozen=True)
class JsaGrid:
    """Normalized joint spectral amplitude on a frequency grid."""

    grid: FrequencyGrid
    amplitude: np.ndarray  # complex, shape (len(omega_s), len(omega_i))

    def __post_init__(self):
        if self.amplitude.shape != (self.grid.omega_s.size, self.grid.omega_i.size):
            raise JsaError(
                f"amplitude shape {self.amplitude.shape} does not match grid "
                f"({self.grid.omega_s.size}, {self.grid.omega_i.size})"
            )
        if not np.all(np.isfinite(self.amplitude)):
            raise JsaError("amplitude contains non-finite entries")

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.grid.measure)

    def intensity(self) -> np.ndarray:
        return np.abs(self.amplitude) ** 2


@dataclass(frozen=True)
class FilterSpec:
    """Rectangular spectral filter on the idler arm (wavelengths in nm)."""

    center_nm: float
    width_nm: float
    shape: str = "rectangular"

    def __post_init__(self):
        if self.width_nm <= 0:
            raise JsaError("filter width must be positive")
        if self.shape != "rectangular":
            raise JsaError(f"unsupported filter shape {self.shape!r}")


def pump_spectrum(order: int, sigma_omega: float, omega_p0: float, omega) -> np.ndarray:
    """Hermite-Gauss pump spectral amplitude of the given order.

    H_order((omega - omega_p0)/sigma) * exp(-(omega - omega_p0)^2 / (2 sigma^2)),
    real-valued; normalize after sampling on a grid.
    """
    if order < 0:
        raise JsaError("pump order must be >= 0")
    if sigma_omega <= 0:
        raise JsaError("pump width must be positive")
    x = (np.asarray(omega, dtype=float) - omega_p0) / sigma_omega
    coeff = np.zeros(order + 1)
    coeff[order] = 1.0
    return hermval(x, coeff) * np.exp(-0.5 * x * x)


def phasematching_function(
    config: PdcConfig, omega_s, omega_i, model: str = MODEL_SINC
) -> np.ndarray:
    """Phasematching amplitude at (omega_s, omega_i).

    Collinear: phi(dk L / 2) with the exact dispersion mismatch, where
    phi is sinc or the matched-FWHM Gaussian.  Noncollinear: product of
    the longitudinal phi(dk_z L / 2) and the transverse Gaussian
    exp(-GAMMA_SINC * dk_perp^2 w0^2 / 4).
    """
    mm = mismatch(config, omega_s, omega_i)
    half_arg = np.asarray(mm.dk_z) * config.length_m / 2.0
    if model == MODEL_SINC:
        phi_z = np.sinc(half_arg / np.pi)
    elif model == MODEL_GAUSSIAN:
        phi_z = np.exp(-GAMMA_SINC * half_arg**2)
    else:
        raise JsaError(f"unknown phasematching model {model!r}")
    if config.collinear:
        return phi_z
    phi_perp = np.exp(-GAMMA_SINC * np.asarray(mm.dk_perp) ** 2 * config.waist_m**2 / 4.0)
    return phi_z * phi_perp


def _pm_width_estimate(config: PdcConfig) -> float:
    """Smallest spectral width (rad/s, std dev) of the phasematching
    structures, from the Taylor coefficients of the mismatch."""
    kp, ks, ki = center_inverse_group_velocities(config)
    widths = []
    cth = math.cos(config.theta_s)
    for coef in (kp - ks * cth, kp - ki * cth):
        if abs(coef) > 0:
            widths.append(math.sqrt(2.0) / (math.sqrt(GAMMA_SINC) * config.length_m * abs(coef)))
    if not config.collinear:
        sth = math.sin(config.theta_s)
        for coef in (ks * sth, ki * sth):
            if abs(coef) > 0:
                widths.append(
                    math.sqrt(2.0) / (math.sqrt(GAMMA_SINC) * config.waist_m * abs(coef))
                )
    return min(widths) if widths else math.inf


def build_jsa(
    config: PdcConfig,
    grid: Optional[FrequencyGrid] = None,
    model: str = MODEL_SINC,
) -> JsaGrid:
    """Sample pump envelope x phasematching on the grid and normalize.

    Raises GridTooCoarse when the pump or the narrowest phasematching
    feature would span fewer than 8 grid points.
    """
    if grid is None:
        grid = FrequencyGrid.centered(config)

    fwhm = 2.0 * math.sqrt(2.0 * math.log(2.0))
    pump_fwhm = fwhm * config.sigma_omega
    pm_fwhm = fwhm * _pm_width_estimate(config)
    step = max(grid.d_omega_s, grid.d_omega_i)
    if pump_fwhm < 8.0 * step:
        raise GridTooCoarse(
            f"pump FWHM spans {pump_fwhm / step:.1f} grid steps (< 8); refine the grid"
        )
    if pm_fwhm < 8.0 * step:
        raise GridTooCoarse(
            f"phasematching FWHM spans {pm_fwhm / step:.1f} grid steps (< 8); "
            "refine or widen the grid"
        )

    ws = grid.omega_s[:, None]
    wi = grid.omega_i[None, :]
    amp = pump_spectrum(config.pump_order, config.sigma_omega, config.omega_p0, ws + wi)
    amp = amp * phasematching_function(config, ws, wi, model)
    amp = amp.astype(complex)
    norm = math.sqrt(np.sum(np.abs(amp) ** 2) * grid.measure)
    if norm == 0.0:
        raise JsaError("JSA is identically zero on this grid")
    return JsaGrid(grid=grid, amplitude=amp / norm)


def idler_wavelengths_nm(grid: FrequencyGrid) -> np.ndarray:
    return TWO_PI * C_LIGHT / grid.omega_i * 1e9


def apply_idler_filter(jsa: JsaGrid, spec: FilterSpec) -> tuple[JsaGrid, float]:
    """Zero the JSA where the idler wavelength falls outside the filter
    band, renormalize, and report the retained fraction of |R|^2
    (relative heralding-rate proxy).

    Raises EmptyFilter when the band misses the grid entirely.
    """
    wl_nm = idler_wavelengths_nm(jsa.grid)
    lo = spec.center_nm - spec.width_nm / 2.0
    hi = spec.center_nm + spec.width_nm / 2.0
    keep = (wl_nm >= lo) & (wl_nm <= hi)
    if not np.any(keep):
        raise EmptyFilter(
            f"filter band [{lo:.1f}, {hi:.1f}] nm misses the idler axis "
            f"({wl_nm.min():.1f}-{wl_nm.max():.1f} nm)"
        )
    filtered = jsa.amplitude * keep[None, :]
    retained = float(np.sum(np.abs(filtered) ** 2) * jsa.grid.measure)
    if retained == 0.0:
        raise EmptyFilter("filter removes all JSA weight")
    out = JsaGrid(grid=jsa.grid, amplitude=filtered / math.sqrt(retained))
    return out, retained


def bandwidth_condition_witness(config: PdcConfig) -> float:
    """sigma^2 * gamma * L^2 * (k'_p - k'_i)^2 / 2: >> 1 means the
    phasematching is much narrower than the pump along the idler axis
    (the single-mode bandwidth condition)."""
    kp, _, ki = center_inverse_group_velocities(config)
    return (
        config.sigma_omega**2
        * GAMMA_SINC
        * config.length_m**2
        * (kp - ki) ** 2
        / 2.0
    )
