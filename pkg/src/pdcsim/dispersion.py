"""Refractive indices and inverse group velocities for nonlinear crystals.

Crystals are described by published Sellmeier coefficient sets loaded
from a JSON registry (``data/crystals.json`` by default, or any file
with the same schema via ``load_crystal(..., data_path=...)``).

Biaxial crystals are reduced to an effective uniaxial description in
one principal plane: the polarization normal to the plane sees a fixed
"ordinary" index, the in-plane polarization sees the angle-tuned
index-ellipse interpolation between the two in-plane principal indices.

=====  ===============  =====================================
plane  ordinary axis    angle-tuned pair (angle 0 -> 90 deg)
=====  ===============  =====================================
xz     y                x -> z   (angle from z axis)
yz     x                y -> z   (angle from z axis)
xy     z                y -> x   (angle from x axis)
=====  ===============  =====================================
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from . import kernels
from .constants import C_LIGHT
from .errors import NumericalDerivativeUnstable, OutOfValidityRange, UnknownCrystal

ORDINARY = "ordinary"
EXTRAORDINARY = "extraordinary"

_PLANE_VIEWS = {"xz": ("y", "x", "z"), "yz": ("x", "y", "z"), "xy": ("z", "y", "x")}


@dataclass(frozen=True)
class SellmeierSet:
    """One axis' dispersion: canonical pole form over a validity range.

    n^2(wl_um) = A + sum B[j]/(wl_um^2 - C[j]) + D*wl_um^2
    """

    A: float
    B: np.ndarray
    C: np.ndarray
    D: float
    range_um: tuple[float, float]

    @classmethod
    def from_record(cls, rec: dict) -> "SellmeierSet":
        A = float(rec.get("constant", 0.0))
        B: list[float] = []
        C: list[float] = []
        # fold ratio terms b*wl^2/(wl^2-c) = b + b*c/(wl^2-c)
        for b, c in rec.get("ratio_terms", []):
            A += b
            B.append(b * c)
            C.append(c)
        for b, c in rec.get("pole_terms", []):
            B.append(b)
            C.append(c)
        lo, hi = rec["range_um"]
        if not lo < hi:
            raise ValueError(f"invalid validity range {rec['range_um']}")
        return cls(
            A=A,
            B=np.asarray(B, dtype=float),
            C=np.asarray(C, dtype=float),
            D=float(rec.get("lambda2_coeff", 0.0)),
            range_um=(float(lo), float(hi)),
        )


@dataclass(frozen=True)
class CrystalModel:
    """Dispersion model for one crystal (immutable after load).

    ``pdc_defaults`` optionally records, per process type, the pump and
    signal polarization assignment that phase-matches in the chosen
    principal plane (biaxial crystals in positive-like planes swap the
    extraordinary-pump convention).
    """

    name: str
    crystal_class: str  # "uniaxial" | "biaxial"
    axes: dict[str, SellmeierSet]
    principal_plane: Optional[str]
    source_note: str
    pdc_defaults: Optional[dict] = None

    def __post_init__(self):
        if self.crystal_class == "uniaxial":
            if set(self.axes) != {"o", "e"}:
                raise ValueError(f"{self.name}: uniaxial model needs axes o, e")
        elif self.crystal_class == "biaxial":
            if set(self.axes) != {"x", "y", "z"}:
                raise ValueError(f"{self.name}: biaxial model needs axes x, y, z")
            if self.principal_plane not in _PLANE_VIEWS:
                raise ValueError(f"{self.name}: principal_plane must be one of xz, yz, xy")
        else:
            raise ValueError(f"{self.name}: unknown crystal class {self.crystal_class}")

    def view_axes(self) -> tuple[SellmeierSet, SellmeierSet, SellmeierSet]:
        """(ordinary, angle-0, angle-90) Sellmeier sets of the active view."""
        if self.crystal_class == "uniaxial":
            return self.axes["o"], self.axes["o"], self.axes["e"]
        o, a, b = _PLANE_VIEWS[self.principal_plane]
        return self.axes[o], self.axes[a], self.axes[b]

    def in_plane(self, plane: str) -> "CrystalModel":
        """Same crystal reduced in a different principal plane (biaxial only)."""
        if self.crystal_class != "biaxial":
            raise ValueError(f"{self.name} is uniaxial; no principal plane to choose")
        return CrystalModel(self.name, self.crystal_class, self.axes, plane, self.source_note)

    @property
    def range_um(self) -> tuple[float, float]:
        lo = max(s.range_um[0] for s in self.axes.values())
        hi = min(s.range_um[1] for s in self.axes.values())
        return lo, hi


def _registry(data_path: Optional[str | Path] = None) -> dict:
    if data_path is None:
        text = resources.files("pdcsim.data").joinpath("crystals.json").read_text()
    else:
        text = Path(data_path).read_text()
    return json.loads(text)


def available_crystals(data_path: Optional[str | Path] = None) -> list[str]:
    return [rec["name"] for rec in _registry(data_path)["crystals"]]


def load_crystal(name: str, data_path: Optional[str | Path] = None) -> CrystalModel:
    """Load a crystal model from the coefficient registry.

    Raises UnknownCrystal for names not present in the registry.
    """
    reg = _registry(data_path)
    for rec in reg["crystals"]:
        if rec["name"].upper() == name.upper():
            return CrystalModel(
                name=rec["name"],
                crystal_class=rec["class"],
                axes={ax: SellmeierSet.from_record(r) for ax, r in rec["axes"].items()},
                principal_plane=rec.get("principal_plane"),
                source_note=rec["source"],
                pdc_defaults=rec.get("pdc_defaults"),
            )
    known = ", ".join(rec["name"] for rec in reg["crystals"])
    raise UnknownCrystal(f"no crystal named {name!r} in registry (known: {known})")


def _check_range(s: SellmeierSet, wl_um, crystal: str, axis: str = ""):
    lo, hi = s.range_um
    wmin = float(np.min(wl_um))
    wmax = float(np.max(wl_um))
    if wmin < lo or wmax > hi:
        raise OutOfValidityRange(
            f"{crystal}{axis and ' axis ' + axis}: wavelength "
            f"{wmin:.4f}-{wmax:.4f} um outside validity range [{lo}, {hi}] um"
        )


# --- scalar evaluation (root-finding hot path) ----------------------------


def n_ordinary_scalar(crystal: CrystalModel, wl_um: float) -> float:
    s = crystal.view_axes()[0]
    _check_range(s, wl_um, crystal.name)
    return kernels.index_scalar(s.A, s.B, s.C, s.D, wl_um)


def n_e_principal_scalar(crystal: CrystalModel, wl_um: float) -> float:
    s = crystal.view_axes()[2]
    _check_range(s, wl_um, crystal.name)
    return kernels.index_scalar(s.A, s.B, s.C, s.D, wl_um)


def n_e_angle_scalar(crystal: CrystalModel, wl_um: float, theta: float) -> float:
    _, sa, sb = crystal.view_axes()
    _check_range(sa, wl_um, crystal.name)
    _check_range(sb, wl_um, crystal.name)
    return kernels.angle_index_scalar(
        sa.A, sa.B, sa.C, sa.D, sb.A, sb.B, sb.C, sb.D, theta, wl_um
    )


def group_index_ordinary_scalar(crystal: CrystalModel, wl_um: float) -> float:
    s = crystal.view_axes()[0]
    _check_range(s, wl_um, crystal.name)
    return kernels.group_index_scalar(s.A, s.B, s.C, s.D, wl_um)


def group_index_e_principal_scalar(crystal: CrystalModel, wl_um: float) -> float:
    s = crystal.view_axes()[2]
    _check_range(s, wl_um, crystal.name)
    return kernels.group_index_scalar(s.A, s.B, s.C, s.D, wl_um)


def group_index_e_angle_scalar(crystal: CrystalModel, wl_um: float, theta: float) -> float:
    _, sa, sb = crystal.view_axes()
    _check_range(sa, wl_um, crystal.name)
    _check_range(sb, wl_um, crystal.name)
    return kernels.angle_group_index_scalar(
        sa.A, sa.B, sa.C, sa.D, sb.A, sb.B, sb.C, sb.D, theta, wl_um
    )


# --- array evaluation (grid hot path) --------------------------------------


def n_ordinary_array(crystal: CrystalModel, wl_um: np.ndarray) -> np.ndarray:
    s = crystal.view_axes()[0]
    _check_range(s, wl_um, crystal.name)
    return kernels.index_array(s.A, s.B, s.C, s.D, wl_um)


def n_e_angle_array(crystal: CrystalModel, wl_um: np.ndarray, theta) -> np.ndarray:
    _, sa, sb = crystal.view_axes()
    _check_range(sa, wl_um, crystal.name)
    _check_range(sb, wl_um, crystal.name)
    return kernels.angle_index_array(
        sa.A, sa.B, sa.C, sa.D, sb.A, sb.B, sb.C, sb.D, theta, wl_um
    )


def group_index_e_angle_array(crystal: CrystalModel, wl_um: np.ndarray, theta) -> np.ndarray:
    _, sa, sb = crystal.view_axes()
    _check_range(sa, wl_um, crystal.name)
    _check_range(sb, wl_um, crystal.name)
    return kernels.angle_group_index_array(
        sa.A, sa.B, sa.C, sa.D, sb.A, sb.B, sb.C, sb.D, theta, wl_um
    )


def group_index_ordinary_array(crystal: CrystalModel, wl_um: np.ndarray) -> np.ndarray:
    s = crystal.view_axes()[0]
    _check_range(s, wl_um, crystal.name)
    return kernels.group_index_array(s.A, s.B, s.C, s.D, wl_um)


# --- spec-facing operations -------------------------------------------------


def refractive_index(crystal: CrystalModel, wavelength_nm: float, polarization: str) -> float:
    """Principal refractive index at a vacuum wavelength (nm).

    ``polarization`` is "ordinary" or "extraordinary"; the latter is the
    principal extraordinary index (propagation at 90 degrees).
    """
    wl_um = wavelength_nm * 1e-3
    if polarization == ORDINARY:
        return n_ordinary_scalar(crystal, wl_um)
    if polarization == EXTRAORDINARY:
        return n_e_principal_scalar(crystal, wl_um)
    raise ValueError(f"unknown polarization {polarization!r}")


def extraordinary_index_at_angle(
    crystal: CrystalModel, wavelength_nm: float, theta: float
) -> float:
    """Angle-tuned extraordinary index, theta in radians from the optic axis."""
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must be in [0, pi/2], got {theta}")
    return n_e_angle_scalar(crystal, wavelength_nm * 1e-3, theta)


@dataclass(frozen=True)
class InverseGroupVelocity:
    """dk/domega in s/m at one wavelength and polarization."""

    value: float
    wavelength_nm: float
    polarization: str
    propagation_angle: float


def inverse_group_velocity(
    crystal: CrystalModel,
    wavelength_nm: float,
    polarization: str,
    theta: float = 0.0,
) -> InverseGroupVelocity:
    """k' = dk/domega = n_g/c, from the analytic Sellmeier derivative.

    For ordinary polarization the angle is ignored; for extraordinary
    polarization the angle-tuned index at ``theta`` is differentiated.
    """
    wl_um = wavelength_nm * 1e-3
    if polarization == ORDINARY:
        ng = group_index_ordinary_scalar(crystal, wl_um)
    elif polarization == EXTRAORDINARY:
        ng = group_index_e_angle_scalar(crystal, wl_um, theta)
    else:
        raise ValueError(f"unknown polarization {polarization!r}")
    return InverseGroupVelocity(
        value=ng / C_LIGHT,
        wavelength_nm=wavelength_nm,
        polarization=polarization,
        propagation_angle=theta,
    )


def finite_difference_group_index(
    crystal: CrystalModel,
    wavelength_nm: float,
    polarization: str,
    theta: float = 0.0,
    step_um: float = 1e-4,
    rel_tol: float = 1e-5,
) -> float:
    """Richardson-validated central finite difference of the group index.

    Independent of the analytic derivative path; used as its oracle.
    Raises NumericalDerivativeUnstable when halving the step changes the
    estimate by more than ``rel_tol`` (relative), and OutOfValidityRange
    when wl +/- 2*step leaves the coefficient range.
    """
    wl_um = wavelength_nm * 1e-3

    if polarization == ORDINARY:
        f = lambda w: n_ordinary_scalar(crystal, w)  # noqa: E731
    elif polarization == EXTRAORDINARY:
        f = lambda w: n_e_angle_scalar(crystal, w, theta)  # noqa: E731
    else:
        raise ValueError(f"unknown polarization {polarization!r}")

    def central(h):
        return (f(wl_um + h) - f(wl_um - h)) / (2.0 * h)

    d1 = central(step_um)
    d2 = central(step_um / 2.0)
    scale = max(abs(d1), abs(d2), 1e-30)
    if abs(d1 - d2) / scale > rel_tol:
        raise NumericalDerivativeUnstable(
            f"{crystal.name}: dn/dwl estimates differ by "
            f"{abs(d1 - d2) / scale:.2e} (rel) between steps {step_um} and {step_um / 2}"
        )
    # Richardson extrapolation of the two central differences
    dndwl = (4.0 * d2 - d1) / 3.0
    return f(wl_um) - wl_um * dndwl
