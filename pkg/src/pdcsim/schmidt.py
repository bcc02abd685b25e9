"""Schmidt decomposition of JSA grids and closed-form mode numbers.

The singular value decomposition of the quadrature-weighted amplitude
matrix gives the Schmidt modes; the squared singular values (normalized
to sum 1) are the eigenvalues of the photon-addition kernel
A(omega_s, omega_s') = int domega_i R(omega_s, omega_i) R*(omega_s', omega_i),
and the effective mode number K = (sum l_n)^2 / sum l_n^2 quantifies how
many modes the addition populates.

For collinear Gaussian-pump / Gaussian-phasematching JSAs, K has a
closed form in the two dimensionless walk-off coefficients

    r_j = sigma * L * sqrt(gamma/2) * |k'_p - k'_j|,   j = s, i

evaluated here both directly and through the Gaussian-moment-matrix
determinant identity (the two must agree to machine precision).  The
relative sign of (k'_p - k'_s) and (k'_p - k'_i) enters the closed form
through the cross term; it is tracked alongside the magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import GAMMA_SINC
from .errors import AllZero, AxisMismatch, DegenerateGrid, DegenerateRatio, SchmidtError
from .jsa import JsaGrid, pump_spectrum
from .phasematching import PdcConfig, center_inverse_group_velocities


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Eigenvalues (sum 1, descending), Schmidt modes with grid quadrature
    weights folded out, and the effective mode number."""

    eigenvalues: np.ndarray
    signal_modes: np.ndarray  # shape (n_modes, n_signal)
    idler_modes: np.ndarray  # shape (n_modes, n_idler)
    omega_s: np.ndarray
    omega_i: np.ndarray
    mode_number: float

    @property
    def d_omega_s(self) -> float:
        return float(self.omega_s[1] - self.omega_s[0])

    @property
    def d_omega_i(self) -> float:
        return float(self.omega_i[1] - self.omega_i[0])

    def reconstruct(self) -> np.ndarray:
        """Sum_n sqrt(l_n) phi_n(w_s) psi_n*(w_i) over the kept modes."""
        amps = np.sqrt(self.eigenvalues)
        return np.einsum("n,ns,ni->si", amps, self.signal_modes, np.conj(self.idler_modes))


@dataclass(frozen=True)
class WalkOffCoefficients:
    """Dimensionless r_s, r_i (>= 0) plus the relative sign of the
    underlying group-velocity differences (+1 same sign, -1 opposite)."""

    r_s: float
    r_i: float
    relative_sign: int = 1

    def __post_init__(self):
        if self.r_s < 0 or self.r_i < 0:
            raise SchmidtError("walk-off coefficients are magnitudes, must be >= 0")
        if self.relative_sign not in (-1, 1):
            raise SchmidtError("relative_sign must be +1 or -1")

    @property
    def signed_pair(self) -> tuple[float, float]:
        return self.r_s, self.relative_sign * self.r_i


def effective_mode_number(eigenvalues) -> float:
    """K = (sum l_n)^2 / sum l_n^2; equals 1 iff a single mode is populated."""
    lam = np.asarray(eigenvalues, dtype=float)
    if np.any(lam < 0):
        raise SchmidtError("eigenvalues must be non-negative")
    total = lam.sum()
    if total == 0.0:
        raise AllZero("all eigenvalues are zero")
    return float(total**2 / np.sum(lam**2))


def decompose(jsa: JsaGrid, rank_cutoff: float = 1e-12) -> SchmidtDecomposition:
    """SVD of the quadrature-weighted JSA.

    Eigenvalues are squared singular values renormalized to sum 1; modes
    carry 1/sqrt(domega) so they are orthonormal under the continuum
    inner product.  Modes whose eigenvalue falls below rank_cutoff (rel.
    to the largest) are dropped.  Phase convention: each signal mode's
    largest-magnitude sample is rotated to the positive real axis (the
    idler mode absorbs the conjugate phase).
    """
    g = jsa.grid
    weighted = jsa.amplitude * math.sqrt(g.measure)
    if not np.any(np.abs(weighted) > 0):
        raise DegenerateGrid("amplitude matrix is numerically zero")
    u, s, vh = np.linalg.svd(weighted, full_matrices=False)
    lam = s**2
    lam_sum = lam.sum()
    if lam_sum == 0.0:
        raise DegenerateGrid("all singular values are zero")
    lam = lam / lam_sum

    keep = lam >= rank_cutoff * lam[0]
    lam = lam[keep]
    signal = (u[:, keep] / math.sqrt(g.d_omega_s)).T
    idler = (np.conj(vh[keep, :]) / math.sqrt(g.d_omega_i))

    # deterministic phase: largest-|.| sample of each signal mode real-positive
    for n in range(signal.shape[0]):
        j = int(np.argmax(np.abs(signal[n])))
        ph = signal[n, j]
        if ph != 0:
            rot = np.conj(ph) / abs(ph)
            signal[n] *= rot
            idler[n] *= rot

    return SchmidtDecomposition(
        eigenvalues=lam,
        signal_modes=signal,
        idler_modes=idler,
        omega_s=g.omega_s,
        omega_i=g.omega_i,
        mode_number=effective_mode_number(lam),
    )


def walk_off_coefficients(config: PdcConfig, gamma: float = GAMMA_SINC) -> WalkOffCoefficients:
    """r_j = sigma L sqrt(gamma/2) |k'_p - k'_j| from the dispersion layer,
    with the relative sign of the two group-velocity differences."""
    if not config.collinear:
        raise SchmidtError(
            "the closed-form mode number is derived for collinear geometry"
        )
    kp, ks, ki = center_inverse_group_velocities(config)
    scale = config.sigma_omega * config.length_m * math.sqrt(gamma / 2.0)
    ds = kp - ks
    di = kp - ki
    sign = 1 if ds * di >= 0 else -1
    return WalkOffCoefficients(r_s=scale * abs(ds), r_i=scale * abs(di), relative_sign=sign)


def analytic_mode_number(r: WalkOffCoefficients) -> float:
    """Closed-form K = sqrt((1+r_s^2)(1+r_i^2) / (r_s - r_i)^2) for the
    Gaussian collinear model (signed r values; r_s = 0 specializes to
    sqrt(1 + 1/r_i^2)).

    Raises DegenerateRatio when r_s == r_i (the Gaussian model becomes
    separable-degenerate and the formula diverges).
    """
    rs, ri = r.signed_pair
    if rs == ri:
        raise DegenerateRatio("closed form diverges for r_s == r_i")
    return math.sqrt((1.0 + rs**2) * (1.0 + ri**2) / (rs - ri) ** 2)


def analytic_mode_number_matrix(r: WalkOffCoefficients, sigma: float = 1.0) -> float:
    """Same mode number via the Gaussian moment matrices:
    K = sqrt(det(W)) / (4 det(V)) with the 2x2 single-pass matrix V and
    the 4x4 two-pass matrix W.  Cross-checks analytic_mode_number."""
    rs, ri = r.signed_pair
    if rs == ri:
        raise DegenerateRatio("closed form diverges for r_s == r_i")
    s2 = sigma**2
    a = 1.0 + rs * rs
    b = 1.0 + ri * ri
    c = 1.0 + rs * ri
    v = np.array([[a, c], [c, b]]) / s2
    w = (
        np.array(
            [
                [2 * a, c, 0, c],
                [c, 2 * b, c, 0],
                [0, c, 2 * a, c],
                [c, 0, c, 2 * b],
            ]
        )
        / s2
    )
    det_v = np.linalg.det(v)
    det_w = np.linalg.det(w)
    if det_v <= 0 or det_w <= 0:
        raise DegenerateRatio("moment matrices are singular")
    # det V scales as sigma^-4 and det W as sigma^-8: K is sigma-free
    return float(math.sqrt(det_w) / (4.0 * det_v))


def mode_overlap(mode: np.ndarray, reference: np.ndarray, d_omega: float) -> float:
    """|<mode|reference>|^2 under the grid quadrature; both inputs must be
    sampled on the same axis and L2-normalized."""
    mode = np.asarray(mode)
    reference = np.asarray(reference)
    if mode.shape != reference.shape:
        raise AxisMismatch(
            f"mode sampled on {mode.shape} points, reference on {reference.shape}"
        )
    for vec, name in ((mode, "mode"), (reference, "reference")):
        nrm = np.sum(np.abs(vec) ** 2) * d_omega
        if abs(nrm - 1.0) > 1e-6:
            raise AxisMismatch(f"{name} is not L2-normalized (norm^2 = {nrm:.6f})")
    return float(abs(np.sum(np.conj(mode) * reference) * d_omega) ** 2)


def pump_shape_on_signal_axis(config: PdcConfig, omega_s: np.ndarray) -> np.ndarray:
    """The pump spectral shape transported to the signal axis
    (alpha_p(omega_s + omega_i0)), L2-normalized on the grid; the first
    signal Schmidt mode approaches this under mode-selective conditions."""
    amp = pump_spectrum(config.pump_order, config.sigma_omega, config.omega_p0,
                        omega_s + config.omega_i0)
    d_omega = float(omega_s[1] - omega_s[0])
    return amp / math.sqrt(np.sum(np.abs(amp) ** 2) * d_omega)
