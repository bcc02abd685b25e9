"""Physical constants and unit conversion helpers.

Internal computations use SI throughout: angular frequency in rad/s,
lengths in meters, inverse group velocities in s/m.  Interfaces accept
nm, mm, um and degrees where documented.
"""

import math

# Speed of light in vacuum, m/s.
C_LIGHT = 299_792_458.0

# Width parameter of the Gaussian that shares its FWHM with sinc(x):
# exp(-GAMMA_SINC * x^2) and sin(x)/x both reach 1/2 at x = 1.8954942670.
GAMMA_SINC = 0.19292144696099914

TWO_PI = 2.0 * math.pi


def wavelength_to_omega(wavelength_m: float) -> float:
    """Vacuum wavelength (m) to angular frequency (rad/s)."""
    return TWO_PI * C_LIGHT / wavelength_m


def omega_to_wavelength(omega: float) -> float:
    """Angular frequency (rad/s) to vacuum wavelength (m)."""
    return TWO_PI * C_LIGHT / omega


def nm_to_m(value_nm: float) -> float:
    return value_nm * 1e-9


def m_to_nm(value_m: float) -> float:
    return value_m * 1e9


def sigma_nm_to_omega(sigma_nm: float, center_nm: float) -> float:
    """Spectral width given in nm (amplitude standard deviation around
    ``center_nm``) to the equivalent width in rad/s."""
    lam = nm_to_m(center_nm)
    return TWO_PI * C_LIGHT * nm_to_m(sigma_nm) / lam**2


def deg_to_rad(deg: float) -> float:
    return math.radians(deg)


def rad_to_deg(rad: float) -> float:
    return math.degrees(rad)
