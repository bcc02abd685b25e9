"""Exception hierarchy.

Every error message is prefixed with the pipeline stage that raised it
(dispersion / pm / jsa / schmidt / fock / cli) so failures in composed
scenarios name the failing stage.
"""


class PdcSimError(Exception):
    """Base class for all package errors."""

    stage = "pdcsim"

    def __init__(self, message: str):
        super().__init__(f"[{self.stage}] {message}")


# --- dispersion stage ---------------------------------------------------


class DispersionError(PdcSimError):
    stage = "dispersion"


class UnknownCrystal(DispersionError):
    """Requested crystal name is not in the registry."""


class OutOfValidityRange(DispersionError):
    """Wavelength outside the Sellmeier coefficient validity range."""


class NumericalDerivativeUnstable(DispersionError):
    """Finite-difference group-velocity check failed to converge."""


# --- phase-matching stage -----------------------------------------------


class PhaseMatchingError(PdcSimError):
    stage = "pm"


class NoPhaseMatching(PhaseMatchingError):
    """No phase-matching angle exists in (0, pi/2]."""


class NoGvmAngle(PhaseMatchingError):
    """Group-velocity matching equation has no root in (0, pi/2]."""


# --- JSA stage ----------------------------------------------------------


class JsaError(PdcSimError):
    stage = "jsa"


class GridTooCoarse(JsaError):
    """Pump or phasematching structure resolved by fewer than 8 points."""


class EmptyFilter(JsaError):
    """Spectral filter band does not overlap the idler axis."""


# --- Schmidt stage ------------------------------------------------------


class SchmidtError(PdcSimError):
    stage = "schmidt"


class DegenerateGrid(SchmidtError):
    """Amplitude matrix is numerically zero."""


class DegenerateRatio(SchmidtError):
    """Closed-form mode number diverges for r_s == r_i."""


class AxisMismatch(SchmidtError):
    """Mode overlap requested between functions on different axes."""


class AllZero(SchmidtError):
    """Eigenvalue vector contains no nonzero entry."""


# --- Fock stage ---------------------------------------------------------


class FockError(PdcSimError):
    stage = "fock"


class TruncationTooSmall(FockError):
    """Requested state leaks population above the Fock cutoff."""

    def __init__(self, message: str, leaked: float = 0.0):
        super().__init__(message)
        self.leaked = leaked


class TruncationOverflow(FockError):
    """Photon addition would push population past the cutoff."""


class ModeCountMismatch(FockError):
    """Channel and state disagree on the number of modes."""


class KOutOfRange(FockError):
    """Two-mode purity model only covers mode numbers in (1, 2]."""


# --- CLI / scenario stage -----------------------------------------------


class CliError(PdcSimError):
    stage = "cli"


class ConfigError(CliError):
    """Scenario configuration failed validation."""
