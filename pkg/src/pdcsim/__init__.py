"""Mode-selective single-photon addition via parametric down-conversion.

Layers: crystal dispersion (Sellmeier registry) -> phase matching and
group-velocity matching -> joint spectral amplitudes -> Schmidt analysis
-> truncated Fock-space addition channel; a CLI ties them together.
"""

from .constants import C_LIGHT, GAMMA_SINC
from .dispersion import (
    CrystalModel,
    InverseGroupVelocity,
    available_crystals,
    extraordinary_index_at_angle,
    inverse_group_velocity,
    load_crystal,
    refractive_index,
)
from .fock import (
    AdditionChannel,
    FockDensityMatrix,
    ModeState,
    apply_addition,
    build_input_state,
    purity,
    purity_surface,
    two_mode_purity,
    verify_nonsaturation,
)
from .jsa import (
    FilterSpec,
    FrequencyGrid,
    JsaGrid,
    apply_idler_filter,
    build_jsa,
    bandwidth_condition_witness,
    phasematching_function,
    pump_spectrum,
)
from .phasematching import (
    GvmSolution,
    MismatchComponents,
    PdcConfig,
    Polarizations,
    find_gvm_angle,
    find_gvm_wavelength,
    find_pm_angle,
    gvm_scan,
    mismatch,
)
from .schmidt import (
    SchmidtDecomposition,
    WalkOffCoefficients,
    analytic_mode_number,
    analytic_mode_number_matrix,
    decompose,
    effective_mode_number,
    mode_overlap,
    walk_off_coefficients,
)

__version__ = "0.1.0"
