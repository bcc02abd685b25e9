import math

import pytest

from pdcsim import dispersion as disp
from pdcsim import jsa as jsamod
from pdcsim import phasematching as pm
from pdcsim import schmidt as schmod


@pytest.fixture(scope="session")
def kdp():
    return disp.load_crystal("KDP")


@pytest.fixture(scope="session")
def bbo():
    return disp.load_crystal("BBO")


@pytest.fixture(scope="session")
def kdp_config():
    # the collinear Type-II reference scenario: L = 5 mm, sigma = 3 nm, 415 nm
    return pm.PdcConfig.build("KDP", "type2", lambda_p_nm=415.0, sigma_nm=3.0, length_mm=5.0)


@pytest.fixture(scope="session")
def kdp_jsa(kdp_config):
    grid = jsamod.FrequencyGrid.centered(kdp_config, points=256, span_sigma=5.0)
    return jsamod.build_jsa(kdp_config, grid, model="sinc")


@pytest.fixture(scope="session")
def kdp_schmidt(kdp_jsa):
    return schmod.decompose(kdp_jsa)


@pytest.fixture(scope="session")
def bibo_nc_config():
    sol = pm.find_gvm_wavelength(disp.load_crystal("BiBO"), "type1", math.radians(5.0))
    assert sol is not None
    return pm.PdcConfig.build(
        "BiBO",
        "type1",
        lambda_p_nm=sol.lambda_gvm_nm,
        sigma_nm=6.0,
        length_mm=1.0,
        theta_s_deg=5.0,
        waist_um=550.0,
        cut_angle_deg=math.degrees(sol.theta_gvm),
    )
