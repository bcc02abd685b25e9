"""Parity between the compiled kernel backend and the pure-Python fallback."""

import math

import numpy as np
import pytest

from pdcsim import kernels
from pdcsim.kernels import _pure


def random_coeffs(rng):
    n_terms = rng.integers(1, 4)
    B = rng.uniform(0.005, 10.0, size=n_terms)
    C = rng.uniform(0.005, 0.06, size=n_terms)
    A = rng.uniform(1.5, 4.0)
    D = -rng.uniform(0.0, 0.03)
    return A, B, C, D


def test_backend_reports_name():
    assert kernels.BACKEND in ("pure", "compiled")


def test_pure_scalar_matches_array():
    rng = np.random.default_rng(0)
    for _ in range(20):
        A, B, C, D = random_coeffs(rng)
        wl = rng.uniform(0.4, 1.6, size=16)
        arr = _pure.n2_array(A, B, C, D, wl)
        for j, w in enumerate(wl):
            assert _pure.n2_scalar(A, B, C, D, float(w)) == pytest.approx(
                arr[j], rel=1e-14
            )


@pytest.mark.skipif(kernels.BACKEND == "pure", reason="compiled backend not built")
def test_compiled_matches_pure():
    rng = np.random.default_rng(1)
    for _ in range(50):
        A, B, C, D = random_coeffs(rng)
        Ae, Be, Ce, De = random_coeffs(rng)
        wl = rng.uniform(0.4, 1.6, size=64)
        theta = rng.uniform(0.0, math.pi / 2)
        th_arr = np.full_like(wl, theta)

        assert np.allclose(
            kernels.n2_array(A, B, C, D, wl), _pure.n2_array(A, B, C, D, wl), rtol=1e-13
        )
        assert np.allclose(
            kernels.dn2_dwl_array(A, B, C, D, wl),
            _pure.dn2_dwl_array(A, B, C, D, wl),
            rtol=1e-13,
        )
        assert np.allclose(
            kernels.group_index_array(A, B, C, D, wl),
            _pure.group_index_array(A, B, C, D, wl),
            rtol=1e-13,
        )
        assert np.allclose(
            kernels.angle_index_array(A, B, C, D, Ae, Be, Ce, De, th_arr, wl),
            _pure.angle_index_array(A, B, C, D, Ae, Be, Ce, De, th_arr, wl),
            rtol=1e-13,
        )
        assert np.allclose(
            kernels.angle_group_index_array(A, B, C, D, Ae, Be, Ce, De, th_arr, wl),
            _pure.angle_group_index_array(A, B, C, D, Ae, Be, Ce, De, th_arr, wl),
            rtol=1e-13,
        )
        w0 = float(wl[0])
        assert kernels.n2_scalar(A, B, C, D, w0) == pytest.approx(
            _pure.n2_scalar(A, B, C, D, w0), rel=1e-13
        )
        assert kernels.group_index_scalar(A, B, C, D, w0) == pytest.approx(
            _pure.group_index_scalar(A, B, C, D, w0), rel=1e-13
        )
        assert kernels.angle_index_scalar(A, B, C, D, Ae, Be, Ce, De, theta, w0) == pytest.approx(
            _pure.angle_index_scalar(A, B, C, D, Ae, Be, Ce, De, theta, w0), rel=1e-13
        )
        assert kernels.angle_group_index_scalar(
            A, B, C, D, Ae, Be, Ce, De, theta, w0
        ) == pytest.approx(
            _pure.angle_group_index_scalar(A, B, C, D, Ae, Be, Ce, De, theta, w0),
            rel=1e-13,
        )
