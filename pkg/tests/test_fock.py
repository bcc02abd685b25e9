import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdcsim import fock
from pdcsim.errors import (
    AllZero,
    FockError,
    KOutOfRange,
    ModeCountMismatch,
    TruncationOverflow,
    TruncationTooSmall,
)


def test_vacuum_state():
    rho = fock.vacuum_state(2, 3)
    assert rho.matrix[0, 0] == 1.0
    assert np.trace(rho.matrix) == pytest.approx(1.0)
    assert np.all(rho.mean_photon_numbers() == 0.0)


def test_squeezed_mean_photon_number():
    st_sq = fock.ModeState("squeezed_vacuum", squeezing=1.0)
    nt = st_sq.adequate_truncation(tol=1e-10)
    rho = fock.build_input_state([st_sq], nt)
    assert rho.mean_photon_numbers()[0] == pytest.approx(math.sinh(1.0) ** 2, abs=1e-4)
    # only even levels populated
    diag = np.real(np.diag(rho.matrix))
    assert np.all(diag[1::2] < 1e-14)


def test_thermal_geometric_diagonal():
    rho = fock.build_input_state([fock.ModeState("thermal", nbar=0.2)], 12)
    diag = np.real(np.diag(rho.matrix))
    ratios = diag[1:6] / diag[:5]
    assert np.allclose(ratios, 0.2 / 1.2, atol=1e-9)
    assert np.max(np.abs(rho.matrix - np.diag(diag))) < 1e-15


def test_coherent_truncation_too_small():
    # Poisson tail above n=6 for |alpha|^2 = 4 far exceeds 1e-8 (oracle:
    # independent tail computation)
    tail = 1.0 - sum(math.exp(-4.0) * 4.0**n / math.factorial(n) for n in range(7))
    assert tail > 1e-8
    with pytest.raises(TruncationTooSmall) as err:
        fock.build_input_state([fock.ModeState("coherent", alpha=2.0)], 6)
    assert err.value.leaked == pytest.approx(tail, rel=1e-6)


def test_single_mode_vacuum_addition():
    out, p = fock.apply_addition(fock.vacuum_state(1, 4), fock.AdditionChannel([1.0]))
    assert p == pytest.approx(1.0, abs=1e-12)
    expected = np.zeros((5, 5), dtype=complex)
    expected[1, 1] = 1.0
    assert np.allclose(out.matrix, expected, atol=1e-14)
    assert fock.purity(out) == pytest.approx(1.0, abs=1e-12)


def test_two_mode_symmetric_vacuum():
    out, p = fock.apply_addition(fock.vacuum_state(2, 3), fock.AdditionChannel([0.5, 0.5]))
    assert p == pytest.approx(1.0, abs=1e-12)
    occ = fock.occupations(out.truncations)
    i10 = int(np.nonzero((occ == [1, 0]).all(axis=1))[0][0])
    i01 = int(np.nonzero((occ == [0, 1]).all(axis=1))[0][0])
    assert out.matrix[i10, i10] == pytest.approx(0.5, abs=1e-12)
    assert out.matrix[i01, i01] == pytest.approx(0.5, abs=1e-12)
    assert fock.purity(out) == pytest.approx(0.5, abs=1e-12)


def test_two_mode_unbalanced_purity():
    # lambda = (0.8, 0.2) on vacuum: purity (1 + 16)/25
    out, _ = fock.apply_addition(fock.vacuum_state(2, 3), fock.AdditionChannel([0.8, 0.2]))
    assert fock.purity(out) == pytest.approx(0.68, abs=1e-12)


def test_coherent_addition_matches_direct_construction():
    # independent oracle: build adag rho adag^T / (1+nbar) directly
    st_c = fock.ModeState("coherent", alpha=1.0)
    nt = st_c.adequate_truncation(tol=1e-12)
    rho = fock.build_input_state([st_c], nt)
    out, p = fock.apply_addition(rho, fock.AdditionChannel([1.0]))
    assert p == pytest.approx(2.0, abs=1e-10)  # 1 + |alpha|^2

    big = np.zeros((nt + 2, nt + 2), dtype=complex)
    big[: nt + 1, : nt + 1] = rho.matrix
    ad = np.zeros((nt + 2, nt + 2))
    ns = np.arange(nt + 1)
    ad[ns + 1, ns] = np.sqrt(ns + 1.0)
    direct = (ad @ big @ ad.conj().T)[: nt + 1, : nt + 1]
    direct /= np.real(np.trace(direct))
    assert np.max(np.abs(out.matrix - direct)) < 1e-12
    assert fock.purity(out) == pytest.approx(1.0, abs=1e-10)


def test_purity_trivials():
    rho = fock.vacuum_state(1, 3)
    assert fock.purity(rho) == pytest.approx(1.0, abs=1e-12)
    mixed = fock.FockDensityMatrix(1, 3, np.eye(4, dtype=complex) / 4.0)
    assert fock.purity(mixed) == pytest.approx(0.25, abs=1e-12)


def test_mode_count_mismatch():
    with pytest.raises(ModeCountMismatch):
        fock.apply_addition(fock.vacuum_state(1, 3), fock.AdditionChannel([0.5, 0.5]))


def test_truncation_overflow():
    # all population at the top level: adding a photon must refuse
    mat = np.zeros((4, 4), dtype=complex)
    mat[3, 3] = 1.0
    rho = fock.FockDensityMatrix(1, 3, mat)
    with pytest.raises(TruncationOverflow):
        fock.apply_addition(rho, fock.AdditionChannel([1.0]))


def test_channel_validation():
    with pytest.raises(FockError):
        fock.AdditionChannel([-0.1, 1.1])
    with pytest.raises(AllZero):
        fock.AdditionChannel([0.0, 0.0])
    ch = fock.AdditionChannel([2.0, 6.0])
    assert np.allclose(ch.eigenvalues, [0.25, 0.75])


def test_output_is_valid_density_matrix_and_p_consistent():
    rng = np.random.default_rng(3)
    for _ in range(10):
        lam = rng.random(2) + 1e-3
        alpha = complex(rng.normal(0, 0.6), rng.normal(0, 0.6))
        states = [fock.ModeState("coherent", alpha=alpha), fock.ModeState("thermal", nbar=0.4)]
        truncs = tuple(s.adequate_truncation(tol=1e-10) for s in states)
        rho = fock.build_input_state(states, truncs)
        out, p = fock.apply_addition(rho, fock.AdditionChannel(lam))
        # FockDensityMatrix constructor enforces Hermitian/trace/PSD;
        # heralding probability must match the independent formula
        nbars = rho.mean_photon_numbers()
        lam_n = lam / lam.sum()
        assert p == pytest.approx(float(np.sum(lam_n * (1 + nbars))), abs=1e-10)


def test_heralding_increases_with_photon_number():
    # amplifier property: P strictly increasing in nbar at fixed channel
    ch = fock.AdditionChannel([0.6, 0.4])
    last = -1.0
    for amp in (0.0, 0.5, 1.0, 1.5):
        states = [fock.ModeState("coherent", alpha=amp), fock.ModeState("vacuum")]
        truncs = (fock.ModeState("coherent", alpha=1.5).adequate_truncation(tol=1e-10), 1)
        rho = fock.build_input_state(states, truncs)
        _, p = fock.apply_addition(rho, ch)
        assert p > last
        last = p


def test_single_mode_channel_preserves_purity_on_random_pure_states():
    rng = np.random.default_rng(11)
    truncs = (6, 2)
    occ = fock.occupations(truncs)
    sub = np.nonzero(np.all(occ <= np.array(truncs) - 1, axis=1))[0]
    for _ in range(5):
        vec = rng.normal(size=sub.size) + 1j * rng.normal(size=sub.size)
        vec /= np.linalg.norm(vec)
        full = np.zeros(occ.shape[0], dtype=complex)
        full[sub] = vec
        rho = fock.FockDensityMatrix(2, truncs, np.outer(full, full.conj()))
        out, _ = fock.apply_addition(rho, fock.AdditionChannel([1.0, 0.0]))
        assert fock.purity(out) == pytest.approx(1.0, abs=1e-10)


def test_two_mode_formula_trivials():
    assert fock.two_mode_purity(1.0, 0.0) == pytest.approx(0.5)
    assert fock.two_mode_purity(1e9, 0.0) == pytest.approx(1.0, abs=1e-8)


def test_two_mode_formula_vs_brute_force():
    st_sq = fock.ModeState("squeezed_vacuum", squeezing=0.8)
    nt = st_sq.adequate_truncation(tol=1e-11)
    rho = fock.build_input_state([st_sq, fock.ModeState("vacuum")], (nt, 1))
    nbar = float(rho.mean_photon_numbers()[0])
    for ratio in (0.5, 1.0, 3.7, 12.0):
        out, _ = fock.apply_addition(
            rho, fock.AdditionChannel(np.array([ratio, 1.0]) / (ratio + 1.0))
        )
        assert fock.purity(out) == pytest.approx(
            fock.two_mode_purity(ratio, nbar), abs=1e-8
        )


def test_thermal_breaks_pure_input_formula_but_matches_mixed_form():
    # the pure-input closed form assumes a pure |chi>|0>; thermal input
    # requires the generalized mixed-state expression
    st_th = fock.ModeState("thermal", nbar=1.0)
    nt = st_th.adequate_truncation(tol=1e-11)
    rho = fock.build_input_state([st_th, fock.ModeState("vacuum")], (nt, 1))
    out, _ = fock.apply_addition(rho, fock.AdditionChannel([0.75, 0.25]))
    brute = fock.purity(out)
    mixed = fock.two_mode_mixed_purity(st_th.density(nt)[0], 3.0)
    pure_formula = fock.two_mode_purity(3.0, 1.0)
    assert brute == pytest.approx(mixed, abs=1e-9)
    assert abs(brute - pure_formula) > 1e-3


def test_ratio_mode_number_roundtrip():
    for k in (1.001, 1.1, 1.5, 2.0):
        t = fock.ratio_from_mode_number(k)
        assert fock.mode_number_from_ratio(t) == pytest.approx(k, rel=1e-12)
    with pytest.raises(KOutOfRange):
        fock.ratio_from_mode_number(1.0)
    with pytest.raises(KOutOfRange):
        fock.ratio_from_mode_number(2.1)


def test_purity_surface_edges():
    ks = [1.0001, 1.1, 2.0]
    nbars = list(np.linspace(0.0, 6.0, 40))
    surf = fock.purity_surface(ks, nbars)
    assert np.all(surf[0] > 0.999)  # K -> 1: purity -> 1
    assert surf[2, 0] == pytest.approx(0.5, abs=1e-12)  # K = 2, nbar = 0
    assert surf[1].min() >= 0.88  # K = 1.1 row stays above ~0.9


@settings(deadline=None, max_examples=40)
@given(
    ratio=st.floats(min_value=0.05, max_value=50.0),
    nbar=st.floats(min_value=0.0, max_value=20.0),
)
def test_two_mode_purity_bounds(ratio, nbar):
    p = fock.two_mode_purity(ratio, nbar)
    assert 0.5 - 1e-12 <= p <= 1.0


def test_vacuum_cs_gap_is_one():
    # <phi| e1 e2dag |phi> = 0 for vacuum, bound = 1
    truncs = (2, 2)
    occ = fock.occupations(truncs)
    vac = np.zeros(occ.shape[0], dtype=complex)
    vac[0] = 1.0
    a1 = fock.creation_operator(truncs, 0)
    a2 = fock.creation_operator(truncs, 1)
    r1, r2 = a1 @ vac, a2 @ vac
    gap = np.real(np.vdot(r1, r1) * np.vdot(r2, r2)) - abs(np.vdot(r1, r2)) ** 2
    assert gap == pytest.approx(1.0, abs=1e-14)


def test_verify_nonsaturation():
    rep = fock.verify_nonsaturation(trials=40, modes=2, truncation=5, seed=1234)
    assert rep.min_purity_gap > 1e-9
    assert rep.min_cs_gap > 0.0
    assert np.all(rep.purities < 1.0)
    # reproducible for a fixed seed
    rep2 = fock.verify_nonsaturation(trials=40, modes=2, truncation=5, seed=1234)
    assert rep2.min_purity_gap == rep.min_purity_gap
