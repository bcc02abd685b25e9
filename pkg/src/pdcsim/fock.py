"""Truncated multimode Fock-space simulation of conditional photon addition.

The heralded channel adds one photon distributed over the addition
eigenmodes,

    rho_out = (1/P) sum_n l_n  adag_n rho_in a_n,      P = sum_n l_n (1 + nbar_n),

with the eigenvalues l_n normalized to sum 1 (the overall pump-strength
prefactor is out of scope, so P is a relative heralding probability).
States live on a lexicographic occupation-number basis with a per-mode
cutoff (squeezed states have heavy Fock tails, so modes may carry
different cutoffs); the channel is applied exactly in a one-level-extended
space and truncated back only when the spilled population is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AllZero,
    FockError,
    KOutOfRange,
    ModeCountMismatch,
    TruncationOverflow,
    TruncationTooSmall,
)

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-10
_OVERFLOW_TOL = 1e-8


def _as_truncations(truncation, modes: int) -> tuple[int, ...]:
    if np.isscalar(truncation):
        out = (int(truncation),) * modes
    else:
        out = tuple(int(t) for t in truncation)
        if len(out) != modes:
            raise FockError(f"{len(out)} cutoffs given for {modes} modes")
    if any(t < 1 for t in out):
        raise FockError("every mode cutoff must be >= 1")
    return out


def occupations(truncations: Sequence[int]) -> np.ndarray:
    """Occupation numbers per basis state, shape (dim, modes), lexicographic
    with the first mode most significant."""
    levels = [t + 1 for t in truncations]
    dim = int(np.prod(levels))
    idx = np.arange(dim)
    out = np.empty((dim, len(levels)), dtype=int)
    for m in range(len(levels) - 1, -1, -1):
        out[:, m] = idx % levels[m]
        idx = idx // levels[m]
    return out


def creation_operator(truncations: Sequence[int], mode: int) -> np.ndarray:
    """Matrix of adag acting on ``mode`` in the truncated multimode basis."""
    op = np.eye(1)
    for m, t in enumerate(truncations):
        levels = t + 1
        if m == mode:
            single = np.zeros((levels, levels))
            ns = np.arange(levels - 1)
            single[ns + 1, ns] = np.sqrt(ns + 1.0)
        else:
            single = np.eye(levels)
        op = np.kron(op, single)
    return op


@dataclass(frozen=True)
class FockDensityMatrix:
    """Validated density matrix on the truncated multimode Fock basis."""

    mode_count: int
    truncations: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "truncations", _as_truncations(self.truncations, self.mode_count)
        )
        dim = int(np.prod([t + 1 for t in self.truncations]))
        if self.matrix.shape != (dim, dim):
            raise FockError(
                f"matrix shape {self.matrix.shape} does not match cutoffs "
                f"{self.truncations}"
            )
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > _HERMITICITY_TOL:
            raise FockError("density matrix is not Hermitian")
        tr = float(np.real(np.trace(self.matrix)))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise FockError(f"trace is {tr}, not 1")
        smallest = float(np.linalg.eigvalsh(self.matrix)[0])
        if smallest < -_PSD_TOL:
            raise FockError(f"negative eigenvalue {smallest}")

    def mean_photon_numbers(self) -> np.ndarray:
        """nbar per mode from the diagonal."""
        occ = occupations(self.truncations)
        diag = np.real(np.diag(self.matrix))
        return diag @ occ


@dataclass(frozen=True)
class AdditionChannel:
    """Eigenvalues of the addition kernel in its eigenbasis, sum 1."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        if lam.ndim != 1 or lam.size < 1:
            raise FockError("channel needs a 1-D eigenvalue vector")
        if np.any(lam < 0):
            raise FockError("channel eigenvalues must be >= 0")
        total = lam.sum()
        if total <= 0:
            raise AllZero("channel eigenvalues sum to zero")
        object.__setattr__(self, "eigenvalues", lam / total)

    @property
    def mode_count(self) -> int:
        return self.eigenvalues.size


# --- input states ------------------------------------------------------------


@dataclass(frozen=True)
class ModeState:
    """One mode's input state: vacuum, coherent(alpha), thermal(nbar) or
    squeezed_vacuum(r)."""

    kind: str
    alpha: complex = 0.0
    nbar: float = 0.0
    squeezing: float = 0.0

    KINDS = ("vacuum", "coherent", "thermal", "squeezed_vacuum")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise FockError(f"unknown mode state {self.kind!r}")
        if self.kind == "thermal" and self.nbar < 0:
            raise FockError("thermal occupation must be >= 0")
        if self.kind == "squeezed_vacuum" and self.squeezing < 0:
            raise FockError("squeezing factor must be >= 0")

    def density(self, truncation: int) -> tuple[np.ndarray, float]:
        """(single-mode density matrix, leaked population above cutoff)."""
        levels = truncation + 1
        n = np.arange(levels)
        if self.kind == "vacuum":
            rho = np.zeros((levels, levels), dtype=complex)
            rho[0, 0] = 1.0
            return rho, 0.0
        if self.kind == "coherent":
            # c_n = e^{-|a|^2/2} a^n / sqrt(n!), via cumulative log factorial
            log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, levels)))))
            mag = abs(self.alpha)
            if mag == 0.0:
                c = np.zeros(levels, dtype=complex)
                c[0] = 1.0
            else:
                log_c = -0.5 * mag**2 + n * math.log(mag) - 0.5 * log_fact
                phase = np.exp(1j * n * np.angle(complex(self.alpha)))
                c = np.exp(log_c) * phase
            leaked = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
            return np.outer(c, c.conj()), leaked
        if self.kind == "thermal":
            if self.nbar == 0.0:
                rho = np.zeros((levels, levels), dtype=complex)
                rho[0, 0] = 1.0
                return rho, 0.0
            ratio = self.nbar / (1.0 + self.nbar)
            p = ratio**n / (1.0 + self.nbar)
            leaked = ratio ** (truncation + 1)
            return np.diag(p).astype(complex), float(leaked)
        # squeezed vacuum: even components only
        r = self.squeezing
        if r == 0.0:
            rho = np.zeros((levels, levels), dtype=complex)
            rho[0, 0] = 1.0
            return rho, 0.0
        c = np.zeros(levels)
        th = math.tanh(r)
        m_max = (levels - 1) // 2
        log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, 2 * m_max + 1)))))
        for m in range(m_max + 1):
            # (-tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r)
            log_mag = (
                m * math.log(th) if m else 0.0
            ) + 0.5 * log_fact[2 * m] - m * math.log(2.0) - log_fact[m] - 0.5 * math.log(math.cosh(r))
            c[2 * m] = (-1.0) ** m * math.exp(log_mag)
        leaked = max(0.0, 1.0 - float(np.sum(c**2)))
        return np.outer(c, c).astype(complex), leaked

    def adequate_truncation(
        self, tol: float = _OVERFLOW_TOL, start: int = 2, limit: int = 1024
    ) -> int:
        """Smallest probed cutoff whose leaked population is below ``tol``."""
        t = start
        while t <= limit:
            _, leaked = self.density(t)
            if leaked <= tol:
                return t
            t = max(t + 2, int(t * 1.5))
        raise TruncationTooSmall(
            f"{self.kind} state needs a cutoff beyond {limit}", leaked=math.nan
        )


def build_input_state(mode_states: Sequence[ModeState], truncation) -> FockDensityMatrix:
    """Tensor product of per-mode states at the given cutoff(s); pass an
    int for a common cutoff or one per mode.

    Raises TruncationTooSmall when any mode leaks more than 1e-8 of its
    population above its cutoff.
    """
    if not mode_states:
        raise FockError("need at least one mode")
    truncs = _as_truncations(truncation, len(mode_states))
    rho = np.eye(1, dtype=complex)
    for m, (st, t) in enumerate(zip(mode_states, truncs)):
        single, leaked = st.density(t)
        if leaked > _OVERFLOW_TOL:
            raise TruncationTooSmall(
                f"mode {m} ({st.kind}) leaks {leaked:.2e} above cutoff {t}; "
                "raise the truncation",
                leaked=leaked,
            )
        # exact renormalization of the truncated state keeps trace 1
        single = single / np.real(np.trace(single))
        rho = np.kron(rho, single)
    return FockDensityMatrix(
        mode_count=len(mode_states), truncations=truncs, matrix=rho
    )


def vacuum_state(modes: int, truncation) -> FockDensityMatrix:
    return build_input_state([ModeState("vacuum")] * modes, truncation)


# --- the addition channel -----------------------------------------------------


def _embed_extended(rho: np.ndarray, truncs: Sequence[int]) -> np.ndarray:
    """Embed a multimode matrix into the basis with every cutoff raised by 1."""
    src = occupations(truncs)
    levels_ext = [t + 2 for t in truncs]
    weights = np.array(
        [int(np.prod(levels_ext[m + 1 :])) for m in range(len(levels_ext))]
    )
    idx = src @ weights
    dim_ext = int(np.prod(levels_ext))
    out = np.zeros((dim_ext, dim_ext), dtype=complex)
    out[np.ix_(idx, idx)] = rho
    return out


def apply_addition(
    rho_in: FockDensityMatrix, channel: AdditionChannel
) -> tuple[FockDensityMatrix, float]:
    """Conditional single-photon addition.

    Applies sum_n l_n adag_n rho a_n exactly in a one-level-extended
    space, returns the renormalized output at the original cutoffs and
    the relative heralding probability P = sum_n l_n (1 + nbar_n).

    Raises ModeCountMismatch or, when the output would hold more than
    1e-8 population at the extension level, TruncationOverflow.
    """
    if channel.mode_count != rho_in.mode_count:
        raise ModeCountMismatch(
            f"channel has {channel.mode_count} modes, state has {rho_in.mode_count}"
        )
    truncs = rho_in.truncations

    nbars = rho_in.mean_photon_numbers()
    heralding = float(np.sum(channel.eigenvalues * (1.0 + nbars)))

    truncs_ext = tuple(t + 1 for t in truncs)
    rho_ext = _embed_extended(rho_in.matrix, truncs)
    out_ext = np.zeros_like(rho_ext)
    for m, lam in enumerate(channel.eigenvalues):
        if lam == 0.0:
            continue
        adag = creation_operator(truncs_ext, m)
        out_ext += lam * (adag @ rho_ext @ adag.conj().T)
    out_ext /= np.real(np.trace(out_ext))

    occ_ext = occupations(truncs_ext)
    over = np.any(occ_ext > np.asarray(truncs), axis=1)
    spilled = float(np.real(np.diag(out_ext)) @ over)
    if spilled > _OVERFLOW_TOL:
        raise TruncationOverflow(
            f"addition pushes {spilled:.2e} population past cutoffs {truncs}; "
            "raise the truncation"
        )
    keep = np.nonzero(~over)[0]
    out = out_ext[np.ix_(keep, keep)]
    out = out / np.real(np.trace(out))
    out = 0.5 * (out + out.conj().T)
    return (
        FockDensityMatrix(mode_count=rho_in.mode_count, truncations=truncs, matrix=out),
        heralding,
    )


def purity(rho: FockDensityMatrix) -> float:
    """Tr(rho^2), in (0, 1]."""
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


# --- two-mode closed forms -----------------------------------------------------


def two_mode_purity(ratio: float, nbar: float) -> float:
    """Output purity for a pure single-mode input |chi>|0> through a
    two-eigenvalue channel with eigenvalue ratio l1/l2:

        (1 + ratio^2 (1+nbar)^2) / (1 + ratio (1+nbar))^2
    """
    if ratio <= 0:
        raise FockError("eigenvalue ratio must be positive")
    if nbar < 0:
        raise FockError("mean photon number must be >= 0")
    u = ratio * (1.0 + nbar)
    return (1.0 + u**2) / (1.0 + u) ** 2


def two_mode_mixed_purity(single_mode_rho: np.ndarray, ratio: float) -> float:
    """Output purity for an arbitrary (possibly mixed) single-mode input
    rho_1 tensored with vacuum: the cross term vanishes, leaving

        lt1^2 Tr[(adag rho_1 a)^2] + lt2^2 Tr[rho_1^2]

    with lt_i = l_i / P.  Generalizes the pure-input closed form (thermal
    inputs do not satisfy the pure-input formula)."""
    if ratio <= 0:
        raise FockError("eigenvalue ratio must be positive")
    rho1 = np.asarray(single_mode_rho)
    levels = rho1.shape[0]
    ad = np.zeros((levels + 1, levels + 1))
    ns = np.arange(levels)
    ad[ns + 1, ns] = np.sqrt(ns + 1.0)
    big = np.zeros((levels + 1, levels + 1), dtype=complex)
    big[:levels, :levels] = rho1
    raised = ad @ big @ ad.conj().T
    nbar = float(np.real(np.sum(np.diag(rho1) * np.arange(levels))))
    l2 = 1.0 / (ratio * (1.0 + nbar) + 1.0)
    l1 = ratio * l2
    t_raised = float(np.real(np.trace(raised @ raised)))
    t_rho = float(np.real(np.trace(rho1 @ rho1)))
    return l1**2 * t_raised + l2**2 * t_rho


def mode_number_from_ratio(ratio: float) -> float:
    """Two-mode effective mode number K = (1+ratio)^2 / (1+ratio^2)."""
    if ratio <= 0:
        raise FockError("eigenvalue ratio must be positive")
    return (1.0 + ratio) ** 2 / (1.0 + ratio**2)


def ratio_from_mode_number(k: float) -> float:
    """Invert K = (1+t)^2/(1+t^2) on t >= 1 (two-mode channel, K in (1, 2])."""
    if not 1.0 < k <= 2.0:
        raise KOutOfRange(f"two-mode model covers K in (1, 2], got {k}")
    disc = 1.0 - (k - 1.0) ** 2
    return (1.0 + math.sqrt(max(disc, 0.0))) / (k - 1.0)


def purity_surface(k_values, nbar_values) -> np.ndarray:
    """Purity over a (K, nbar) grid via the two-mode closed form; rows
    follow k_values, columns nbar_values."""
    out = np.empty((len(k_values), len(nbar_values)))
    for i, k in enumerate(k_values):
        t = ratio_from_mode_number(float(k))
        for j, nb in enumerate(nbar_values):
            out[i, j] = two_mode_purity(t, float(nb))
    return out


# --- non-saturation of the purity bound ----------------------------------------


@dataclass(frozen=True)
class NonSaturationReport:
    trials: int
    mode_count: int
    truncation: int
    seed: int
    min_purity_gap: float  # min over trials of 1 - purity
    min_cs_gap: float  # min over trials/pairs of the Cauchy-Schwarz slack
    purities: np.ndarray = field(repr=False)


def verify_nonsaturation(
    trials: int,
    modes: int = 2,
    truncation: int = 5,
    seed: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> NonSaturationReport:
    """Random multi-eigenvalue channels on Haar-random pure inputs never
    produce a pure output; measures how far the Cauchy-Schwarz bound
    |<phi| e_k e_l^dag |phi>|^2 <= (1+nbar_k)(1+nbar_l) stays from
    saturation.

    Random states are drawn in the sub-basis with per-mode occupation
    <= truncation-1 so the added photon stays inside the cutoff exactly.
    """
    if modes < 2:
        raise FockError("non-saturation needs at least two modes")
    if rng is None:
        rng = np.random.default_rng(seed)

    truncs = _as_truncations(truncation, modes)
    occ = occupations(truncs)
    sub = np.nonzero(np.all(occ <= np.asarray(truncs) - 1, axis=1))[0]
    adags = [creation_operator(truncs, m) for m in range(modes)]

    min_purity_gap = math.inf
    min_cs_gap = math.inf
    purities = np.empty(trials)
    for t in range(trials):
        # channel with at least two non-negligible eigenvalues
        while True:
            lam = rng.random(modes)
            if np.sort(lam)[-2] > 1e-3 * lam.max():
                break
        channel = AdditionChannel(lam)

        vec = rng.normal(size=sub.size) + 1j * rng.normal(size=sub.size)
        vec /= np.linalg.norm(vec)
        full = np.zeros(occ.shape[0], dtype=complex)
        full[sub] = vec
        rho = FockDensityMatrix(modes, truncs, np.outer(full, full.conj()))

        out, _ = apply_addition(rho, channel)
        p = purity(out)
        purities[t] = p
        min_purity_gap = min(min_purity_gap, 1.0 - p)

        raised = [ad @ full for ad in adags]
        norms = [float(np.real(np.vdot(v, v))) for v in raised]  # = 1 + nbar_m
        for k in range(modes):
            for l in range(k + 1, modes):
                cross = abs(np.vdot(raised[k], raised[l])) ** 2
                min_cs_gap = min(min_cs_gap, norms[k] * norms[l] - cross)

    return NonSaturationReport(
        trials=trials,
        mode_count=modes,
        truncation=truncation,
        seed=seed,
        min_purity_gap=float(min_purity_gap),
        min_cs_gap=float(min_cs_gap),
        purities=purities,
    )
