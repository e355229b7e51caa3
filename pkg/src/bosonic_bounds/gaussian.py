"""Gaussian states: constructors, beam splitter, measures, sampling, and I/O.

A Gaussian state is (mean, cov) with the conventions of :mod:`.symplectic`:
interleaved quadrature order and vacuum covariance equal to the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError, UnphysicalStateError
from .symplectic import (
    Bipartition,
    check_physicality,
    omega,
    partial_transpose,
    symplectic_eigenvalues,
    validate_covariance,
)
from .tolerances import TAU_PHYS

__all__ = [
    "GaussianState",
    "MeasureReport",
    "make_vacuum",
    "make_thermal",
    "make_squeezed",
    "make_tmsv",
    "tensor",
    "purity",
    "apply_beam_splitter",
    "qcs2_gaussian",
    "qcs2_gaussian_char_oracle",
    "log_negativity_gaussian",
    "gaussian_measures",
    "random_orthogonal_symplectic",
    "random_symplectic",
    "random_gaussian_state",
    "random_classical_state",
    "gaussian_to_dict",
    "gaussian_from_dict",
    "save_gaussian",
    "load_gaussian",
]


@dataclass(frozen=True)
class GaussianState:
    """Mean quadrature vector (length 2n) and covariance matrix (2n x 2n)."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = validate_covariance(self.cov)
        if mean.shape != (cov.shape[0],):
            raise ValueError(f"mean shape {mean.shape} does not match covariance {cov.shape}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n(self) -> int:
        return self.cov.shape[0] // 2


def make_vacuum(n: int) -> GaussianState:
    """n-mode vacuum: zero mean, identity covariance."""
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def make_thermal(nbar) -> GaussianState:
    """Thermal state with mean photon number nbar per mode.

    ``nbar`` may be a scalar (one mode) or a sequence (one entry per mode);
    the covariance is diag(2 nbar_k + 1) on both quadratures of mode k.
    """
    nbar = np.atleast_1d(np.asarray(nbar, dtype=float))
    if np.any(nbar < 0):
        raise ValueError("thermal occupation must be >= 0")
    diag = np.repeat(2.0 * nbar + 1.0, 2)
    return GaussianState(np.zeros(diag.size), np.diag(diag))


def make_squeezed(s: float, phi: float = 0.0) -> GaussianState:
    """Single-mode squeezed vacuum with strength s and squeezing axis at angle phi.

    phi = 0 squeezes X (cov diag(e^{-2s}, e^{2s})); phi = pi/2 squeezes P.
    """
    c, sn = np.cos(phi), np.sin(phi)
    rot = np.array([[c, -sn], [sn, c]])
    V = rot @ np.diag([np.exp(-2.0 * s), np.exp(2.0 * s)]) @ rot.T
    return GaussianState(np.zeros(2), V)


def make_tmsv(r: float) -> GaussianState:
    """Two-mode squeezed vacuum with squeezing parameter r.

    Block form: V_A = V_B = cosh(2r) I, cross block sinh(2r) diag(1, -1).
    """
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    V = np.eye(4) * ch
    V[0, 2] = V[2, 0] = sh
    V[1, 3] = V[3, 1] = -sh
    return GaussianState(np.zeros(4), V)


def tensor(*states: GaussianState) -> GaussianState:
    """Tensor product, concatenating modes in argument order."""
    mean = np.concatenate([st.mean for st in states])
    cov = np.zeros((mean.size, mean.size))
    k = 0
    for st in states:
        d = st.cov.shape[0]
        cov[k : k + d, k : k + d] = st.cov
        k += d
    return GaussianState(mean, cov)


def purity(st: GaussianState) -> float:
    """Tr rho^2 = 1 / sqrt(det V)."""
    sign, logdet = np.linalg.slogdet(st.cov)
    if sign <= 0:
        raise UnphysicalStateError("covariance has non-positive determinant")
    return float(np.exp(-0.5 * logdet))


def beam_splitter_symplectic(n: int, modes: tuple[int, int]) -> np.ndarray:
    """Symplectic matrix of the balanced beam splitter on a mode pair.

    Convention: quadratures of the first mode map to (R_i + R_j)/sqrt(2) and
    those of the second to (R_j - R_i)/sqrt(2).
    """
    i, j = modes
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"mode pair {modes} invalid for {n} modes")
    M = np.eye(2 * n)
    inv = 1.0 / np.sqrt(2.0)
    for q in range(2):
        a, b = 2 * i + q, 2 * j + q
        M[a, a] = inv
        M[a, b] = inv
        M[b, b] = inv
        M[b, a] = -inv
    return M


def apply_beam_splitter(st: GaussianState, modes: tuple[int, int] = (0, 1)) -> GaussianState:
    """Balanced beam splitter acting on two modes of a Gaussian state."""
    M = beam_splitter_symplectic(st.n, modes)
    return GaussianState(M @ st.mean, M @ st.cov @ M.T)


def qcs2_gaussian(st: GaussianState) -> float:
    """Squared quadrature coherence scale of a Gaussian state: Tr V^{-1} / (2n).

    For Gaussian states this equals the total phase-space Fisher information
    per mode; it exceeds 1 exactly for nonclassical Gaussian states.
    """
    V = st.cov
    n = st.n
    return float(np.trace(np.linalg.inv(V)) / (2.0 * n))


def qcs2_gaussian_char_oracle(st: GaussianState) -> float:
    """Same quantity from the characteristic-function second moments.

    The squared coherence scale is Tr Sigma / n with
    Sigma = Omega V^{-1} Omega^T / 2, the covariance of |chi(xi)|^2 seen as a
    (Gaussian) distribution over phase space.  Used as an independent route
    to cross-check :func:`qcs2_gaussian`.
    """
    n = st.n
    w = omega(n)
    sigma = 0.5 * w @ np.linalg.inv(st.cov) @ w.T
    return float(np.trace(sigma) / n)


def log_negativity_gaussian(st: GaussianState, bp: Bipartition) -> tuple[float, int]:
    """Logarithmic negativity of a Gaussian state across a bipartition.

    Returns
    -------
    (float, int)
        E_N = sum of -ln(nu) over partially transposed symplectic
        eigenvalues nu < 1, and the count n_minus of such eigenvalues.
    """
    if st.n != bp.n:
        raise ValueError(f"state has {st.n} modes, bipartition {bp.n}")
    nu = symplectic_eigenvalues(partial_transpose(st.cov, bp))
    below = nu < 1.0 - TAU_PHYS
    n_minus = int(np.count_nonzero(below))
    en = float(-np.sum(np.log(nu[below]))) if n_minus else 0.0
    return en, n_minus


@dataclass(frozen=True)
class MeasureReport:
    """All Gaussian measures of one state across one bipartition."""

    qcs2: float
    ftot: float
    log_negativity: float
    n_minus: int
    symplectic_spectrum: tuple
    symplectic_spectrum_pt: tuple

    def to_dict(self) -> dict:
        return {
            "qcs2": self.qcs2,
            "ftot": self.ftot,
            "log_negativity": self.log_negativity,
            "n_minus": self.n_minus,
            "symplectic_spectrum": list(self.symplectic_spectrum),
            "symplectic_spectrum_pt": list(self.symplectic_spectrum_pt),
        }


def gaussian_measures(st: GaussianState, bp: Bipartition | None = None) -> MeasureReport:
    """Evaluate coherence scale, Fisher information, and log-negativity.

    With no bipartition the state is split down the middle when the mode
    count is even, else log-negativity fields are reported for the 1|(n-1)
    split.
    """
    if bp is None:
        half = st.n // 2
        bp = Bipartition(max(half, 1), st.n - max(half, 1)) if st.n > 1 else None
    qcs2 = qcs2_gaussian(st)
    nu = symplectic_eigenvalues(st.cov)
    if not check_physicality(st.cov):
        raise UnphysicalStateError(f"min symplectic eigenvalue {nu[0]:.6g} < 1")
    if bp is None:
        en, nm, nu_pt = 0.0, 0, nu
    else:
        en, nm = log_negativity_gaussian(st, bp)
        nu_pt = symplectic_eigenvalues(partial_transpose(st.cov, bp))
    return MeasureReport(
        qcs2=qcs2,
        ftot=qcs2,
        log_negativity=en,
        n_minus=nm,
        symplectic_spectrum=tuple(float(x) for x in nu),
        symplectic_spectrum_pt=tuple(float(x) for x in nu_pt),
    )


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal_symplectic(n: int, rng=None) -> np.ndarray:
    """Random orthogonal symplectic matrix (a passive Gaussian unitary).

    Drawn by embedding a Haar unitary U = A + iB blockwise: the 2x2 block
    for modes (i, j) is [[A_ij, -B_ij], [B_ij, A_ij]].
    """
    rng = _as_rng(rng)
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    O = np.zeros((2 * n, 2 * n))
    O[0::2, 0::2] = u.real
    O[0::2, 1::2] = -u.imag
    O[1::2, 0::2] = u.imag
    O[1::2, 1::2] = u.real
    return O


def random_symplectic(n: int, rng=None, squeeze_max: float = 1.0) -> np.ndarray:
    """Random symplectic S = O1 diag(e^{-s_k}, e^{s_k}) O2, Euler form."""
    rng = _as_rng(rng)
    o1 = random_orthogonal_symplectic(n, rng)
    o2 = random_orthogonal_symplectic(n, rng)
    s = rng.uniform(0.0, squeeze_max, size=n)
    d = np.stack([np.exp(-s), np.exp(s)], axis=1).reshape(-1)
    return o1 @ np.diag(d) @ o2


def random_gaussian_state(
    n: int,
    seed=None,
    purity_profile: str = "mixed",
    squeeze_max: float = 1.0,
    thermal_rate: float = 1.0,
) -> GaussianState:
    """Sample a random physical Gaussian state.

    Parameters
    ----------
    n : int
        Mode count.
    seed : int, Generator, or None
        Determinism contract: the same integer seed yields the same state
        bit for bit.
    purity_profile : {"mixed", "pure"}
        "pure" sets every symplectic eigenvalue to 1; "mixed" draws
        nu_k = 1 + Exponential(thermal_rate).
    squeeze_max : float
        Squeezing magnitudes are drawn uniformly from [0, squeeze_max].
    thermal_rate : float
        Scale of the exponential excess for the mixed profile.
    """
    rng = _as_rng(seed)
    if purity_profile == "pure":
        nu = np.ones(n)
    elif purity_profile == "mixed":
        nu = 1.0 + rng.exponential(thermal_rate, size=n)
    else:
        raise ValueError(f"unknown purity profile {purity_profile!r}")
    S = random_symplectic(n, rng, squeeze_max)
    V = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return GaussianState(np.zeros(2 * n), V)


def random_classical_state(n: int, seed=None, noise_scale: float = 1.0) -> GaussianState:
    """Random classical Gaussian state: V = identity + positive semidefinite noise.

    Such states have QCS^2 <= 1 and zero log-negativity across every split.
    """
    rng = _as_rng(seed)
    A = rng.normal(scale=noise_scale, size=(2 * n, 2 * n))
    V = np.eye(2 * n) + (A @ A.T) / (2.0 * n)
    return GaussianState(np.zeros(2 * n), V)


def gaussian_to_dict(st: GaussianState) -> dict:
    return {"n": st.n, "mean": st.mean.tolist(), "cov": st.cov.tolist()}


def gaussian_from_dict(data: dict) -> GaussianState:
    """Build a state from {"n", "mean", "cov"}, naming any offending field."""
    if not isinstance(data, dict):
        raise SchemaError("gaussian state file must hold a JSON object")
    for field in ("n", "mean", "cov"):
        if field not in data:
            raise SchemaError(f"missing field '{field}'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("field 'n' must be a positive integer")
    try:
        mean = np.asarray(data["mean"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field 'mean' is not numeric: {exc}") from exc
    if mean.shape != (2 * n,):
        raise SchemaError(f"field 'mean' must have length {2 * n}, got shape {mean.shape}")
    try:
        cov = np.asarray(data["cov"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field 'cov' is not numeric: {exc}") from exc
    if cov.shape != (2 * n, 2 * n):
        raise SchemaError(f"field 'cov' must be {2 * n} x {2 * n}, got shape {cov.shape}")
    try:
        return GaussianState(mean, cov)
    except ValueError as exc:
        raise SchemaError(f"field 'cov' invalid: {exc}") from exc


def save_gaussian(st: GaussianState, path) -> None:
    with open(path, "w") as fh:
        json.dump(gaussian_to_dict(st), fh, indent=1)
        fh.write("\n")


def load_gaussian(path) -> GaussianState:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    return gaussian_from_dict(data)
