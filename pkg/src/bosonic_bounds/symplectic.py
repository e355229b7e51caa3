"""Symplectic linear algebra on quadrature covariance matrices.

Quadratures are ordered (X1, P1, ..., Xn, Pn) and scaled so the vacuum
covariance matrix is the identity (quadrature variance 1/2, covariance
entries are doubled second moments).  In these units a covariance matrix V
describes a physical state iff all symplectic eigenvalues are >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricInputError, NonPositiveDefiniteError
from .tolerances import TAU_PD, TAU_PHYS, TAU_SYM

__all__ = [
    "Bipartition",
    "omega",
    "validate_covariance",
    "symplectic_eigenvalues",
    "symplectic_trace",
    "partial_transpose",
    "check_physicality",
]


@dataclass(frozen=True)
class Bipartition:
    """Split of n = n_a + n_b modes into party A (first n_a modes) and party B.

    Modes are zero-indexed; party A always takes the leading modes.
    """

    n_a: int
    n_b: int

    def __post_init__(self):
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError("both parties need at least one mode")

    @property
    def n(self) -> int:
        return self.n_a + self.n_b

    @property
    def a_modes(self) -> range:
        return range(self.n_a)

    @property
    def b_modes(self) -> range:
        return range(self.n_a, self.n)

    def quad_indices(self, modes) -> np.ndarray:
        """Flat quadrature indices (X_i, P_i interleaved) for the given modes."""
        modes = np.asarray(list(modes), dtype=int)
        return np.concatenate([2 * modes, 2 * modes + 1]) if modes.size else modes


def omega(n: int) -> np.ndarray:
    """Symplectic form for n modes: direct sum of [[0, 1], [-1, 0]] blocks."""
    w = np.zeros((2 * n, 2 * n))
    for k in range(n):
        w[2 * k, 2 * k + 1] = 1.0
        w[2 * k + 1, 2 * k] = -1.0
    return w


def validate_covariance(V, tau_sym: float = TAU_SYM, tau_pd: float = TAU_PD) -> np.ndarray:
    """Check shape, symmetry, and positive definiteness of a covariance matrix.

    Parameters
    ----------
    V : array_like
        Candidate 2n x 2n covariance matrix.
    tau_sym : float
        Relative symmetry tolerance, scaled by the largest entry magnitude.
    tau_pd : float
        Positivity floor; any eigenvalue <= tau_pd is rejected.

    Returns
    -------
    ndarray
        The input as a float array (symmetrized copy).

    Raises
    ------
    AsymmetricInputError
        If V deviates from its transpose by more than the tolerance.
    NonPositiveDefiniteError
        If V has an eigenvalue at or below the floor.
    """
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 != 0 or V.shape[0] == 0:
        raise ValueError(f"covariance matrix must be 2n x 2n, got shape {V.shape}")
    scale = max(1.0, float(np.max(np.abs(V))))
    asym = float(np.max(np.abs(V - V.T)))
    if asym > tau_sym * scale:
        raise AsymmetricInputError(
            f"covariance asymmetry {asym:.3e} exceeds {tau_sym:.1e} * {scale:.3e}"
        )
    V = 0.5 * (V + V.T)
    evals = np.linalg.eigvalsh(V)
    if evals[0] <= tau_pd:
        raise NonPositiveDefiniteError(
            f"covariance eigenvalue {evals[0]:.3e} at or below floor {tau_pd:.1e}"
        )
    return V


def symplectic_eigenvalues(V) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, ascending.

    Computed from the Hermitian matrix sqrt(V) (i Omega) sqrt(V), which is
    similar to i Omega V; its spectrum is +/- the symplectic eigenvalues.

    Returns
    -------
    ndarray
        The n positive values nu_1 <= ... <= nu_n.
    """
    V = validate_covariance(V)
    n = V.shape[0] // 2
    lam, Q = np.linalg.eigh(V)
    root = (Q * np.sqrt(lam)) @ Q.T
    K = 1j * root @ omega(n) @ root
    ev = np.linalg.eigvalsh(K)
    return ev[n:]


def symplectic_trace(V) -> float:
    """Twice the sum of the symplectic eigenvalues of V.

    Always <= Tr V, with equality iff V is symplectically diagonal.
    """
    return float(2.0 * np.sum(symplectic_eigenvalues(V)))


def partial_transpose(V, bp: Bipartition) -> np.ndarray:
    """Covariance matrix of the partial transpose over party B.

    Flips the sign of every P quadrature belonging to a B mode; an exact
    involution.
    """
    V = np.asarray(V, dtype=float)
    if V.shape[0] != 2 * bp.n:
        raise ValueError(f"covariance is for {V.shape[0] // 2} modes, bipartition has {bp.n}")
    signs = np.ones(2 * bp.n)
    for j in bp.b_modes:
        signs[2 * j + 1] = -1.0
    return V * np.outer(signs, signs)


def check_physicality(V, tau_phys: float = TAU_PHYS) -> bool:
    """True iff every symplectic eigenvalue is >= 1 - tau_phys."""
    nu = symplectic_eigenvalues(V)
    return bool(nu[0] >= 1.0 - tau_phys)
