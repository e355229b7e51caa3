"""Bounds linking entanglement measures to total-noise and coherence measures.

Everything here is scalar arithmetic built on the entropy-like function
g(x) = (x + 1) ln(x + 1) - x ln x, the mean photon number of a thermal
state of given entropy and vice versa.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

from .tolerances import TAU_CHECK, TAU_ROOT, TAU_SAT

__all__ = [
    "g",
    "g_prime",
    "theorem_symmetric_bound",
    "mtn_floor_from_entanglement",
    "NAStarSolution",
    "solve_na_star",
    "na_star_asymptotic",
    "theorem_split_bound",
    "split_bound_asymptotic",
    "gaussian_pure_bound",
    "BoundCheck",
    "log_negativity_qcs_bound",
    "log_negativity_qcs_refined",
    "qcs_implication_report",
]


def g(x: float) -> float:
    """(x + 1) ln(x + 1) - x ln x, the entropy of a thermal state with mean x.

    Increasing and strictly concave on x >= 0, with g(0) = 0.
    """
    if x < 0.0:
        raise ValueError(f"g requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    return math.log1p(x) + x * math.log1p(1.0 / x)


def g_prime(x: float) -> float:
    """Derivative ln(1 + 1/x); positive and decreasing."""
    if x <= 0.0:
        raise ValueError(f"g_prime requires x > 0, got {x}")
    return math.log1p(1.0 / x)


def theorem_symmetric_bound(mtn: float, n: int) -> float:
    """Upper bound (n/2) g((M_TN - 1)/2) on entanglement entropy, even n.

    Valid for pure states of n modes split evenly; saturated by products of
    two-mode squeezed vacua and their number-preserving relatives.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if mtn < 1.0:
        raise ValueError(f"M_TN must be >= 1, got {mtn}")
    return (n / 2.0) * g((mtn - 1.0) / 2.0)


def mtn_floor_from_entanglement(ef: float, n: int) -> float | None:
    """Noise floor M_TN >= 1 + 2 e^{(2/n) E_F - 2}, valid once E_F >= 3n/4.

    Returns None when the entanglement is below the validity threshold.
    """
    if ef < 0.75 * n:
        return None
    return 1.0 + 2.0 * math.exp((2.0 / n) * ef - 2.0)


@dataclass(frozen=True)
class NAStarSolution:
    """Root of n_A g(t / n_A) = n_B g((N - t) / n_B) on [0, N]."""

    na_star: float
    residual: float
    iterations: int
    method: str
    total: float

    @property
    def nb_star(self) -> float:
        return self.total - self.na_star

    def to_dict(self) -> dict:
        return {
            "na_star": self.na_star,
            "nb_star": self.nb_star,
            "residual": self.residual,
            "iterations": self.iterations,
            "method": self.method,
            "total": self.total,
        }


def _balance(t: float, N: float, n_a: int, n_b: int) -> float:
    return n_a * g(t / n_a) - n_b * g((N - t) / n_b)


def solve_na_star(N: float, n_a: int, n_b: int, max_iter: int = 200) -> NAStarSolution:
    """Split N photons so both parties carry equal thermal entropy.

    The balance function is strictly increasing in t, so bisection on
    [0, N] converges unconditionally; the returned residual is the balance
    value at the root, bounded by TAU_ROOT * max(1, N) in the tests.
    """
    if n_a < 1 or n_b < 1:
        raise ValueError("mode counts must be >= 1")
    if N < 0.0:
        raise ValueError(f"photon number must be >= 0, got {N}")
    if N == 0.0:
        return NAStarSolution(0.0, 0.0, 0, "bisection", total=0.0)
    if n_a == n_b:
        return NAStarSolution(
            0.5 * N, abs(_balance(0.5 * N, N, n_a, n_b)), 0, "bisection", total=N
        )
    lo, hi = 0.0, float(N)
    it = 0
    while it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        it += 1
        if _balance(mid, N, n_a, n_b) <= 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return NAStarSolution(root, abs(_balance(root, N, n_a, n_b)), it, "bisection", total=N)


def na_star_asymptotic(N: float, n_a: int, n_b: int, variant: str = "leading") -> NAStarSolution:
    """Closed-form large-N approximations to the equal-entropy split.

    variant "leading": N_A* = (1 - delta) N with
    delta = 1 / (mu ((e nu)^{1 - mu} + 1)), mu = n_A/n_B, nu = N/n_A.
    variant "refined": multiplies in the next-order correction
    1 - e^{1 - mu} / (2 nu^mu).  Both are asymptotic in nu; a warning is
    issued for nu < 10.
    """
    if n_a < 1 or n_b < 1:
        raise ValueError("mode counts must be >= 1")
    if N <= 0.0:
        raise ValueError("asymptotic split needs N > 0")
    mu = n_a / n_b
    nu = N / n_a
    if nu < 10.0:
        warnings.warn(
            f"asymptotic split used at nu = {nu:.3g} < 10; expect poor accuracy",
            stacklevel=2,
        )
    base = 1.0 / (mu * ((math.e * nu) ** (1.0 - mu) + 1.0))
    if variant == "leading":
        delta = base
        method = "asymptotic-leading"
    elif variant == "refined":
        delta = base * (1.0 - math.exp(1.0 - mu) / (2.0 * nu**mu))
        method = "asymptotic-refined"
    else:
        raise ValueError(f"unknown variant {variant!r}")
    root = (1.0 - delta) * N
    if 0.0 <= root <= N:
        residual = abs(_balance(root, N, n_a, n_b))
    else:
        # Outside its validity region the closed form can leave [0, N];
        # report the raw value with an undefined residual instead of failing.
        residual = math.nan
    return NAStarSolution(root, residual, 0, method, total=N)


def theorem_split_bound(mtn: float, n_a: int, n_b: int) -> float:
    """Entanglement bound n_A g(N_A*/n_A) for an uneven split of n modes.

    N = (n/2)(M_TN - 1) is the total-noise photon budget; N_A* balances the
    thermal entropies of the two parties.  Coincides with the symmetric
    bound when n_A = n_B.
    """
    if mtn < 1.0:
        raise ValueError(f"M_TN must be >= 1, got {mtn}")
    n = n_a + n_b
    N = 0.5 * n * (mtn - 1.0)
    if N == 0.0:
        return 0.0
    sol = solve_na_star(N, n_a, n_b)
    return n_a * g(sol.na_star / n_a)


def split_bound_asymptotic(mtn: float, n_a: int, n_b: int) -> float:
    """Large-noise form n_A ln((1 - delta) N / n_A) + n_A of the split bound.

    Diverges logarithmically as M_TN -> 1, so that limit is rejected.
    """
    if mtn <= 1.0:
        raise ValueError("asymptotic bound requires M_TN > 1 (log divergence at 1)")
    n = n_a + n_b
    N = 0.5 * n * (mtn - 1.0)
    sol = na_star_asymptotic(N, n_a, n_b, variant="leading")
    x = sol.na_star / n_a
    if x <= 0.0:
        raise ValueError("asymptotic split collapsed to zero photons")
    return n_a * math.log(x) + n_a


def gaussian_pure_bound(mtn: float, n_a: int, n_b: int) -> float:
    """Entanglement bound n_A g((n / 4 n_A)(M_TN - 1)) for pure Gaussian states.

    Tighter than the general split bound when n_A < n_B; equal when the
    split is even.  Saturated by n_A two-mode squeezed vacua padded with
    vacuum modes on the larger party.
    """
    if mtn < 1.0:
        raise ValueError(f"M_TN must be >= 1, got {mtn}")
    n = n_a + n_b
    return n_a * g((n / (4.0 * n_a)) * (mtn - 1.0))


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated inequality: lhs <= rhs with slack bookkeeping."""

    provenance: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    saturated: bool

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "saturated": self.saturated,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check(provenance: str, lhs: float, rhs: float, tau_check: float, tau_sat: float) -> BoundCheck:
    margin = rhs - lhs
    return BoundCheck(
        provenance=provenance,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        holds=margin >= -tau_check,
        saturated=abs(margin) <= tau_sat,
    )


def log_negativity_qcs_bound(
    en: float,
    qcs2: float,
    n: int,
    n_minus: int,
    tau_check: float = TAU_CHECK,
    tau_sat: float = TAU_SAT,
) -> BoundCheck:
    """E_N <= n_minus (ln C^2 + ln(n / n_minus)) for any n-mode state.

    Requires n_minus >= 1; the n_minus = 0 case asserts E_N = 0 and is
    reported by :func:`qcs_implication_report`.
    """
    if n_minus < 1:
        raise ValueError("bound needs n_minus >= 1; with n_minus = 0, E_N must vanish")
    if n_minus > n:
        raise ValueError("n_minus cannot exceed the mode count")
    if qcs2 <= 0.0:
        raise ValueError("QCS^2 must be positive")
    rhs = n_minus * (math.log(qcs2) + math.log(n / n_minus))
    return _check("log-negativity vs coherence-scale (mode-counting)", en, rhs, tau_check, tau_sat)


def log_negativity_qcs_refined(
    qcs2: float,
    en: float,
    det_v: float,
    tau_check: float = TAU_CHECK,
    tau_sat: float = TAU_SAT,
) -> BoundCheck:
    """Two-mode refinement C^2 >= (e^{E_N} + e^{-E_N} / sqrt(det V)) / 2.

    For 1 + 1 mode states with E_N > 0; equality holds exactly on pure
    two-mode squeezed vacua (det V = 1).
    """
    if det_v <= 0.0:
        raise ValueError("det V must be positive")
    rhs = 0.5 * (math.exp(en) + math.exp(-en) / math.sqrt(det_v))
    return _check("two-mode coherence-scale refinement", rhs, qcs2, tau_check, tau_sat)


def qcs_implication_report(
    qcs2: float,
    en: float,
    n: int,
    tau_check: float = TAU_CHECK,
    tau_sat: float = TAU_SAT,
) -> list[BoundCheck]:
    """Threshold implications between log-negativity and coherence scale.

    Two one-sided checks, each reported only when its hypothesis applies:
    E_N > n/e forces ln C^2 >= E_N / n - 1/e, and C^2 < e^{-n/e} forces
    E_N = 0.
    """
    out = []
    if en > n / math.e:
        out.append(
            _check(
                "entangled-enough implies nonclassical",
                en / n - 1.0 / math.e,
                math.log(qcs2),
                tau_check,
                tau_sat,
            )
        )
    if qcs2 < math.exp(-n / math.e):
        out.append(
            _check(
                "classical-enough implies unentangled (PPT)",
                en,
                0.0,
                tau_check,
                tau_sat,
            )
        )
    return out
