"""End-to-end acceptance checks, one labelled pass/fail line per criterion.

Each test prints "[PASS] criterion-N: ..." (or "[FAIL] ...") before its
assertions so a scan of the captured output gives the full scorecard.  Two
asymptotic-window checks are strict expected failures: the ratios converge
logarithmically, so the stated windows close many orders of magnitude beyond
the stated grid (details in their docstrings).  They are kept to document
exactly how far the N = 40 values are from their limits and will flag loudly
if the implementation ever disagrees.
"""

import math
import time
import warnings

import numpy as np
import pytest
from scipy.special import gammaln

from bosonic_bounds import (
    Bipartition,
    FockDensityOperator,
    apply_beam_splitter_fock,
    counterexample_demo,
    entanglement_entropy,
    g,
    load_nastar_envelope,
    log_negativity_qcs_refined,
    make_fock_number,
    make_fock_squeezed,
    make_fock_thermal,
    make_fock_tmsv,
    make_squeezed,
    make_tmsv,
    make_vacuum,
    mtn_pure,
    na_star_asymptotic,
    pad_fock,
    qcs2_fock,
    qcs2_gaussian,
    qcs2_gaussian_char_oracle,
    random_audit,
    random_gaussian_state,
    solve_na_star,
    split_accuracy_sweep,
    squeezed_cutoff,
    tensor,
)
from bosonic_bounds.fock import FockPureState

_T0 = time.perf_counter()
_BP = Bipartition(1, 1)


def _line(criterion, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


def test_criterion1_tmsv_saturates_even_split_bound():
    details = []
    ok = True
    for r in (0.2, 0.5, 0.8, 1.1):
        t0 = time.perf_counter()
        psi = make_fock_tmsv(r, tau=1e-12)
        ef = entanglement_entropy(psi, _BP, tau=1e-10)
        mtn = mtn_pure(psi, tau=1e-10)
        dt = time.perf_counter() - t0
        target = g(math.sinh(r) ** 2)
        via_mtn = 1.0 * g((mtn - 1.0) / 2.0)  # (n/2) g((M_TN-1)/2), n = 2
        gap = max(abs(ef - target), abs(ef - via_mtn))
        details.append(f"r={r} gap={gap:.2e} dt={dt:.3f}s")
        ok = ok and gap <= 1e-6 and dt < 1.0
    _line("criterion-1", ok, "two-mode squeezed vacuum meets the even-split "
          f"bound with equality ({'; '.join(details)})")
    assert ok


def _binomial_entropy(N):
    k = np.arange(N + 1)
    logp = gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1) - N * math.log(2.0)
    return float(-(np.exp(logp) * logp).sum())


def _bs_ratio(occupations):
    psi = make_fock_number(occupations)
    out = apply_beam_splitter_fock(psi, tau=1e-10)
    ef = entanglement_entropy(out, _BP, tau=1e-9)
    g_in = g((mtn_pure(psi) - 1.0) / 2.0)
    return ef, ef / g_in


def test_criterion2_number_state_ratio_trends():
    t0 = time.perf_counter()
    split, twin = {}, {}
    for N in (10, 20, 40):
        ef, ratio = _bs_ratio((N, 0))
        # independent route: the output photon distribution is binomial
        assert ef == pytest.approx(_binomial_entropy(N), abs=1e-9)
        split[N] = ratio
        _, twin[N] = _bs_ratio((N, N))
    dt = time.perf_counter() - t0
    gaps = [abs(split[N] - 0.5) for N in (10, 20, 40)]
    ok = (
        gaps[0] > gaps[1] > gaps[2]
        and all(r > 0.5 for r in split.values())
        and twin[10] < twin[20] < twin[40] < 1.0
        and dt < 10.0
    )
    _line("criterion-2", ok,
          "single-arm ratio falls toward 1/2 "
          f"({split[10]:.4f} > {split[20]:.4f} > {split[40]:.4f}), twin-arm "
          f"ratio climbs toward 1 ({twin[10]:.4f} < {twin[20]:.4f} < "
          f"{twin[40]:.4f}); Schmidt sums match the binomial-entropy oracle; "
          f"dt={dt:.2f}s")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="E_F/g_in for |N,0> converges to 1/2 like ln(2 pi e N)/(2 N ln(N/2)); "
    "entering the 0.05 window takes N ~ 7e4, so at N = 40 the ratio is 0.639",
)
def test_criterion2_window_single_arm_at_40():
    """Window check that the logarithmic approach cannot meet at N = 40.

    The ratio decays like a ratio of logarithms, so the distance to the
    limit shrinks by only ~0.03 per doubling of N around N = 40; closing
    the remaining 0.14 gap takes three more decades of photon number.
    """
    _, ratio = _bs_ratio((40, 0))
    ok = abs(ratio - 0.5) <= 0.05
    _line("criterion-2(window-single-arm)", ok,
          f"|ratio - 1/2| = {abs(ratio - 0.5):.4f} at N = 40 against a 0.05 window")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="E_F/g_in for |N,N> converges to 1 like ln(pi N/4)/ln(N), which "
    "reaches 0.95 only near N ~ 2e10; at N = 40 the ratio is 0.757",
)
def test_criterion2_window_twin_arm_at_40():
    """Window check that the logarithmic approach cannot meet at N = 40.

    1 - ratio ~ ln(4/pi + ...)/ln(N) needs ln N ~ 20 x its value at 40 to
    squeeze under 0.05, i.e. photon numbers around 2e10.
    """
    _, ratio = _bs_ratio((40, 40))
    ok = abs(ratio - 1.0) <= 0.05
    _line("criterion-2(window-twin-arm)", ok,
          f"|ratio - 1| = {abs(ratio - 1.0):.4f} at N = 40 against a 0.05 window")
    assert ok


def _antisqueezed_vacuum_input(s2, cutoff, tau):
    mode1 = make_fock_squeezed(s2, 0.0, cutoff, tau)
    amps = np.zeros((cutoff, cutoff), dtype=complex)
    amps[:, 0] = mode1.amps
    return FockPureState(amps, mode1.tail_mass)


def test_criterion3_squeezed_input_identities():
    ok = True
    details = []
    for s in (0.3, 0.6):
        cutoff = squeezed_cutoff(2.0 * s, 1e-12)
        psi_in = _antisqueezed_vacuum_input(2.0 * s, cutoff, 1e-10)
        out = apply_beam_splitter_fock(psi_in, tau=1e-10)
        gap1 = abs(entanglement_entropy(out, _BP, tau=1e-9) - g(math.sinh(s) ** 2))

        m1 = make_fock_squeezed(s, 0.0, cutoff, 1e-10)
        m2 = make_fock_squeezed(s, math.pi / 2.0, cutoff, 1e-10)
        pair = FockPureState(
            np.tensordot(m1.amps, m2.amps, axes=0), m1.tail_mass + m2.tail_mass
        )
        out2 = apply_beam_splitter_fock(pair, tau=1e-10)
        gap2 = abs(entanglement_entropy(out2, _BP, tau=1e-9) - g(math.sinh(s) ** 2))

        # one squeezer at 2s' feeding vacuum carries the same mean total
        # noise as two orthogonal squeezers at s when cosh(4s') = 2cosh(2s)-1
        s_link = 0.25 * math.acosh(2.0 * math.cosh(2.0 * s) - 1.0)
        single = tensor(make_squeezed(2.0 * s_link), make_vacuum(1))
        pair_g = tensor(make_squeezed(s), make_squeezed(s, math.pi / 2.0))
        mtn_single = float(np.trace(single.cov)) / 4.0
        mtn_pair = float(np.trace(pair_g.cov)) / 4.0
        gap3 = abs(mtn_single - mtn_pair)

        details.append(f"s={s}: gaps {gap1:.2e}, {gap2:.2e}, link {gap3:.2e}")
        ok = ok and gap1 <= 1e-6 and gap2 <= 1e-6 and gap3 <= 1e-12
    _line("criterion-3", ok,
          "both squeezed-input families hand the beam splitter their full "
          f"nonclassicality ({'; '.join(details)})")
    assert ok


def test_criterion4_equal_entropy_split_solver():
    rows = split_accuracy_sweep()
    grid_ok = len(rows) == 200 and all(r["residual"] <= 1e-10 for r in rows)

    sym_ok = all(
        solve_na_star(N, k, k).na_star == 0.5 * N
        for N in (3.0, 47.0, 400.0)
        for k in (1, 2, 3)
    )

    Ns = np.linspace(4.0, 84.0, 41)
    F = np.array([g(solve_na_star(N, 1, 3).na_star) for N in Ns])
    conc_ok = float(np.diff(F, 2).max()) <= 1e-9

    env = load_nastar_envelope()
    env_ok = True
    for n_a, n_b in sorted({(r["n_a"], r["n_b"]) for r in env}):
        sub = sorted(
            (r for r in env if (r["n_a"], r["n_b"]) == (n_a, n_b)),
            key=lambda r: r["nu"],
        )
        for col, method in (("relerr_leading", "leading"), ("relerr_refined", "refined")):
            prev = math.inf
            for row in sub:
                N = row["nu"] * n_a
                exact = solve_na_star(N, n_a, n_b).na_star
                approx = na_star_asymptotic(N, n_a, n_b, method).na_star
                rel = abs(approx - exact) / exact
                env_ok = env_ok and rel <= row[col] * (1.0 + 1e-6) + 1e-15
                env_ok = env_ok and rel < prev
                prev = rel
    ok = grid_ok and sym_ok and conc_ok and env_ok
    _line("criterion-4", ok,
          f"200-point grid residuals <= 1e-10 ({grid_ok}), symmetric split exact "
          f"({sym_ok}), entropy profile concave ({conc_ok}), closed forms under "
          f"the frozen accuracy envelope and improving with photon number ({env_ok})")
    assert ok


def test_criterion5_coherence_scale_identity():
    tau = 1e-10
    tol = max(10.0 * tau, 1e-7)
    cases = []
    rho = make_fock_thermal(0.4, tau=tau)
    cases.append(("thermal", qcs2_fock(rho), 1.0 / (2.0 * 0.4 + 1.0)))
    psi = make_fock_squeezed(0.7, 0.0, tau=tau)
    cases.append(
        ("squeezed", qcs2_fock(FockDensityOperator.from_pure(pad_fock(psi))),
         math.cosh(2.0 * 0.7))
    )
    tmsv = make_fock_tmsv(0.5, tau=tau)
    cases.append(
        ("tmsv", qcs2_fock(FockDensityOperator.from_pure(pad_fock(tmsv))),
         math.cosh(2.0 * 0.5))
    )
    fock_ok = all(abs(got - want) <= tol for _, got, want in cases)

    worst = 0.0
    for i in range(1000):
        st = random_gaussian_state(1 + i % 4, seed=i)
        worst = max(worst, abs(qcs2_gaussian(st) - qcs2_gaussian_char_oracle(st)))
    oracle_ok = worst <= 1e-10

    ok = fock_ok and oracle_ok
    gaps = "; ".join(f"{name} {abs(got - want):.2e}" for name, got, want in cases)
    _line("criterion-5", ok,
          f"commutator route matches Tr V^-1/(2n) ({gaps}) and the "
          f"characteristic-function oracle agrees to {worst:.2e} on 1000 states")
    assert ok


def test_criterion6_randomized_bound_audit():
    t0 = time.perf_counter()
    total = 0
    for n in (2, 3, 4):
        report = random_audit(
            n_states=10_000, modes=n, seed=2026 + n,
            fock_states=0, classical_states=0, tau_check=1e-9, jobs=4,
        )
        assert report.violations == []
        total += report.checks
    sat_gap = 0.0
    for r in (0.3, 0.9):
        st = make_tmsv(r)
        chk = log_negativity_qcs_refined(
            qcs2_gaussian(st), 2.0 * r, float(np.linalg.det(st.cov))
        )
        sat_gap = max(sat_gap, abs(chk.margin))
    dt = time.perf_counter() - t0
    ok = total >= 30_000 and sat_gap <= 1e-9 and dt < 60.0
    _line("criterion-6", ok,
          f"{total} checks on 30000 random 2-4 mode states, zero violations "
          f"beyond 1e-9; refined two-mode bound saturated to {sat_gap:.1e}; "
          f"dt={dt:.1f}s")
    assert ok


def test_criterion7_noise_ordering_counterexample():
    res = counterexample_demo(q=0.5, k=2)
    vals_ok = (
        abs(res["mtn_base"] - 7.0 / 3.0) <= 1e-8
        and abs(res["mtn_permuted"] - 2.25) <= 1e-8
        # the B-side swap |2,2,0> -> |2,0,1> moves q^2 weight down one
        # photon: mean photon number falls by 1/8, per-mode noise by 1/12
        and abs((res["mtn_permuted"] - res["mtn_base"]) + 1.0 / 12.0) <= 1e-8
        and abs(res["ef_base"] - 2.0 * math.log(2.0)) <= 1e-8
    )
    ok = (
        vals_ok
        and res["noise_drops"]
        and res["entanglement_preserved"]
        and res["exceeds_gaussian_pure_bound"]
        and res["gaussian_violation_margin"] > 1e-3
        and res["satisfies_split_bound"]
    )
    _line("criterion-7", ok,
          "permutation lowers M_TN 7/3 -> 2.25 while E_F stays at 2 ln 2, "
          f"beating the pure-Gaussian curve by {res['gaussian_violation_margin']:.4f} "
          "yet satisfying the uneven-split bound")
    assert ok


def test_criterion8_headless_runtime_budget():
    dt = time.perf_counter() - _T0
    ok = dt < 300.0
    _line("criterion-8", ok,
          f"acceptance module finished in {dt:.1f}s inside the 300s budget via "
          "a single pytest invocation")
    assert ok
