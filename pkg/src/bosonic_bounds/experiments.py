"""Sweep drivers, randomized audits, and deterministic CSV emission.

Every sweep writes a CSV (17 significant digits, fixed column order listed
with each driver) plus a JSON manifest echoing the resolved configuration,
seed, tolerances, and package version.  Identical configuration and seed
produce byte-identical files; no timestamps are recorded.

CSV column orders
-----------------
beam_splitter_sweep.csv:
    family, param, mtn_in, g_in, ef, ratio, cutoff, tail_mass, asymptote_gap
bound_profile.csv:
    n_a, n_b, mu, nu, ef_per_na, ef_per_na_asymptotic, gaussian_per_na, residual
split_accuracy.csv:
    n_a, n_b, mu, nu, nu_star, nu_star_leading, nu_star_refined,
    relerr_leading, relerr_refined, residual
"""

from __future__ import annotations

import csv
import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import __version__ as _version
from .bounds import (
    g,
    gaussian_pure_bound,
    log_negativity_qcs_bound,
    log_negativity_qcs_refined,
    na_star_asymptotic,
    qcs_implication_report,
    solve_na_star,
    theorem_split_bound,
    theorem_symmetric_bound,
)
from .errors import AuditViolationError
from .fock import (
    FockPureState,
    fock_to_dict,
    apply_beam_splitter_fock,
    entanglement_entropy,
    make_counterexample_states,
    make_fock_number,
    make_fock_squeezed,
    make_fock_tmsv,
    mtn_pure,
    squeezed_cutoff,
    tmsv_cutoff,
)
from .gaussian import (
    gaussian_measures,
    gaussian_to_dict,
    log_negativity_gaussian,
    qcs2_gaussian,
    random_classical_state,
    random_gaussian_state,
)
from .symplectic import Bipartition
from .tolerances import TAU_CHECK, TAU_TRUNC

__all__ = [
    "SweepSpec",
    "AuditReport",
    "beam_splitter_sweep",
    "bound_profile_sweep",
    "split_accuracy_sweep",
    "random_audit",
    "counterexample_demo",
    "write_sweep",
    "load_nastar_envelope",
    "BS_FAMILIES",
]

_FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class SweepSpec:
    """Resolved configuration of one sweep, echoed into its manifest."""

    name: str
    params: dict
    seed: int | None = None
    tolerances: dict = field(
        default_factory=lambda: {"tau_check": TAU_CHECK, "tau_trunc": TAU_TRUNC}
    )

    def manifest(self, columns) -> dict:
        return {
            "version": _version,
            "sweep": self.name,
            "params": self.params,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "columns": list(columns),
        }


def _fmt(x) -> str:
    if isinstance(x, float):
        return _FLOAT_FMT % x
    return str(x)


def write_sweep(out_dir, name: str, columns, rows, spec: SweepSpec) -> tuple[str, str]:
    """Write rows to <out_dir>/<name>.csv plus <name>.manifest.json."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    man_path = os.path.join(out_dir, f"{name}.manifest.json")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
    with open(man_path, "w") as fh:
        json.dump(spec.manifest(columns), fh, indent=1, sort_keys=True)
        fh.write("\n")
    return csv_path, man_path


# ---------------------------------------------------------------------------
# beam splitter sweep

BS_FAMILIES = (
    "number-split",
    "twin-number",
    "antisqueezed-vacuum",
    "orthogonal-squeezed",
    "tmsv-direct",
)

_BS_COLUMNS = (
    "family",
    "param",
    "mtn_in",
    "g_in",
    "ef",
    "ratio",
    "cutoff",
    "tail_mass",
    "asymptote_gap",
)


def _bs_row(family: str, param: float, tau: float) -> dict:
    bp = Bipartition(1, 1)
    if family == "number-split":
        N = int(param)
        psi_in = make_fock_number((N, 0))
        psi_out = apply_beam_splitter_fock(psi_in, tau=tau)
        cutoff = psi_in.cutoffs[0]
        gap_ref = 0.5 * math.log(2.0 * math.pi * math.e * N) if N else 0.0
    elif family == "twin-number":
        N = int(param)
        psi_in = make_fock_number((N, N))
        psi_out = apply_beam_splitter_fock(psi_in, tau=tau)
        cutoff = psi_in.cutoffs[0]
        gap_ref = math.log(math.pi * N / 4.0) if N else 0.0
    elif family == "antisqueezed-vacuum":
        s = float(param)
        cutoff = squeezed_cutoff(2.0 * s, tau * 1e-2)
        mode1 = make_fock_squeezed(2.0 * s, 0.0, cutoff, tau)
        amps = np.zeros((cutoff, cutoff), dtype=complex)
        amps[:, 0] = mode1.amps
        psi_in = FockPureState(amps, mode1.tail_mass)
        psi_out = apply_beam_splitter_fock(psi_in, tau=tau)
        gap_ref = None
    elif family == "orthogonal-squeezed":
        s = float(param)
        cutoff = squeezed_cutoff(s, tau * 1e-2)
        m1 = make_fock_squeezed(s, 0.0, cutoff, tau)
        m2 = make_fock_squeezed(s, math.pi / 2.0, cutoff, tau)
        psi_in = FockPureState(
            np.tensordot(m1.amps, m2.amps, axes=0), m1.tail_mass + m2.tail_mass
        )
        psi_out = apply_beam_splitter_fock(psi_in, tau=tau)
        gap_ref = None
    elif family == "tmsv-direct":
        r = float(param)
        cutoff = tmsv_cutoff(r, tau)
        psi_in = psi_out = make_fock_tmsv(r, cutoff, tau)
        gap_ref = None
    else:
        raise ValueError(f"unknown family {family!r}")
    mtn_in = mtn_pure(psi_in, tau=10.0 * tau)
    g_in = g((mtn_in - 1.0) / 2.0)
    ef = entanglement_entropy(psi_out, bp, tau=10.0 * tau)
    ratio = ef / g_in if g_in > 0.0 else 1.0
    if ef > g_in + TAU_CHECK:
        raise AssertionError(
            f"sweep row violates the symmetric bound: family {family} param {param} "
            f"E_F {ef!r} > g_in {g_in!r}"
        )
    if family == "antisqueezed-vacuum":
        gap = abs(ef - g(math.sinh(float(param)) ** 2))
    elif family in ("orthogonal-squeezed", "tmsv-direct"):
        gap = abs(ratio - 1.0)
    else:
        gap = abs(ef - gap_ref)
    return {
        "family": family,
        "param": float(param),
        "mtn_in": mtn_in,
        "g_in": g_in,
        "ef": ef,
        "ratio": ratio,
        "cutoff": int(cutoff),
        "tail_mass": psi_out.tail_mass,
        "asymptote_gap": gap,
    }


def beam_splitter_sweep(
    families=None,
    number_grid=None,
    squeeze_grid=None,
    out_dir=None,
    tau: float = TAU_TRUNC,
    jobs: int = 1,
) -> list[dict]:
    """Entanglement generated by a balanced beam splitter, family by family.

    Number families sweep the photon count; squeezed families sweep the
    squeezing parameter.  Every row re-checks E_F <= g((M_TN - 1)/2).
    """
    families = tuple(families) if families else BS_FAMILIES
    for f in families:
        if f not in BS_FAMILIES:
            raise ValueError(f"unknown family {f!r}; choose from {BS_FAMILIES}")
    number_grid = list(number_grid) if number_grid else [1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40]
    squeeze_grid = (
        list(squeeze_grid) if squeeze_grid else [0.1, 0.25, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5]
    )
    tasks = []
    for family in families:
        grid = number_grid if family in ("number-split", "twin-number") else squeeze_grid
        tasks.extend((family, p) for p in grid)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda t: _bs_row(t[0], t[1], tau), tasks))
    else:
        rows = [_bs_row(f, p, tau) for f, p in tasks]
    if out_dir is not None:
        spec = SweepSpec(
            "beam_splitter_sweep",
            {
                "families": list(families),
                "number_grid": number_grid,
                "squeeze_grid": squeeze_grid,
                "tau": tau,
            },
        )
        write_sweep(out_dir, "beam_splitter_sweep", _BS_COLUMNS, rows, spec)
    return rows


# ---------------------------------------------------------------------------
# bound profile over the photon budget

_PROFILE_COLUMNS = (
    "n_a",
    "n_b",
    "mu",
    "nu",
    "ef_per_na",
    "ef_per_na_asymptotic",
    "gaussian_per_na",
    "residual",
)


def bound_profile_sweep(pairs=None, nu_grid=None, out_dir=None) -> list[dict]:
    """Entanglement bound per A-mode against photons per A-mode.

    ef_per_na is g(N_A*/n_A) from the bisection solve,
    ef_per_na_asymptotic uses the leading closed-form split, and
    gaussian_per_na = g(nu/2) is the pure-Gaussian version (equal to the
    exact column when n_A = n_B).
    """
    pairs = list(pairs) if pairs else [(3, 3), (3, 6), (3, 9), (3, 15)]
    nu_grid = (
        list(nu_grid) if nu_grid is not None else list(np.geomspace(1.0, 100.0, 25))
    )
    rows = []
    for n_a, n_b in pairs:
        for nu in nu_grid:
            N = nu * n_a
            sol = solve_na_star(N, n_a, n_b)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                asym = na_star_asymptotic(N, n_a, n_b, "leading")
            # The closed form can leave [0, N] at small nu; report NaN there.
            asym_col = (
                g(asym.na_star / n_a) if 0.0 < asym.na_star <= N else math.nan
            )
            rows.append(
                {
                    "n_a": n_a,
                    "n_b": n_b,
                    "mu": n_a / n_b,
                    "nu": float(nu),
                    "ef_per_na": g(sol.na_star / n_a),
                    "ef_per_na_asymptotic": asym_col,
                    "gaussian_per_na": g(nu / 2.0),
                    "residual": sol.residual,
                }
            )
    if out_dir is not None:
        spec = SweepSpec("bound_profile", {"pairs": pairs, "nu_grid": nu_grid})
        write_sweep(out_dir, "bound_profile", _PROFILE_COLUMNS, rows, spec)
    return rows


# ---------------------------------------------------------------------------
# accuracy of the closed-form splits

_ACCURACY_COLUMNS = (
    "n_a",
    "n_b",
    "mu",
    "nu",
    "nu_star",
    "nu_star_leading",
    "nu_star_refined",
    "relerr_leading",
    "relerr_refined",
    "residual",
)


def split_accuracy_sweep(pairs=None, nu_grid=None, out_dir=None) -> list[dict]:
    """Equal-entropy split: bisection against both closed-form approximations."""
    pairs = (
        list(pairs)
        if pairs
        else [(1, 1), (1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (3, 4), (3, 9)]
    )
    nu_grid = (
        list(nu_grid) if nu_grid is not None else list(np.geomspace(1.0, 1000.0, 25))
    )
    rows = []
    for n_a, n_b in pairs:
        for nu in nu_grid:
            N = nu * n_a
            sol = solve_na_star(N, n_a, n_b)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                lead = na_star_asymptotic(N, n_a, n_b, "leading")
                refined = na_star_asymptotic(N, n_a, n_b, "refined")
            star = sol.na_star / n_a
            rows.append(
                {
                    "n_a": n_a,
                    "n_b": n_b,
                    "mu": n_a / n_b,
                    "nu": float(nu),
                    "nu_star": star,
                    "nu_star_leading": lead.na_star / n_a,
                    "nu_star_refined": refined.na_star / n_a,
                    "relerr_leading": abs(lead.na_star - sol.na_star) / sol.na_star,
                    "relerr_refined": abs(refined.na_star - sol.na_star) / sol.na_star,
                    "residual": sol.residual,
                }
            )
    if out_dir is not None:
        spec = SweepSpec("split_accuracy", {"pairs": pairs, "nu_grid": nu_grid})
        write_sweep(out_dir, "split_accuracy", _ACCURACY_COLUMNS, rows, spec)
    return rows


def load_nastar_envelope() -> list[dict]:
    """Frozen accuracy grid for the closed-form splits, shipped with the package."""
    with resources.files("bosonic_bounds").joinpath("data/nastar_accuracy.json").open() as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# randomized audit

_AUDIT_CHUNKS = 16


@dataclass
class AuditReport:
    """Outcome of one randomized audit run.

    ``by_check`` maps each inequality name to its count, minimum margin,
    and the instance that produced that minimum (seed and generator kind,
    plus the serialized state for replay).
    """

    seed: int
    counts: dict
    checks: int = 0
    violations: list = field(default_factory=list)
    by_check: dict = field(default_factory=dict)

    def record(self, name: str, margin: float, holds: bool, instance: dict):
        self.checks += 1
        entry = self.by_check.setdefault(
            name, {"count": 0, "min_margin": math.inf, "tightest": None}
        )
        entry["count"] += 1
        if margin < entry["min_margin"]:
            entry["min_margin"] = margin
            entry["tightest"] = dict(instance)
        if not holds:
            self.violations.append({"check": name, "margin": margin, **instance})

    def merge(self, other: "AuditReport"):
        self.checks += other.checks
        self.violations.extend(other.violations)
        for name, count in other.counts.items():
            self.counts[name] = self.counts.get(name, 0) + count
        for name, entry in other.by_check.items():
            mine = self.by_check.setdefault(
                name, {"count": 0, "min_margin": math.inf, "tightest": None}
            )
            mine["count"] += entry["count"]
            if entry["min_margin"] < mine["min_margin"]:
                mine["min_margin"] = entry["min_margin"]
                mine["tightest"] = entry["tightest"]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "counts": self.counts,
            "checks": self.checks,
            "violations": self.violations,
            "by_check": {k: dict(v) for k, v in sorted(self.by_check.items())},
        }


def _audit_gaussian_chunk(rng, count, modes, tau_check, report):
    bp = Bipartition(max(modes // 2, 1), modes - max(modes // 2, 1))
    for _ in range(count):
        st = random_gaussian_state(modes, rng, squeeze_max=1.2)
        rep = gaussian_measures(st, bp)
        inst = {"kind": "gaussian", "modes": modes, "state": gaussian_to_dict(st)}
        if rep.n_minus >= 1:
            chk = log_negativity_qcs_bound(
                rep.log_negativity, rep.qcs2, modes, rep.n_minus, tau_check=tau_check
            )
            report.record(chk.provenance, chk.margin, chk.holds, inst)
        if modes == 2 and rep.n_minus >= 1 and rep.log_negativity > 0.0:
            det_v = float(np.linalg.det(st.cov))
            chk = log_negativity_qcs_refined(
                rep.qcs2, rep.log_negativity, det_v, tau_check=tau_check
            )
            report.record(chk.provenance, chk.margin, chk.holds, inst)
        for chk in qcs_implication_report(
            rep.qcs2, rep.log_negativity, modes, tau_check=tau_check
        ):
            report.record(chk.provenance, chk.margin, chk.holds, inst)


def _audit_classical_chunk(rng, count, modes, tau_check, report):
    bp = Bipartition(max(modes // 2, 1), modes - max(modes // 2, 1))
    for _ in range(count):
        st = random_classical_state(modes, rng)
        inst = {"kind": "classical", "modes": modes, "state": gaussian_to_dict(st)}
        qcs2 = qcs2_gaussian(st)
        margin = 1.0 - qcs2
        report.record("classical states have QCS^2 <= 1", margin, margin >= -tau_check, inst)
        en, _ = log_negativity_gaussian(st, bp)
        report.record(
            "classical states have zero log-negativity", -en, en <= tau_check, inst
        )


def _random_fock_pure(rng, modes, cutoff) -> FockPureState:
    z = rng.normal(size=(cutoff,) * modes) + 1j * rng.normal(size=(cutoff,) * modes)
    z /= np.linalg.norm(z)
    return FockPureState(z)


def _audit_fock_chunk(rng, count, tau_check, report):
    for idx in range(count):
        modes = 2 if idx % 2 == 0 else 3
        cutoff = 6 if modes == 2 else 4
        psi = _random_fock_pure(rng, modes, cutoff)
        mtn = mtn_pure(psi)
        inst = {"kind": "fock", "modes": modes, "cutoff": cutoff,
                "state": fock_to_dict(psi)}
        if modes == 2:
            ef = entanglement_entropy(psi, Bipartition(1, 1))
            bound = theorem_symmetric_bound(mtn, 2)
            name = "entanglement vs total noise (even split)"
        else:
            ef = entanglement_entropy(psi, Bipartition(1, 2))
            bound = theorem_split_bound(mtn, 1, 2)
            name = "entanglement vs total noise (uneven split)"
        margin = bound - ef
        report.record(name, margin, margin >= -tau_check, inst)


def random_audit(
    n_states: int = 1000,
    modes: int = 2,
    seed: int | None = None,
    fock_states: int = 200,
    classical_states: int = 200,
    tau_check: float = TAU_CHECK,
    jobs: int = 1,
) -> AuditReport:
    """Randomized no-violation audit of every bound in the package.

    Draws Gaussian states (mixed profile), classical states, and random pure
    Fock states, evaluates every applicable bound, and raises
    AuditViolationError carrying the seed and offending instance if any
    margin dips below -tau_check.  Results are deterministic in (seed,
    counts) and independent of ``jobs``: sampling is split over a fixed
    number of chunks with spawned seeds.
    """
    if seed is None:
        seed = 0
    report = AuditReport(seed=seed, counts={
        "gaussian": n_states,
        "classical": classical_states,
        "fock": fock_states,
    })
    groups = []
    for name, total in (("gaussian", n_states), ("classical", classical_states), ("fock", fock_states)):
        chunks = min(_AUDIT_CHUNKS, total) or 1
        sizes = [total // chunks + (1 if i < total % chunks else 0) for i in range(chunks)]
        groups.append((name, sizes))
    seeds = np.random.SeedSequence(seed).spawn(sum(len(s) for _, s in groups))
    tasks = []
    pos = 0
    for name, sizes in groups:
        for size in sizes:
            tasks.append((name, size, seeds[pos]))
            pos += 1

    def run_chunk(task):
        name, size, ss = task
        sub = AuditReport(seed=seed, counts={})
        rng = np.random.default_rng(ss)
        if name == "gaussian":
            _audit_gaussian_chunk(rng, size, modes, tau_check, sub)
        elif name == "classical":
            _audit_classical_chunk(rng, size, modes, tau_check, sub)
        else:
            _audit_fock_chunk(rng, size, tau_check, sub)
        return sub

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            subs = list(pool.map(run_chunk, tasks))
    else:
        subs = [run_chunk(t) for t in tasks]
    for sub in subs:
        report.merge(sub)
    if report.violations:
        raise AuditViolationError(
            f"{len(report.violations)} bound violation(s) found (seed {seed}); "
            f"first: {report.violations[0]}",
            seed=seed,
            instance=report.violations[0],
        )
    return report


# ---------------------------------------------------------------------------
# noise-vs-entanglement counterexample demo


def counterexample_demo(q: float = 0.5, k: int = 2) -> dict:
    """Three-mode demonstration that entanglement is not monotone in total noise.

    Returns the measured photon numbers, M_TN values, shared entanglement
    entropy, the pure-Gaussian bound the permuted state violates, and the
    uneven-split bound it still satisfies.
    """
    psi, psi_perm = make_counterexample_states(q, k)
    bp = Bipartition(1, 2)
    mtn_base = mtn_pure(psi)
    mtn_perm = mtn_pure(psi_perm)
    ef_base = entanglement_entropy(psi, bp)
    ef_perm = entanglement_entropy(psi_perm, bp)
    gauss = gaussian_pure_bound(mtn_perm, 1, 2)
    split = theorem_split_bound(mtn_perm, 1, 2)
    return {
        "q": q,
        "k": k,
        "mtn_base": mtn_base,
        "mtn_permuted": mtn_perm,
        "noise_drops": mtn_perm < mtn_base,
        "ef_base": ef_base,
        "ef_permuted": ef_perm,
        "entanglement_preserved": abs(ef_base - ef_perm) < 1e-9,
        "gaussian_pure_bound": gauss,
        "exceeds_gaussian_pure_bound": ef_perm > gauss,
        "gaussian_violation_margin": ef_perm - gauss,
        "split_bound": split,
        "split_bound_margin": split - ef_perm,
        "satisfies_split_bound": ef_perm <= split + TAU_CHECK,
    }
