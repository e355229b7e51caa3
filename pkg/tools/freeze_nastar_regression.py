"""Regenerate src/bosonic_bounds/data/nastar_accuracy.json.

Freezes the relative error of both closed-form equal-entropy splits against
the bisection solver on a fixed (mode pair, photons-per-A-mode) grid.  The
test suite asserts that current errors stay within this envelope and that
they decrease along nu for every pair, so the grid deliberately uses mode
ratios where both variants are monotone.

Run from the repository root:

    python tools/freeze_nastar_regression.py
"""

import json
import pathlib
import warnings

from bosonic_bounds.bounds import na_star_asymptotic, solve_na_star

PAIRS = [(1, 2), (1, 3), (1, 5)]
NU_GRID = [10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0]

OUT = (
    pathlib.Path(__file__).resolve().parents[1]
    / "src"
    / "bosonic_bounds"
    / "data"
    / "nastar_accuracy.json"
)


def main() -> None:
    rows = []
    for n_a, n_b in PAIRS:
        for nu in NU_GRID:
            N = nu * n_a
            sol = solve_na_star(N, n_a, n_b)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                lead = na_star_asymptotic(N, n_a, n_b, "leading")
                refined = na_star_asymptotic(N, n_a, n_b, "refined")
            rows.append(
                {
                    "n_a": n_a,
                    "n_b": n_b,
                    "nu": nu,
                    "na_star": sol.na_star,
                    "relerr_leading": abs(lead.na_star - sol.na_star) / sol.na_star,
                    "relerr_refined": abs(refined.na_star - sol.na_star) / sol.na_star,
                }
            )
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w") as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
