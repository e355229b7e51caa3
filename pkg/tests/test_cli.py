import json
import math
import os

import pytest

from bosonic_bounds import cli, make_vacuum, save_gaussian


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys):
    code, out, err = run_cli(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == cli.__version__


def test_measure_gaussian_vacuum(tmp_path, capsys):
    path = tmp_path / "vacuum.json"
    save_gaussian(make_vacuum(2), path)
    payload = run_json(["measure", "--gaussian", str(path)], capsys)
    assert payload["qcs2"] == pytest.approx(1.0, abs=1e-12)
    assert payload["ftot"] == payload["qcs2"]
    assert payload["log_negativity"] == 0.0
    assert payload["n_minus"] == 0
    assert payload["symplectic_spectrum"] == pytest.approx([1.0, 1.0], abs=1e-12)
    assert payload["unit"] == "nats"


def test_measure_fock_number_state(capsys):
    payload = run_json(["measure", "--fock", "N=3,0"], capsys)
    assert payload["mtn"] == pytest.approx(4.0, abs=1e-10)
    assert payload["qcs2"] == pytest.approx(payload["mtn"], abs=1e-10)


def test_beamsplitter_matches_binomial_entropy(capsys):
    payload = run_json(["beamsplitter", "--fock", "N=10,0"], capsys)
    assert payload["ef"] == pytest.approx(1.8759536052468004, abs=1e-9)
    assert payload["ratio"] == pytest.approx(payload["ef"] / payload["g_in"], rel=1e-12)


def test_beamsplitter_ebits_unit(capsys):
    payload = run_json(["beamsplitter", "--fock", "N=10,0", "--ebits"], capsys)
    assert payload["unit"] == "ebits"
    assert payload["ef"] == pytest.approx(1.8759536052468004 / math.log(2.0), abs=1e-9)
    # ratio is dimensionless so the unit change must not touch it
    assert payload["ratio"] == pytest.approx(
        1.8759536052468004 / (math.log(2.0) * payload["g_in"]), rel=1e-9
    )


def test_beamsplitter_rejects_wrong_mode_count(capsys):
    code, _, err = run_cli(["beamsplitter", "--fock", "N=1,0,0"], capsys)
    assert code == 2
    assert "error:" in err


def test_bound_check_tmsv_all_hold(tmp_path, capsys):
    from bosonic_bounds import make_tmsv

    path = tmp_path / "tmsv.json"
    save_gaussian(make_tmsv(0.8), path)
    payload = run_json(["bound-check", "--gaussian", str(path)], capsys)
    assert payload["all_hold"]
    names = [c["provenance"] for c in payload["checks"]]
    assert len(names) == len(set(names))
    refined = [c for c in payload["checks"] if "refinement" in c["provenance"]]
    assert refined and refined[0]["saturated"]


def test_bound_check_fock_keeps_both_routes(capsys):
    payload = run_json(["bound-check", "--fock", "N=2,2"], capsys)
    assert payload["all_hold"]
    names = [c["provenance"] for c in payload["checks"]]
    assert any(n.endswith("(even split)") for n in names)
    assert any(n.endswith("(uneven split)") for n in names)


def test_nastar_all_methods(capsys):
    payload = run_json(
        ["nastar", "--N", "100", "--nA", "1", "--nB", "3", "--method", "all"], capsys
    )
    sols = payload["solutions"]
    assert set(sols) == {"bisection", "leading", "refined"}
    assert sols["bisection"]["na_star"] == pytest.approx(94.42046037884808, abs=1e-8)
    assert sols["bisection"]["residual"] <= 1e-10
    assert abs(sols["refined"]["na_star"] - sols["bisection"]["na_star"]) < abs(
        sols["leading"]["na_star"] - sols["bisection"]["na_star"]
    )


def test_figure_writes_deterministic_csv(tmp_path, capsys):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    for d in (d1, d2):
        code, _, err = run_cli(
            ["figure", "--name", "split-accuracy", "--out", str(d)], capsys
        )
        assert code == 0, err
    name = "split_accuracy.csv"
    assert (d1 / name).read_bytes() == (d2 / name).read_bytes()
    header = (d1 / name).read_text().splitlines()[0]
    assert header.startswith("n_a,n_b,mu,nu")


def test_audit_ok(capsys):
    payload = run_json(
        ["audit", "--states", "40", "--modes", "2", "--seed", "5",
         "--fock-states", "8", "--classical-states", "8"],
        capsys,
    )
    assert payload["violations"] == []
    assert payload["checks"] > 0


def test_audit_violation_exit_code(capsys):
    code, _, err = run_cli(
        ["audit", "--states", "20", "--seed", "3", "--fock-states", "4",
         "--classical-states", "4", "--tau-check", "-0.1"],
        capsys,
    )
    assert code == 3
    detail = json.loads(err)
    assert detail["error"] == "bound violation"
    assert detail["seed"] == 3
    assert "check" in detail["instance"]


def test_audit_seed_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("BOSONIC_BOUNDS_SEED", "5")
    via_env = run_json(
        ["audit", "--states", "40", "--modes", "2", "--fock-states", "8",
         "--classical-states", "8"],
        capsys,
    )
    monkeypatch.delenv("BOSONIC_BOUNDS_SEED")
    via_flag = run_json(
        ["audit", "--states", "40", "--modes", "2", "--seed", "5",
         "--fock-states", "8", "--classical-states", "8"],
        capsys,
    )
    assert via_env["by_check"] == via_flag["by_check"]


def test_counterexample_command(capsys):
    payload = run_json(["counterexample"], capsys)
    assert payload["noise_drops"]
    assert payload["entanglement_preserved"]
    assert payload["exceeds_gaussian_pure_bound"]
    assert payload["satisfies_split_bound"]


def test_csv_format_single_row(capsys):
    import csv
    import io

    code, out, err = run_cli(
        ["measure", "--fock", "N=2,0", "--format", "csv"], capsys
    )
    assert code == 0, err
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 2
    header, values = rows
    assert len(header) == len(values)
    assert "mtn" in header
    assert float(values[header.index("mtn")]) == pytest.approx(3.0, abs=1e-10)


def test_output_file_option(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, err = run_cli(
        ["measure", "--fock", "N=2,0", "--output", str(target)], capsys
    )
    assert code == 0, err
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["mtn"] == pytest.approx(3.0, abs=1e-10)


def test_bad_inline_state_is_schema_error(capsys):
    code, _, err = run_cli(["measure", "--fock", "N=banana"], capsys)
    assert code == 2
    assert "error:" in err


def test_missing_file_is_reported(capsys):
    code, _, err = run_cli(["measure", "--gaussian", "/nonexistent/state.json"], capsys)
    assert code == 2
    assert "error:" in err


def test_malformed_json_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(["measure", "--gaussian", str(path)], capsys)
    assert code == 2


def test_bad_bipartition_is_reported(capsys):
    code, _, err = run_cli(
        ["measure", "--fock", "N=2,0", "--bipartition", "3:1"], capsys
    )
    assert code == 2
    assert "error:" in err


def test_measure_requires_some_state(capsys):
    code, _, err = run_cli(["measure"], capsys)
    assert code == 2
    assert "error:" in err
