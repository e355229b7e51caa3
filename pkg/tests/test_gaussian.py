import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bosonic_bounds import (
    Bipartition,
    GaussianState,
    SchemaError,
    UnphysicalStateError,
    apply_beam_splitter,
    gaussian_from_dict,
    gaussian_measures,
    gaussian_to_dict,
    load_gaussian,
    log_negativity_gaussian,
    make_squeezed,
    make_thermal,
    make_tmsv,
    make_vacuum,
    purity,
    qcs2_gaussian,
    qcs2_gaussian_char_oracle,
    random_classical_state,
    random_gaussian_state,
    save_gaussian,
    tensor,
)


def test_vacuum_covariance_is_identity():
    st = make_vacuum(3)
    assert_allclose(st.cov, np.eye(6))
    assert_allclose(st.mean, np.zeros(6))


def test_thermal_accepts_scalar_and_sequence():
    assert_allclose(make_thermal(0.5).cov, 2.0 * np.eye(2))
    st = make_thermal([0.0, 0.5])
    assert_allclose(st.cov, np.diag([1.0, 1.0, 2.0, 2.0]))


def test_squeezed_covariance_axis_convention():
    s = 0.4
    st = make_squeezed(s)
    assert_allclose(st.cov, np.diag([np.exp(-2 * s), np.exp(2 * s)]), rtol=1e-14)
    rot = make_squeezed(s, np.pi / 2)
    assert_allclose(rot.cov, np.diag([np.exp(2 * s), np.exp(-2 * s)]), rtol=1e-13, atol=1e-15)


def test_squeezed_intermediate_angle_rotates_covariance():
    s, phi = 0.3, 0.7
    c, d = np.cos(phi), np.sin(phi)
    r = np.array([[c, -d], [d, c]])
    expected = r @ np.diag([np.exp(-2 * s), np.exp(2 * s)]) @ r.T
    assert_allclose(make_squeezed(s, phi).cov, expected, rtol=1e-13)


def test_tmsv_is_pure_and_entangled():
    st = make_tmsv(0.8)
    assert purity(st) == pytest.approx(1.0, abs=1e-12)
    en, n_minus = log_negativity_gaussian(st, Bipartition(1, 1))
    assert en == pytest.approx(1.6, abs=1e-10)
    assert n_minus == 1


def test_tensor_stacks_blocks():
    st = tensor(make_thermal(0.5), make_vacuum(1))
    assert st.n == 2
    assert_allclose(st.cov, np.diag([2.0, 2.0, 1.0, 1.0]))


def test_purity_thermal():
    assert purity(make_thermal(1.0)) == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_beam_splitter_on_orthogonal_squeezed_pair_gives_tmsv():
    s = 0.55
    st = tensor(make_squeezed(s, 0.0), make_squeezed(s, np.pi / 2))
    out = apply_beam_splitter(st)
    assert_allclose(out.cov, make_tmsv(s).cov, rtol=1e-12, atol=1e-13)


def test_qcs2_closed_forms():
    assert qcs2_gaussian(make_vacuum(2)) == pytest.approx(1.0, abs=1e-14)
    assert qcs2_gaussian(make_thermal(1.0)) == pytest.approx(1.0 / 3.0, rel=1e-13)
    s = 0.7
    assert qcs2_gaussian(make_squeezed(s)) == pytest.approx(np.cosh(2 * s), rel=1e-13)
    r = 0.9
    assert qcs2_gaussian(make_tmsv(r)) == pytest.approx(np.cosh(2 * r), rel=1e-13)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("n", [1, 2, 4])
def test_qcs2_characteristic_oracle_matches_main_formula(n, seed):
    rng = np.random.default_rng(seed)
    st = random_gaussian_state(n, rng)
    assert qcs2_gaussian(st) == pytest.approx(
        qcs2_gaussian_char_oracle(st), rel=1e-10, abs=1e-12
    )


def test_gaussian_measures_report_fields():
    rep = gaussian_measures(make_tmsv(0.5), Bipartition(1, 1))
    d = rep.to_dict()
    assert d["n_minus"] == 1
    assert d["log_negativity"] == pytest.approx(1.0, abs=1e-10)
    assert_allclose(d["symplectic_spectrum"], [1.0, 1.0], atol=1e-10)
    assert d["qcs2"] == pytest.approx(np.cosh(1.0), rel=1e-12)


def test_gaussian_measures_rejects_unphysical():
    bad = GaussianState(np.zeros(2), 0.5 * np.eye(2))
    with pytest.raises(UnphysicalStateError):
        gaussian_measures(bad)


def test_random_gaussian_state_is_physical_and_seedable():
    a = random_gaussian_state(3, 11)
    b = random_gaussian_state(3, 11)
    assert_allclose(a.cov, b.cov)
    assert gaussian_measures(a).qcs2 > 0


def test_random_gaussian_state_pure_profile():
    st = random_gaussian_state(2, 5, purity_profile="pure")
    assert purity(st) == pytest.approx(1.0, abs=1e-9)


def test_random_classical_state_is_classical():
    for seed in range(10):
        st = random_classical_state(2, seed)
        evs = np.linalg.eigvalsh(st.cov - np.eye(4))
        assert evs.min() >= -1e-10
        assert qcs2_gaussian(st) <= 1.0 + 1e-12
        en, _ = log_negativity_gaussian(st, Bipartition(1, 1))
        assert en == 0.0


def test_serialization_round_trip(tmp_path):
    st = random_gaussian_state(2, 3)
    path = tmp_path / "state.json"
    save_gaussian(st, path)
    back = load_gaussian(path)
    assert_allclose(back.cov, st.cov)
    assert_allclose(back.mean, st.mean)


def test_from_dict_names_offending_field():
    d = gaussian_to_dict(make_vacuum(1))
    del d["cov"]
    with pytest.raises(SchemaError, match="cov"):
        gaussian_from_dict(d)
    d = gaussian_to_dict(make_vacuum(1))
    d["mean"] = [[0.0]]
    with pytest.raises(SchemaError, match="mean"):
        gaussian_from_dict(d)


def test_load_gaussian_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises((SchemaError, json.JSONDecodeError)):
        load_gaussian(path)


def test_state_arrays_are_frozen():
    st = make_vacuum(1)
    with pytest.raises(ValueError):
        st.cov[0, 0] = 5.0
