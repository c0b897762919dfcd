import json

import pytest

import coquasi


def test_zoo_examples_validate():
    for name in coquasi.zoo_names("coquasi"):
        h = coquasi.example("coquasi", name)
        assert coquasi.validate(h, "coquasi")["pass"], name
    for name in coquasi.zoo_names("quasi"):
        a = coquasi.example("quasi", name)
        assert coquasi.validate(a, "quasi")["pass"], name


def test_z2_omega_preantipode():
    h = coquasi.example("coquasi", "Z2_omega")
    s = coquasi.solve_preantipode(h, "coquasi")
    assert s == {"dim": 2, "s": [["1", "0"], ["0", "-1"]]}
    assert coquasi.check_preantipode(h, s, "coquasi")["pass"]
    bad = {"dim": 2, "s": [["1", "0"], ["0", "1"]]}
    report = coquasi.check_preantipode(h, bad, "coquasi")
    assert not report["pass"]
    assert {"axiom": "preantipode_3", "index": [1]} in report["failures"]


def test_reconstruct_grading_diagram():
    out = coquasi.reconstruct(coquasi.example("diagram", "Z2_omega"))
    h = coquasi.example("coquasi", "Z2_omega")
    for key in ("coalgebra", "mult", "unit", "omega"):
        assert out[key] == h[key]
    assert out["preantipode"]["s"] == [["1", "0"], ["0", "-1"]]
    assert set(out["proj"]) == {"k0", "k1"}


def test_finite_dual_is_valid():
    a = coquasi.example("quasi", "fun_Z2_omega")
    h = coquasi.finite_dual(a)
    assert coquasi.validate(h, "coquasi")["pass"]
    s = h.pop("preantipode")
    assert coquasi.check_preantipode(h, s, "coquasi")["pass"]


def test_prime_field_input():
    h = coquasi.example("coquasi", "Z2_omega")
    report = coquasi.validate(h, "coquasi", field="fp:5")
    assert report["pass"]
    s = coquasi.solve_preantipode(h, "coquasi", field="fp:5")
    assert s["s"][1][1] == {"p": 5, "v": 4}


def test_schema_errors_raise():
    with pytest.raises(ValueError):
        coquasi.validate({"coalgebra": {"dim": 2}}, "coquasi")
    with pytest.raises(ValueError):
        coquasi.validate(coquasi.example("coquasi", "Z2_omega"), "coquasi", field="fp:4")


def test_cli_in_process(tmp_path):
    path = tmp_path / "h.json"
    code, out, _ = coquasi.run_cli("example", "group-coquasi", "--zoo", "Z2_omega", "-o", str(path))
    assert code == 0 and out == ""
    code, out, _ = coquasi.run_cli("validate", str(path), "--kind", "coquasi")
    assert code == 0
    assert json.loads(out)["pass"]
    code, _, err = coquasi.run_cli("validate", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
