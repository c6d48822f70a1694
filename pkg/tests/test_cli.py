import json

import pytest

from octo2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--output", "json")
    return code, json.loads(out)


def test_algebra_build(capsys):
    code, rep = run_json(capsys, "algebra", "build")
    assert code == 0
    assert rep["verification"]["all_pass"]
    assert len(rep["result"]["structure_table"]) == 64
    assert rep["result"]["gram_rank"] == 8
    assert rep["result"]["totally_singular_division"] == "no"
    assert "e*e = (1)*e" in rep["result"]["structure_table"][0]


def test_algebra_build_text_mode(capsys):
    code, out = run(capsys, "algebra", "build", "--dim", "4")
    assert code == 0
    assert "all-pass" in out


def test_form_classify(capsys):
    code, rep = run_json(capsys, "form", "classify",
                         "--field", "ratfunc(gf(2); x1, x2)",
                         "--beta", "x1", "--gamma", "x2")
    assert code == 0
    assert rep["result"]["classification"] == "Division"
    assert rep["result"]["k2_extension_degree"] == 4


def test_involution_make_and_files(capsys, tmp_path):
    t_file = str(tmp_path / "t.json")
    code, rep = run_json(capsys, "involution", "make", "--type", "I",
                         "--r", "v", "--out", t_file)
    assert code == 0
    assert rep["result"]["fixed_dimension"] == 6
    assert rep["result"]["intrinsic_type"] == "I"
    with open(t_file) as fh:
        data = json.load(fh)
    assert data["type"] == "TypeI"
    assert len(data["matrix"]) == 8

    s_file = str(tmp_path / "s.json")
    code, rep = run_json(capsys, "involution", "make", "--type", "II",
                         "--b", "e", "--out", s_file)
    assert code == 0
    assert rep["result"]["fixed_dimension"] == 4
    assert rep["result"]["intrinsic_type"] == "II"

    # mixed pair: not conjugate, with a stated invariant
    code, rep = run_json(capsys, "involution", "conjugate", t_file, s_file)
    assert code == 0
    assert rep["result"]["kind"] == "not_conjugate"
    assert "dimensions differ" in rep["result"]["reason"]

    # two distinct anisotropic type II parameters: conjugate
    s2_file = str(tmp_path / "s2.json")
    code, _ = run_json(capsys, "involution", "make", "--type", "II",
                       "--b", "e + v + w", "--out", s2_file)
    assert code == 0
    code, rep = run_json(capsys, "involution", "conjugate", s_file, s2_file)
    assert code == 0
    assert rep["result"]["kind"] == "conjugate"
    checked = rep["result"]["identity_checked"]
    assert checked["g_t_ginv_equals_s"] and checked["g_is_automorphism"]

    # fixed point groups from the same files
    code, rep = run_json(capsys, "involution", "fixgroup", t_file)
    assert code == 0
    assert rep["result"]["order"] == 12
    assert rep["result"]["expected_order"] == 12
    code, rep = run_json(capsys, "involution", "fixgroup", s_file)
    assert code == 0
    assert rep["result"]["order"] == 48
    assert rep["result"]["components"] == {"aut_B": 24, "bhat": 8}


def test_involution_make_rejects_bad_r(capsys):
    code, out = run(capsys, "involution", "make", "--type", "I",
                    "--r", "e", "--output", "json")
    assert code == 2
    err = json.loads(out)
    assert err["error"] == "BadR"


def test_oracle_sweep(capsys):
    code, rep = run_json(capsys, "oracle", "sweep",
                         "--property", "composition")
    assert code == 0
    assert rep["result"]["sweep"]["violations"] == 0


def test_error_exit_bad_field(capsys):
    code, out = run(capsys, "algebra", "build", "--field", "gf(3)",
                    "--output", "json")
    assert code == 2
    err = json.loads(out)
    assert "error" in err and err["command"] == "algebra"


def test_corrupt_involution_file_rejected(capsys, tmp_path):
    t_file = str(tmp_path / "t.json")
    code, _ = run_json(capsys, "involution", "make", "--type", "II",
                       "--b", "e", "--out", t_file)
    assert code == 0
    with open(t_file) as fh:
        data = json.load(fh)
    # flip one matrix entry: no longer an involution/automorphism
    data["matrix"][2][5] = "1" if data["matrix"][2][5] == "0" else "0"
    with open(t_file, "w") as fh:
        json.dump(data, fh)
    code, out = run(capsys, "involution", "fixgroup", t_file,
                    "--output", "json")
    assert code == 2
