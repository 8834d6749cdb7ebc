import json
import subprocess
import sys

import pytest

from hodgeball.cli import main
from hodgeball.formalvhs import HorizontalData, ball_operators, cy_operators

CUBIC_SURFACE = "x0^3+x1^3+x2^3+x3^3"
THREEFOLD_COVER = "x0^3+x1^3+x2^3+x3^3+x4^3+x5^3"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--report", "json")
    return code, json.loads(out)


def test_jacobian_table(capsys):
    code, out, _ = run(capsys, "jacobian", "--poly", CUBIC_SURFACE, "--dim", "2")
    assert code == 0
    row = next(line for line in out.splitlines() if line.startswith("h^{1,1}_pr"))
    assert row.split()[2] == "6"


def test_jacobian_json_stable(capsys):
    args = ("jacobian", "--poly", CUBIC_SURFACE, "--report", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["hodge_numbers"] == [0, 6, 0]
    assert list(doc) == sorted(doc)


def test_balltype_cover(capsys):
    code, doc = run_json(capsys, "balltype", "--poly", THREEFOLD_COVER, "--tangent-degree", "3", "--base-vars", "5")
    assert code == 0
    assert doc["star1"] and doc["star2"] and doc["star1_rank"] == 10


def test_balltype_k3_fails(capsys):
    code, doc = run_json(capsys, "balltype", "--poly", "x0^4+x1^4+x2^4+x3^4")
    assert code == 2
    assert "(x0*x1*x2*x3)*(x0*x1*x2*x3)" in doc["witnesses"]


def test_cover(capsys):
    code, doc = run_json(capsys, "cover", "--poly", CUBIC_SURFACE)
    assert code == 0 and doc["hodge_numbers"] == [0, 5, 5, 0]
    assert run(capsys, "cover", "--poly", CUBIC_SURFACE, "--cover-degree", "2")[0] == 1


def test_parse_error_reports_column(capsys):
    code, _, err = run(capsys, "jacobian", "--poly", "x0^3 + x1^3 + + x2^3")
    assert code == 1
    assert "line 1, column 15" in err


def test_singular_input(capsys):
    code, _, err = run(capsys, "jacobian", "--poly", "x0^2*x1 + x2^3")
    assert code == 1 and "zero-dimensional" in err


def test_dim_mismatch(capsys):
    assert run(capsys, "jacobian", "--poly", CUBIC_SURFACE, "--dim", "3")[0] == 1
    assert run(capsys, "jacobian", "--poly", CUBIC_SURFACE, "--degree", "4")[0] == 1


def test_lu_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"h": [1, 1], "matrix": [[0, 1], [1, 0]]}))
    code, doc = run_json(capsys, "lu", "--matrix", str(bad))
    assert code == 2 and doc == {"h": [1, 1], "member": False, "witness": 0}
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"h": [1, 1], "matrix": [["1", "1"], ["1", "2"]]}))
    code, doc = run_json(capsys, "lu", "--matrix", str(good))
    assert code == 0 and doc["L"] == [["1", "0"], ["1", "1"]]


def test_lu_broken_json(tmp_path, capsys):
    f = tmp_path / "broken.json"
    f.write_text('{"h": [1, 1],\n "matrix": [[1, 1] [1, 2]]}')
    code, _, err = run(capsys, "lu", "--matrix", str(f))
    assert code == 1 and "line 2, column 20" in err


def test_lu_random(capsys):
    code, doc = run_json(capsys, "lu", "--random", "10", "--h", "1,2,2,1", "--seed", "4")
    assert code == 0 and doc["ok"] and doc["roundtrip"] == 10


def write_data(tmp_path, name, ops, h):
    f = tmp_path / name
    f.write_text(json.dumps(HorizontalData(ops, h).to_dict()))
    return str(f)


def test_orbit(tmp_path, capsys):
    cfg = write_data(tmp_path, "cy.json", cy_operators(2, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]), [1, 2, 2, 1])
    code, doc = run_json(capsys, "orbit", "--config", cfg, "--order", "4")
    assert code == 0
    assert doc["transversality"]["holds"] and doc["order_bounds"]["holds"]
    assert doc["ball_type"]["star2"] is False
    assert doc["section_expansion"]["second_order_matches"] is True


def test_orbit_series_file(tmp_path, capsys):
    f = tmp_path / "series.json"
    f.write_text(json.dumps({"vars": 1, "order": 2, "h": [1, 1, 1],
                             "coeffs": {"0": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "1": [[0, 0, 0], [0, 0, 0], [1, 0, 0]]}}))
    code, doc = run_json(capsys, "orbit", "--series", str(f))
    assert code == 2 and doc["order_bounds"]["block"] == [2, 0]


def test_orbit_invalid_data(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"h": [1, 1, 1], "operators": [[[0, 0, 0], [1, 0, 0], [0, 0, 0]]]}))
    code, doc = run_json(capsys, "orbit", "--config", str(f))
    assert code == 2 and "isometry" in doc["error"]


def test_refine(tmp_path, capsys):
    cfg = write_data(tmp_path, "ball.json", ball_operators([1, 4, 2, 4, 1]), [1, 4, 2, 4, 1])
    code, doc = run_json(capsys, "refine", "--config", cfg, "--point", "1/2,1/3,0,0")
    assert code == 0 and doc["in_ball"] and doc["hr_value"] == "23/36" and doc["jacobian_rank"] == 4
    code, doc = run_json(capsys, "refine", "--config", cfg, "--point", "1,1/3*i,0,0")
    assert code == 2 and not doc["in_ball"]
    assert run(capsys, "refine", "--config", cfg, "--point", "1,2")[0] == 1
    code, doc = run_json(capsys, "refine", "--config", cfg, "--sample", "5", "--seed", "1")
    assert code == 0 and len(doc["points"]) == 5


def test_dm(capsys):
    code, doc = run_json(capsys, "dm", "--m", "12", "--dim", "1", "--mu", "1/6")
    assert code == 0 and doc["hodge_numbers"] == [1, 9] and doc["total"] == 10
    code, doc = run_json(capsys, "dm", "--sweep", "8")
    assert code == 0 and doc["ok"]


def test_dm_config(tmp_path, capsys):
    f = tmp_path / "arr.json"
    f.write_text(json.dumps({"m": 4, "n": 1, "mu": ["1/2"] * 4, "coeffs": [[1, 0], [0, 1], [1, 1], [1, 2]]}))
    code, doc = run_json(capsys, "dm", "--config", str(f))
    assert code == 0 and doc["hodge_numbers"] == [1, 1]


def test_eigen_dims(capsys):
    code, doc = run_json(capsys, "eigen-dims", "--poly", "x0^3+x1^3+x2^3+x3^3+x4^3",
                         "--weights", "0,0,0,0,1", "--modulus", "3", "--index", "1", "--tangent-dim", "4")
    assert code == 0
    assert doc["hodge_numbers"] == [0, 1, 4, 0]
    assert doc["ball_conditions"]["ball"] is True


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as err:
        main(["jacobian", "--bogus"])
    assert err.value.code == 2  # argparse usage error


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hodgeball", "jacobian", "--poly", CUBIC_SURFACE, "--report", "json"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and json.loads(out.stdout)["hodge_numbers"] == [0, 6, 0]
