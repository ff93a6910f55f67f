import csv
import io
import json
from fractions import Fraction as F

import pytest

from lorentz_poly.cli import ConfigError, main, parse_factors, parse_family, parse_n_range
from lorentz_poly.scalar_poly import from_factors

from conftest import X


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- argument parsing ----------------------------------------------------------


def test_parse_n_range():
    assert parse_n_range("2..5") == [2, 3, 4, 5]
    assert parse_n_range("1,3") == [1, 3]
    assert parse_n_range("7") == [7]
    for bad in ("5..2", "a", ""):
        with pytest.raises(ConfigError):
            parse_n_range(bad)


def test_parse_factors_and_family():
    f = parse_factors("lead=2;real=-2,3/2^2;pairs=1/2:1")
    assert f == from_factors([(-2, 1), (F(3, 2), 2)], [((F(1, 2), 1), 1)], 2)
    assert f.factors is not None
    assert parse_family("n=1,a=0,eps=1/4") == (1, 0, F(1, 4))
    assert parse_family("n=2,eps=1/2") == (2, 0, F(1, 2))
    for bad in ("eps=1/4", "n=1,a=1,eps=1/2", "n=1,eps=0"):
        with pytest.raises(ConfigError):
            parse_family(bad)


# --- degree --------------------------------------------------------------------


def test_degree_examples(capsys):
    assert run(capsys, "degree", "--coeffs", "1,0,1") == (0, "finite 2\n", "")
    assert run(capsys, "degree", "--coeffs", "0,1") == (0, "infinite\n", "")
    code, out, _ = run(capsys, "degree", "--family", "n=1,a=0,eps=1/4")
    assert code == 0 and out == "finite 17\nnormalized 1.0625\n"


def test_degree_json_and_coeffs(capsys):
    code, out, _ = run(capsys, "degree", "--coeffs", "1,0,1", "--format", "json", "--show-coeffs")
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == "finite" and doc["d"] == 2
    assert doc["coeffs"] == ["1/2", "0/1", "1/2"]
    assert doc["poly"]["coeffs"] == ["1/1", "0/1", "1/1"]
    code, out, _ = run(capsys, "degree", "--coeffs=-1,0,-1", "--show-coeffs")
    assert out == "finite 2\ncoeffs (of -f) 1/2,0/1,1/2\n"


def test_degree_interval_and_cap(capsys):
    code, out, _ = run(capsys, "degree", "--coeffs", "0,1", "--interval", "1,2")
    assert out == "finite 1\n"
    code, out, _ = run(capsys, "degree", "--coeffs", "1/100,0,1", "--cap", "10")
    assert code == 0 and out == "unknown (cap 10 reached)\n"


@pytest.mark.parametrize("argv", [
    ["degree", "--coeffs", "1,x"],
    ["degree"],
    ["degree", "--coeffs", "1", "--family", "n=1,a=0,eps=1"],
    ["degree", "--coeffs", "0"],
    ["degree", "--factors", "lead=1;real=a"],
    ["verify", "thm9"],
    ["verify"],
    ["verify", "thm2.4", "--n", "9..2"],
    ["verify", "thm2.4", "--trials", "0"],
    ["verify", "thm2.4", "--negative-control", "monotone-only"],
    ["verify", "thm2.1", "--q", "-1"],
    ["search", "--class", "nope", "--n", "3"],
    ["growth", "--a", "1"],
])
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "thm2.4", "--format", "xml"])
    assert exc.value.code == 2


# --- verify --------------------------------------------------------------------


def test_verify_thm24_json(capsys):
    code, out, _ = run(capsys, "verify", "thm2.4", "--n", "2..8", "--trials", "100", "--seed", "42",
                       "--format", "json", "--jobs", "1")
    assert code == 0
    doc = json.loads(out)
    (rep,) = doc["reports"]
    assert doc["seed"] == 42
    assert rep["theorem"] == "thm2.4" and rep["failures"] == 0 and rep["trials"] == 100
    assert rep["n_values"] == list(range(2, 9))
    assert "runtime_seconds" not in rep
    top = rep["max_ratio"]
    assert set(top["ratio"]) == {"value", "mode", "error_bound"}
    assert top["witness"]["theorem"] == "thm2.4"


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--trials", "20", "--n", "1..4", "--jobs", "1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) >= 9
    assert all("fail=0" in line for line in lines)


def test_verify_csv_schema(capsys):
    code, out, _ = run(capsys, "verify", "erdos", "--trials", "5", "--n", "2", "--format", "csv", "--jobs", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5
    assert list(rows[0]) == ["theorem", "n", "trial", "ratio", "bound", "slack", "holds", "equality_within",
                             "witness_id"]
    assert {r["holds"] for r in rows} <= {"true", "false", "indeterminate"}
    assert rows[3]["witness_id"] == "erdos-3"


def test_verify_records_and_timing(capsys):
    code, out, _ = run(capsys, "verify", "thm2.1", "--trials", "6", "--n", "2", "--q", "1", "--p", "inf",
                       "--format", "json", "--records", "--timing", "--jobs", "1")
    rep = json.loads(out)["reports"][0]
    assert len(rep["records"]) == 6 and "runtime_seconds" in rep
    assert all(r["params"]["q"] == "1/1" and r["params"]["p"] == "inf" for r in rep["records"])


def test_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "thm2.5", "--negative-control", "monotone-only", "--trials", "200",
                       "--n", "3..6", "--jobs", "1")
    assert code == 0
    assert "violation found in the weakened class, as expected" in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "lem3.4", "--trials", "4", "--n", "2", "--format", "json",
                       "--output", str(path), "--jobs", "1")
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["reports"][0]["theorem"] == "lem3.4"


def test_seed_env_var(monkeypatch, capsys):
    monkeypatch.setenv("LORENTZ_POLY_SEED", "9")
    _, out, _ = run(capsys, "verify", "thm2.3", "--trials", "3", "--n", "2", "--format", "json", "--jobs", "1")
    assert json.loads(out)["seed"] == 9
    monkeypatch.setenv("LORENTZ_POLY_SEED", "nine")
    code, _, err = run(capsys, "verify", "thm2.3", "--trials", "3", "--n", "2")
    assert code == 2 and "LORENTZ_POLY_SEED" in err


@pytest.mark.parametrize("theorem", ["thm2.1", "thm2.2", "thm2.4", "lem3.3", "erdos", "bernstein-monotone"])
def test_witness_round_trip(tmp_path, capsys, theorem):
    _, out, _ = run(capsys, "verify", theorem, "--trials", "3", "--n", "3", "--format", "json", "--seed", "4",
                    "--jobs", "1")
    rec = json.loads(out)["reports"][0]["max_ratio"]
    path = tmp_path / "w.json"
    path.write_text(json.dumps(rec["witness"]))
    code, out, _ = run(capsys, "verify", "--witness", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "holds"
    assert doc["ratio"]["value"] == rec["ratio"]["value"]


def test_witness_rejects_mismatched_factors(tmp_path, capsys):
    w = {"coeffs": ["1/1", "2/1", "1/1"], "factors": {"leading": "1/1", "real_roots": [["1/1", 2]],
                                                      "complex_pairs": []},
         "factors_of": "f", "theorem": "thm2.2", "n": 2, "params": {"q": "1/1", "p": "inf"}}
    path = tmp_path / "w.json"
    path.write_text(json.dumps(w))
    code, _, err = run(capsys, "verify", "--witness", str(path))
    assert code == 2 and "factor" in err
    path.write_text("{")
    assert run(capsys, "verify", "--witness", str(path))[0] == 2


# --- experiments ---------------------------------------------------------------


def test_growth_csv(capsys):
    code, out, _ = run(capsys, "growth", "--n", "1", "--a", "0", "--eps", "1/2,1/4,1/8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert [r["d"] for r in rows] == ["5", "17", "65"]
    assert all(r["status"] == "finite" for r in rows)


def test_growth_json(capsys):
    _, out, _ = run(capsys, "growth", "--n", "1", "--eps", "1/2,1/4,1/8", "--format", "json")
    doc = json.loads(out)
    assert doc["within_factor_4"] is True and len(doc["rows"]) == 3


def test_profile_csv(capsys):
    code, out, err = run(capsys, "profile", "--class", "real-zeros-outside", "--n", "8", "--trials", "30")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 41
    assert list(rows[0]) == ["x", "max_ratio", "envelope", "c_emp"]
    assert "c_emp_max=" in err


def test_search_text_and_json(capsys):
    code, out, _ = run(capsys, "search", "--class", "deriv-disk", "--n", "3", "--iters", "300", "--seed", "7")
    best = float(out.split("best_ratio=")[1].split()[0])
    assert code == 0 and best <= 3
    code, out, _ = run(capsys, "search", "--class", "deriv-disk", "--n", "3", "--iters", "50",
                       "--strategy", "coordinate-descent", "--start=-3,3,3,1", "--format", "json")
    doc = json.loads(out)
    assert doc["best_ratio"] == "3" and doc["gap"] == "0"
    assert doc["best_poly"]["coeffs"] == ["-3/1", "3/1", "3/1", "1/1"]
