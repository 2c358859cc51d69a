import json
import subprocess
import sys

import pytest

from dyckhike.cli import build_parser, main, resolve_config


def run(args, capsys, env=None, monkeypatch=None):
    if env and monkeypatch:
        for k, v in env.items():
            monkeypatch.setenv(k, v)
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_count_paths_plain(capsys):
    code, out, _ = run(["count-paths", "--k", "6", "--d1", "0", "--d2", "2", "--format", "plain"], capsys)
    assert code == 0 and out.strip() == "9"


def test_power_json(capsys):
    code, out, _ = run(["power", "--expr", "a[0]^3", "--vac", "|0>", "--k", "2", "--sign", "plus"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    assert doc["coefficients"]["0"]["rational"] == "6"
    assert doc["coefficients"]["2"]["expr"] == "sqrt(720)"
    assert doc["coefficients"]["2"]["radicand"] == "5"
    assert isinstance(doc["coefficients"]["2"]["rational"], str)


def test_output_is_deterministic(capsys):
    args = ["power", "--expr", "a[1]*a[2]", "--vac", "|0,0>", "--k", "9", "--sign", "minus"]
    _, first, _ = run(args, capsys)
    _, second, _ = run(args, capsys)
    assert first == second
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


def test_evolve_squeezing(capsys):
    args = ["evolve", "--expr", "a[1]*a[2]", "--vac", "|0,0>", "--K", "200", "--r", "1.0", "--levels", "0,33"]
    code, out, _ = run(args, capsys)
    amp = json.loads(out)["results"][0]["amplitudes"]["33"]["float"]
    assert code == 0 and amp == pytest.approx(0.0000799909, rel=1e-6)


def test_csv_output(capsys):
    code, out, _ = run(["power", "--expr", "a[0]^3", "--vac", "|0>", "--k", "3", "--format", "csv"], capsys)
    lines = out.strip().splitlines()
    assert lines[0] == "delta2,rational,radicand,float,expr"
    assert lines[1].startswith("1,126,6,")


@pytest.mark.parametrize(
    "args,code",
    [
        (["power", "--expr", "a[0]^0", "--vac", "|0>", "--k", "2"], 2),
        (["power", "--expr", "a[0]^3", "--vac", "|0,-1>", "--k", "2"], 2),
        (["power", "--expr", "a[0]^3", "--vac", "|0>", "--k", "-1"], 3),
        (["power", "--expr", "a[0]^3", "--vac", "|0>"], 3),
        (["evolve", "--expr", "a[0]^3", "--vac", "|0>", "--K", "4", "--precision", "10", "--r", "1"], 3),
        (["power", "--expr", "a[0]^3", "--vac", "|5>", "--k", "2"], 4),
        (["lambda-mu", "--expr", "a[1]^3*ad[0]*a[0] + a[3]^3*ad[2]*a[2]", "--vac", "|1,0,1,0>"], 4),
        (["oracle-check", "--expr", "a[0]^3", "--vac", "|0>", "--k", "4", "--max-total-quanta", "5"], 4),
    ],
)
def test_exit_codes_without_tracebacks(args, code, capsys):
    got, out, err = run(args, capsys)
    assert got == code
    assert "Traceback" not in err and err.startswith("dyckhike: ")
    assert out == ""


def test_env_precedence(capsys, monkeypatch):
    monkeypatch.setenv("DYCKHIKE_FORMAT", "plain")
    monkeypatch.setenv("DYCKHIKE_K", "3")
    code, out, _ = run(["power", "--expr", "a[0]^3", "--vac", "|0>"], capsys)
    assert out.splitlines()[0] == "delta2=1  sqrt(95256)"
    code, out, _ = run(["power", "--expr", "a[0]^3", "--vac", "|0>", "--k", "2"], capsys)
    assert out.splitlines()[0] == "delta2=0  6"
    code, out, _ = run(["power", "--expr", "a[0]^3", "--vac", "|0>", "--format", "json"], capsys)
    assert json.loads(out)["k"] == 3


def test_bad_environment_value(capsys, monkeypatch):
    monkeypatch.setenv("DYCKHIKE_K", "three")
    code, _, err = run(["power", "--expr", "a[0]^3", "--vac", "|0>"], capsys)
    assert code == 3 and "DYCKHIKE_K" in err


def test_global_flag_before_subcommand(capsys):
    code, out, _ = run(["--format", "plain", "count-paths", "--k", "8", "--d2", "0"], capsys)
    assert out.strip() == "14"


def test_enumerate_paths(capsys):
    code, out, _ = run(["enumerate-paths", "--k", "6", "--d2", "2"], capsys)
    doc = json.loads(out)
    assert doc["count"] == "9" and len(doc["words"]) == 9
    code, out, _ = run(["enumerate-paths", "--k", "6", "--d2", "2", "--limit", "2"], capsys)
    assert len(json.loads(out)["words"]) == 2


def test_lambda_mu(capsys):
    code, out, _ = run(["lambda-mu", "--expr", "ad[0]*a[2] + ad[1]*a[3]", "--vac", "|3,3,0,0>", "--p-max", "9"], capsys)
    doc = json.loads(out)
    assert [doc["products"][str(p)] for p in range(1, 8)] == ["6", "10", "12", "12", "10", "6", "0"]
    assert doc["polynomial"] == ["0", "7", "-1"]
    assert doc["terminates_at"] == 7


def test_vev_and_pade(capsys):
    code, out, _ = run(["vev", "--expr", "a[0]^3", "--vac", "|0>", "--K", "6"], capsys)
    assert json.loads(out)["taylor"] == ["1", "0", "-3", "0", "63/2", "0", "-6363/10"]
    code, out, _ = run(["pade", "--expr", "a[0]^3", "--vac", "|0>", "--L", "8", "--r", "0,0.05"], capsys)
    doc = json.loads(out)
    assert doc["order_condition_ok"] and doc["variable"] == "r^2"
    assert doc["points"][0] == [0.0, 1.0]
    assert doc["points"][1][1] == pytest.approx(0.99268760890076, abs=1e-6)


def test_plot_data(capsys):
    args = ["pade", "--expr", "a[0]^3", "--vac", "|0>", "--L", "6", "--plot-data", "--points", "5", "--format", "csv"]
    code, out, _ = run(args, capsys)
    lines = out.strip().splitlines()
    assert lines[0] == "r,pade" and len(lines) == 6
    args = ["vev", "--expr", "a[1]*a[2]", "--vac", "|0,0>", "--K", "40", "--plot-data", "--r-max", "0.5", "--points", "3"]
    code, out, _ = run(args, capsys)
    pts = json.loads(out)["points"]
    assert [p[0] for p in pts] == [0.0, 0.25, 0.5]


def test_oracle_check(capsys):
    code, out, _ = run(["oracle-check", "--expr", "a[0]*ad[1]", "--vac", "|0,5>", "--k", "6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["all_equal"] and doc["dyck_words_only"]
    assert len(doc["checks"]) == 14


def test_resolve_config_dataclass():
    ns = build_parser().parse_args(["power", "--expr", "a[0]^3", "--vac", "|0>", "--k", "4"])
    cfg = resolve_config(ns, env={"DYCKHIKE_SIGN": "minus", "DYCKHIKE_PRECISION": "80"})
    assert (cfg.k, cfg.sign, cfg.precision, cfg.fmt) == (4, "minus", 80, "json")


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "dyckhike.cli", "count-paths", "--k", "8", "--d1", "8", "--d2", "8", "--format", "plain"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "70"
