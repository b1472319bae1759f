"""Command-line interface: exit codes, output contracts, determinism."""

import json
import socket

import pytest
from click.testing import CliRunner

from wagefloor import datasets
from wagefloor import simulator as sim
from wagefloor.cli import main
from wagefloor.service import parse_bind

US = str(datasets.us_annual_path())
HUNGARY = str(datasets.hungary_annual_path())


@pytest.fixture()
def runner():
    return CliRunner()


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_bundled_fixture(runner):
    result = runner.invoke(main, ["validate", "--input", US])
    assert result.exit_code == 0


def test_validate_duplicate_year(runner, tmp_path):
    p = tmp_path / "dup.csv"
    header = ("year,min_wage_hourly,mean_wage_hourly,median_wage_hourly,"
              "nonsupervisory_wage_hourly,gdp_per_capita,deflator,gini,union_rate")
    p.write_text(header + "\n2001,5.15,15.0,,,37101,,,\n2001,5.15,15.0,,,37101,,,\n")
    result = runner.invoke(main, ["validate", "--input", str(p)])
    assert result.exit_code == 2
    assert "line 3" in result.output and "duplicate" in result.output


def test_validate_negative_wage(runner, tmp_path):
    p = tmp_path / "neg.csv"
    header = ("year,min_wage_hourly,mean_wage_hourly,median_wage_hourly,"
              "nonsupervisory_wage_hourly,gdp_per_capita,deflator,gini,union_rate")
    p.write_text(header + "\n2001,-5.15,15.0,,,37101,,,\n")
    result = runner.invoke(main, ["validate", "--input", str(p)])
    assert result.exit_code == 2


def test_validate_unreadable_file(runner, tmp_path):
    result = runner.invoke(main, ["validate", "--input", str(tmp_path / "no.csv")])
    assert result.exit_code == 1


# ---------------------------------------------------------------------------
# indicators
# ---------------------------------------------------------------------------

def test_indicators_wmin_hungary(runner):
    result = runner.invoke(main, ["indicators", "--input", HUNGARY,
                                  "--series", "wmin"])
    assert result.exit_code == 0
    values = {line.split(",")[0]: float(line.split(",")[1])
              for line in result.output.strip().splitlines()[1:]}
    assert values["2000"] == pytest.approx(0.406, abs=0.005)
    assert values["2002"] == pytest.approx(0.606, abs=0.005)


def test_indicators_real_quartet(runner):
    result = runner.invoke(main, ["indicators", "--input", US,
                                  "--series", "real", "--base-year", "1960"])
    assert result.exit_code == 0
    rows = {line.split(",")[0]: line.split(",")
            for line in result.output.strip().splitlines()[1:]}
    for year, want_min, want_mean in (
            ("1960", 2080.0, 3842.0), ("1985", 2090.0, 4838.0),
            ("2001", 2047.0, 6032.0), ("2017", 2076.0, 6643.0)):
        assert float(rows[year][1]) == pytest.approx(want_min, abs=50.0)
        assert float(rows[year][2]) == pytest.approx(want_mean, abs=80.0)


def test_indicators_unknown_series(runner):
    result = runner.invoke(main, ["indicators", "--input", US,
                                  "--series", "wmin,bogus"])
    assert result.exit_code == 2
    assert "bogus" in result.output


def test_indicators_real_requires_base_year(runner):
    result = runner.invoke(main, ["indicators", "--input", US, "--series", "real"])
    assert result.exit_code == 2


def test_indicators_real_missing_deflator_names_year(runner):
    result = runner.invoke(main, ["indicators", "--input", HUNGARY,
                                  "--series", "real", "--base-year", "1960"])
    assert result.exit_code == 2
    assert "1960" in result.output


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

def test_figures_min_gini_columns(runner):
    result = runner.invoke(main, ["figures", "--input", US, "--fig", "min-gini"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "year,w_min,gini"


def test_figures_invalid_name_lists_choices(runner):
    result = runner.invoke(main, ["figures", "--input", US, "--fig", "nope"])
    assert result.exit_code == 2
    assert "min-gdp-union" in result.output


def test_figures_deterministic(runner, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        result = runner.invoke(main, ["figures", "--input", US,
                                      "--fig", "min-mean-scatter",
                                      "--out", str(out)])
        assert result.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def test_simulate_hungary_endpoints(runner, tmp_path):
    out = tmp_path / "h.csv"
    result = runner.invoke(main, ["simulate", "--preset", "hungary",
                                  "--out", str(out)])
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    first, last = lines[1].split(","), lines[-1].split(",")
    assert float(first[2]) == pytest.approx(0.406, abs=1e-9)
    assert float(last[2]) == pytest.approx(0.606, abs=1e-9)
    assert "w_min" in result.output        # summary line on stderr


def test_simulate_fixed_nominal_decay(runner, tmp_path):
    out = tmp_path / "d.csv"
    result = runner.invoke(main, ["simulate", "--preset", "us-fixed-nominal",
                                  "--steps", "30", "--out", str(out)])
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    initial = float(lines[1].split(",")[2])
    final = float(lines[-1].split(",")[2])
    assert final / initial == pytest.approx(1.02 ** -30, abs=1e-6)


def test_simulate_identical_files(runner, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        result = runner.invoke(main, ["simulate", "--preset", "gdpc-two-thirds",
                                      "--steps", "10", "--out", str(out)])
        assert result.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_scenario_file(runner, tmp_path):
    scenario = tmp_path / "scenario.json"
    scenario.write_text(json.dumps(sim.config_to_payload(sim.hungary_scenario())))
    result = runner.invoke(main, ["simulate", "--scenario", str(scenario)])
    assert result.exit_code == 0
    assert result.output.splitlines()[0].startswith("t,nominal_min,w_min")


def test_simulate_usage_errors(runner, tmp_path):
    assert runner.invoke(main, ["simulate"]).exit_code == 2
    both = runner.invoke(main, ["simulate", "--preset", "hungary",
                                "--scenario", str(tmp_path / "x.json")])
    assert both.exit_code == 2


def test_simulate_domain_error_exit_1(runner, tmp_path):
    payload = sim.config_to_payload(sim.hungary_scenario())
    payload["compression"]["ceiling_ratio"] = 0.45
    scenario = tmp_path / "bad.json"
    scenario.write_text(json.dumps(payload))
    result = runner.invoke(main, ["simulate", "--scenario", str(scenario)])
    assert result.exit_code == 1
    assert "step" in result.output


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------

def test_parse_bind():
    assert parse_bind("127.0.0.1:8750") == ("127.0.0.1", 8750)
    with pytest.raises(ValueError):
        parse_bind("8750")
    with pytest.raises(ValueError):
        parse_bind("host:port")


def test_serve_occupied_port_exit_1(runner, tmp_path):
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
        result = runner.invoke(main, ["serve", "--bind", f"127.0.0.1:{port}",
                                      "--data-dir", str(tmp_path / "s")])
    assert result.exit_code == 1
