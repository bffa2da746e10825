import json

import pytest

from dynctl.cli import VERIFY_REGISTRY, main, registered_checks


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_orbit_subcommand_json(capsys):
    code, out, _ = run_cli(
        ["orbit", "--map", "x^4/(x^2-2)^2", "--point", "3/2", "--s", "", "--ncap", "6"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["integral_indices"] == [1]
    assert payload["points"][1] == "81"
    assert payload["truncation"] == "iteration_cap"
    assert payload["exact"] is False


def test_orbit_csv_schema(capsys):
    code, out, _ = run_cli(
        ["orbit", "--map", "x^2", "--point", "0", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema: dynctl.orbit.v1"
    assert lines[1] == "n,point,integral"


def test_canheight_subcommand(capsys):
    import math

    code, out, _ = run_cli(["canheight", "--map", "x^2", "--point", "2", "--tol", "1e-6"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["value"] - math.log(2)) <= payload["radius"]


def test_preper_subcommand(capsys):
    code, out, _ = run_cli(["preper", "--map", "x^2-1", "--point", "0"], capsys)
    assert code == 0
    assert json.loads(out)["preperiodic"] is True


def test_density_csv_decreasing(capsys):
    code, out, _ = run_cli(
        ["density", "--map", "(x-1)/(x^3+1)", "--s", "", "--b", "10,20,40", "--format", "csv"],
        capsys,
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema: dynctl.density.v1"
    ratios = [float(row.split(",")[3]) for row in lines[2:]]
    assert all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:]))


def test_nmax_subcommand(capsys):
    code, out, _ = run_cli(
        ["nmax", "--map", "pell(2)", "--s", "", "--b", "5", "--height-budget-bits", "10000"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n_emp"] == 1


def test_error_json_on_bad_map(capsys):
    code, out, err = run_cli(["orbit", "--map", "x^2/", "--point", "2"], capsys)
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "ParseError"


def test_error_json_on_degenerate_map(capsys):
    code, _, err = run_cli(["orbit", "--map", "x^2/x^2", "--point", "2"], capsys)
    assert code == 1
    assert json.loads(err)["error"] == "DegenerateMapError"


def test_avg_deterministic_across_workers(capsys):
    args = ["avg", "--map", "pell(2)", "--beta", "t", "--s", "", "--b", "5,10",
            "--height-budget-bits", "10000", "--format", "csv"]
    _, out1, _ = run_cli(args + ["--workers", "1"], capsys)
    _, out2, _ = run_cli(args + ["--workers", "2"], capsys)
    assert out1 == out2


def test_verify_registry_completeness():
    assert set(VERIFY_REGISTRY) == set(registered_checks())


def test_verify_exit_zero(capsys):
    code, out, _ = run_cli(["verify", "--format", "json", "--seed", "1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    names = {c["name"] for c in payload["checks"]}
    assert "phi_t.second_iterate_resultant" in names
    assert "cube_sum.height_bound" in names


def test_verify_deterministic_given_seed(capsys):
    _, out1, _ = run_cli(["verify", "--format", "json", "--seed", "7"], capsys)
    _, out2, _ = run_cli(["verify", "--format", "json", "--seed", "7"], capsys)
    assert out1 == out2


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("ncap=2\nformat=json\n")
    code, out, _ = run_cli(
        ["orbit", "--config", str(cfg), "--map", "x^4/(x^2-2)^2", "--point", "3/2"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["points"]) == 3  # n_cap = 2 from the config file


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["preper", "--map", "x^2", "--point", "5", "--out", str(target)], capsys
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["preperiodic"] is False


def test_avg_family_case(capsys):
    code, out, _ = run_cli(
        ["avg", "--map", "phi_t", "--beta", "t^3+2", "--s", "", "--b", "3,6",
         "--height-budget-bits", "10000"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["excluded"] == [2, 2]  # t = -1 and t = infinity
    assert payload["averages"][1] <= payload["averages"][0] + 1e-12


def test_canheight_rejects_family_expression(capsys):
    code, _, err = run_cli(["canheight", "--map", "phi_t", "--point", "2"], capsys)
    assert code == 1
    assert "parameters" in json.loads(err)["message"]


def test_workers_env_override(monkeypatch):
    from dynctl.parallel import default_workers

    monkeypatch.setenv("DYNCTL_WORKERS", "5")
    assert default_workers() == 5
    monkeypatch.setenv("DYNCTL_WORKERS", "junk")
    assert default_workers() == 1
    monkeypatch.delenv("DYNCTL_WORKERS")
    assert default_workers() == 1


def test_density_deterministic_across_workers(capsys):
    args = ["density", "--map", "pell(2)", "--s", "", "--b", "5,10", "--format", "csv"]
    _, out1, _ = run_cli(args + ["--workers", "1"], capsys)
    _, out2, _ = run_cli(args + ["--workers", "2"], capsys)
    assert out1 == out2


def test_ffavg_subcommand(capsys):
    code, out, _ = run_cli(
        ["ffavg", "--p", "2", "--d", "2", "--beta-coeffs", "0,0,0,0,1", "--s", "",
         "--b", "1,2", "--format", "csv"],
        capsys,
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema: dynctl.ffavg.v1"
    assert len(lines) == 4
