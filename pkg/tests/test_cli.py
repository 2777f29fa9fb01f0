import io
import json

import pytest

from nestedhilb.cli import COMMANDS, RunConfig, config_from_args, main, run

FAST = {
    "ideal": ["--n", "3"],
    "verify-gb": ["--n", "2"],
    "verify-initial": ["--n", "2"],
    "verify-intermediate": ["--n", "2"],
    "fiber-check": ["--n", "2", "--samples", "40"],
    "tangent": [],
    "complex-facets": ["--n", "4"],
    "complex-homology": ["--n", "2"],
    "bott-table": ["--n", "5"],
    "bott-degree": ["--n", "6"],
    "deform-cleave": [],
    "deform-gin": [],
    "search-reducible": ["--n", "5"],
}


def report_for(argv):
    cfg = config_from_args(argv)
    return run(cfg)


def test_every_subcommand_is_covered():
    assert set(FAST) == set(COMMANDS)


@pytest.mark.parametrize("command", sorted(FAST))
def test_subcommand_passes(command):
    report, code = report_for([command] + FAST[command])
    assert report["status"] == "pass", report["witnesses"]
    assert code == 0
    assert report["schema"] == "1" and report["command"] == command
    json.dumps(report)


@pytest.mark.parametrize("command", ["ideal", "complex-facets", "bott-table", "deform-gin", "fiber-check"])
def test_reports_are_deterministic(command):
    a, _ = report_for([command] + FAST[command])
    b, _ = report_for([command] + FAST[command])
    a.pop("timing-ms"), b.pop("timing-ms")
    assert a == b


def test_parse_error_reports_position():
    report, code = report_for(["deform-gin", "x+*y"])
    assert code == 2 and report["status"] == "error"
    assert report["witnesses"][0]["position"] == 2


def test_budget_exceeded_exit_code():
    report, code = report_for(["verify-initial", "--n", "3", "--budget-pairs", "1"])
    assert report["status"] == "budget-exceeded" and code == 2


def test_failure_carries_witness():
    report, code = report_for(["complex-homology", "--n", "2", "--field", "2"])
    assert code in (0, 1)
    if code == 1:
        assert report["witnesses"]


def test_stdin_payload():
    cfg = config_from_args(["deform-gin", "-"], stdin=io.StringIO("y - x^2, x^3\n"))
    assert cfg.payload == ["y - x^2, x^3"]
    report, code = run(cfg)
    assert code == 0
    assert list(report["values"].values()) == [["x^2", "x*y", "y^2"]]


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["search-reducible", "--n", "5", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["values"]["r"] == 19
    assert "search-reducible [pass]" in capsys.readouterr().out


def test_stdout_is_pure_json(capsys):
    assert main(["bott-degree", "--n", "4"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["status"] == "pass"
    assert "[pass]" in captured.err


def test_params_are_recorded():
    report, _ = report_for(["ideal", "--n", "2", "--seed", "7", "--threads", "3"])
    assert report["params"]["seed"] == 7 and report["params"]["threads"] == 3


def test_tangent_payload_pair():
    report, code = report_for(["tangent", "x^2, x*y, y^2", "x, y^2"])
    assert code == 0, report
    # nested pair of colengths (3, 2) is a smooth point of a 6-dimensional space
    assert report["values"] == {"tangent_dim": 6, "colengths": [3, 2]}
    report, code = report_for(["tangent", "x, y^2", "x^2, x*y, y^2"])
    assert code == 2 and report["status"] == "error"


def test_unknown_subcommand_is_rejected():
    with pytest.raises(SystemExit):
        config_from_args(["no-such-thing"])
    with pytest.raises(SystemExit):
        run(RunConfig("no-such-thing"))
