"""Command-line interface: parsing, exit codes, artifacts."""

import json

import pytest

from qgordon.cli import main, parse_checks, parse_range
from qgordon.harness import CHECK_IDS, ConfigError


def test_parse_range_forms():
    assert parse_range("3", "k") == (3,)
    assert parse_range("2..4", "k") == (2, 3, 4)
    assert parse_range("all", "a", allow_all=True) is None
    with pytest.raises(ConfigError):
        parse_range("all", "k")
    with pytest.raises(ConfigError):
        parse_range("4..2", "k")
    with pytest.raises(ConfigError):
        parse_range("x", "k")


def test_parse_checks():
    assert parse_checks("all") == CHECK_IDS
    assert parse_checks("identities, gf-match") == ("identities", "gf-match")
    assert parse_checks("") == ()


def test_cli_end_to_end(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        [
            "--checks",
            "identities",
            "--k",
            "2",
            "--d",
            "1",
            "--flavor",
            "regular",
            "--trunc-n",
            "20",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    reports = json.loads(out.read_text())
    assert len(reports) == 2  # a = 1, 2
    assert all(r["status"] == "pass" for r in reports)
    text = capsys.readouterr().out
    assert "2 passed, 0 failed, 0 skipped" in text


def test_cli_failure_exit_code(tmp_path):
    code = main(
        [
            "--checks",
            "identities",
            "--k",
            "2",
            "--d",
            "2",
            "--s",
            "1",
            "--a",
            "2",
            "--flavor",
            "over",
            "--trunc-n",
            "12",
        ]
    )
    assert code == 1


def test_cli_config_error_exit_code(capsys):
    assert main(["--checks", "nonsense"]) == 2
    assert "configuration error" in capsys.readouterr().err
    assert main(["--k", "1..0"]) == 2


def test_cli_empty_checks(capsys):
    assert main(["--checks", ""]) == 0
    assert "0 passed" in capsys.readouterr().out


def test_cli_csv_export(tmp_path):
    code = main(
        [
            "--checks",
            "identities",
            "--k",
            "2",
            "--d",
            "1",
            "--flavor",
            "regular",
            "--trunc-n",
            "12",
            "--csv-dir",
            str(tmp_path / "csv"),
        ]
    )
    assert code == 0
    files = sorted(p.name for p in (tmp_path / "csv").iterdir())
    assert files == [
        "counts_k2_a1_d1_s0_regular.csv",
        "counts_k2_a2_d1_s0_regular.csv",
        "series_k2_a1_d1_s0_regular.csv",
        "series_k2_a2_d1_s0_regular.csv",
    ]


def test_cli_single_tuple_shape_run(tmp_path):
    # one-tuple grid: k=5 d=4 s=1 a=3 meets the stated conditions and runs
    # the two-term companion shape
    out = tmp_path / "r.json"
    code = main(
        [
            "--checks",
            "identities",
            "--k",
            "5",
            "--d",
            "4",
            "--s",
            "1",
            "--a",
            "3",
            "--flavor",
            "regular",
            "--trunc-n",
            "25",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    reports = json.loads(out.read_text())
    assert len(reports) == 1
    assert reports[0]["status"] == "pass"
    assert any("d = a+s" in n for n in reports[0]["notes"])


def test_cli_alt_condition_flag_recorded(tmp_path):
    out = tmp_path / "r.json"
    main(
        [
            "--checks",
            "identities",
            "--k",
            "2",
            "--d",
            "1",
            "--flavor",
            "regular",
            "--trunc-n",
            "10",
            "--alt-condition",
            "--out",
            str(out),
        ]
    )
    reports = json.loads(out.read_text())
    assert all("corrected" in r["notes"][0] for r in reports)
