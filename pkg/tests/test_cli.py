import json

import yaml

from neighborly.constants import CHECK_NAMES, EXIT_BUDGET, EXIT_CHECK_FAILED_BASE, EXIT_USAGE
from neighborly.main import dispatch


def test_table_bn(capsys):
    assert dispatch(["table", "bn", "--max", "6", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "n,sign\n1,-1\n2,1\n3,0\n4,-1\n5,1\n6,0\n"


def test_table_bn_with_polynomials(capsys):
    assert dispatch(["table", "bn", "--max", "5", "--poly"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[-1] == {"n": 5, "sign": 1, "coefficients": [0, 0, 0, 1, 3, 1]}


def test_verify_rr1(capsys):
    assert dispatch(["verify", "rr1", "--max-weight", "12"]) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert report["check"] == "rr1"
    assert report["status"] == "PASS"
    assert report["mismatches"] == []
    assert report["series"] == {"order": 12, "coeffs": [1, 0, -1, -1, 0, 0, 0, 0, 0, 1, 0, 1, 0]}
    assert "seconds" not in report["counts"]


def test_verify_output_is_deterministic(capsys):
    argv = ["verify", "rr2", "--max-weight", "12", "--format", "csv"]
    assert dispatch(argv) == 0
    first = capsys.readouterr().out
    assert dispatch(argv) == 0
    assert capsys.readouterr().out == first


def test_controls_pass_with_zero_orders(capsys):
    argv = ["verify", "controls", "--max-weight", "0", "--x-order", "0", "--q-order", "0"]
    assert dispatch(argv) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert report["counts"]["witnesses"]["dropped_qx_term"] == [1, 1]


def test_csv_lists_series_coefficients(capsys):
    assert dispatch(["verify", "rr2", "--max-weight", "6", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "rr2,PASS,summary,,,,"
    expected = [1, 0, 0, 0, -1, -1, -1]
    assert lines[2:] == [f"rr2,PASS,coefficient,{e},,{c}," for e, c in enumerate(expected)]


def test_text_lists_the_series(capsys):
    assert dispatch(["verify", "rr2", "--max-weight", "6", "--format", "text"]) == 0
    assert "  series to q^6: 1, 0, 0, 0, -1, -1, -1" in capsys.readouterr().out.splitlines()


def test_timings_are_opt_in(capsys):
    assert dispatch(["verify", "rr2", "--max-weight", "6", "--timings"]) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert "seconds" in report["counts"]


def test_printed_sign_convention_fails_with_encoded_status(capsys):
    status = dispatch(
        ["verify", "edgevertex", "--max-weight", "10", "--sign-convention", "printed"]
    )
    assert status == EXIT_CHECK_FAILED_BASE + CHECK_NAMES.index("edgevertex")
    (report,) = json.loads(capsys.readouterr().out)
    assert report["status"] == "FAIL"
    assert report["counts"]["matching_odd_conventions"] == ["shifted"]


def test_enumerate(capsys):
    assert dispatch(["enumerate", "--max-weight", "4"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["partition"] for r in rows] == ["/", "1/1", "1,2/", "1,2/1", "2/2"]
    assert [r["sign"] for r in rows] == [1, -1, -1, 1, -1]
    assert rows[3]["sig"] == [1, 2]
    assert (rows[3]["mu1"], rows[3]["mu2"]) == ([1, 2], [1])
    assert rows[3]["components"] == [{"k": 1, "n": 2, "cuts": [1]}]
    assert rows[3]["edges"] == 2
    assert rows[0]["components"] == []


def test_enumerate_with_min_part(capsys):
    assert dispatch(["enumerate", "--max-weight", "6", "--min-part", "2", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "1/1" not in out
    assert "2/2" in out


def test_show_draws_both_rows(capsys):
    assert dispatch(["show", "1,2,3,6,8,9,14/3,6,8,9,14"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1:4] == [
        " 1-- 2-- 3     6     8-- 9    14",
        "         |     |     |   |     |",
        "         3     6     8   9    14",
    ]
    assert "not admissible" in out


def test_show_pruned_graph_leaves_gaps(capsys):
    assert dispatch(["show", "1,2,3,4,5,6,7/1,3,6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    start = lines.index("G' (7 edges):") + 1
    assert lines[start:] == ["1  2--3--4  5--6--7", "|     |        |", "1     3        6"]


def test_show_accepts_a_part_list(capsys):
    assert dispatch(["show", "1,1,2,3,3"]) == 0
    assert "G for 1,2,3/1,3:" in capsys.readouterr().out


def test_usage_errors():
    assert dispatch([]) == EXIT_USAGE
    assert dispatch(["verify", "bogus"]) == EXIT_USAGE
    assert dispatch(["table", "bn", "--max", "-1"]) == EXIT_USAGE


def test_validation_errors_go_to_stderr(capsys):
    assert dispatch(["show", "1,3/"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_budget_errors_have_their_own_status(monkeypatch):
    monkeypatch.setenv("NEIGHBORLY_MAX_PARTITIONS", "3")
    assert dispatch(["verify", "rr1", "--max-weight", "10"]) == EXIT_BUDGET


def test_output_file_and_yaml_format(tmp_path, capsys):
    target = tmp_path / "out" / "report.yaml"
    assert dispatch(["verify", "rr2", "--max-weight", "8", "--format", "yaml", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    (report,) = yaml.safe_load(target.read_text())
    assert report["status"] == "PASS"


def test_config_file_with_no_checks(tmp_path, capsys):
    config = tmp_path / "config.yaml"
    config.write_text("checks: []\nmax_weight: 6\n")
    assert dispatch(["verify", "all", "--config", str(config)]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_config_file_with_unknown_key(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("colour: blue\n")
    assert dispatch(["verify", "all", "--config", str(config)]) == EXIT_USAGE


def test_effective_configuration_is_logged(caplog, capsys):
    with caplog.at_level("INFO", logger="neighborly.main"):
        assert dispatch(["table", "bn", "--max", "2", "--deletion-rule", "example"]) == 0
    assert "'deletion_rule': 'example'" in caplog.text
