from __future__ import annotations

import json
from fractions import Fraction

import pytest

import gwseries.cli as cli
from gwseries.cli import DEFAULT_ORDER, ORDER_ENV_VAR, RunConfig, main, parse_args, run
from gwseries.modular import eta_expand
from gwseries.qseries import PrecisionError, QSeries


def _run(capsys, **kwargs):
    status = run(RunConfig(**kwargs))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


# -- expand ------------------------------------------------------------------------


def test_expand_text_reference_string(capsys):
    status, out, _ = _run(capsys, command="expand", order=8,
                          expression="eta(9)^3 * eta(3)^-1")
    assert status == 0
    assert out == "q + q^4 + 2q^7 + O(q^8)\n"


def test_expand_order_is_the_absolute_truncation(capsys):
    status, out, _ = _run(capsys, command="expand", order=30,
                          expression="eta(3)^24")
    assert status == 0
    assert out.startswith("3q^3 ") or out.startswith("q^3")
    # eta(3)^24 = q^3 prod(1-q^(3n))^24: check against the library expansion
    reference = eta_expand("eta(3)^24", 27).to_qseries()
    assert f"O(q^30)" in out
    assert out.split(" + O", 1)[0].startswith(cli.format_series(reference).split(" + O", 1)[0])


def test_expand_fractional_offset_prints_unit_form(capsys):
    status, out, _ = _run(capsys, command="expand", order=10, expression="eta(2)")
    assert status == 0
    assert out.startswith("q^(1/12) * (1 - q^2")


def test_expand_bad_expression_is_a_usage_error(capsys):
    status, out, err = _run(capsys, command="expand", order=10, expression="zeta(2)")
    assert status == 2
    assert out == ""
    assert "error:" in err


def test_expand_order_must_clear_the_leading_exponent(capsys):
    status, _, err = _run(capsys, command="expand", order=2, expression="eta(1)^48")
    assert status == 2
    assert "does not reach past" in err


def test_expand_json_round_trips_byte_identically(capsys):
    status, out, _ = _run(capsys, command="expand", order=12, format="json",
                          expression="eta(9)^3 * eta(3)^-1")
    assert status == 0
    payload = json.loads(out)
    assert json.dumps(payload, indent=2) + "\n" == out
    series = QSeries.from_json_dict(payload["series"])
    assert series == eta_expand("eta(9)^3 * eta(3)^-1", 11).to_qseries()


def test_expand_csv_lists_known_terms(capsys):
    status, out, _ = _run(capsys, command="expand", order=8, format="csv",
                          expression="eta(9)^3 * eta(3)^-1")
    assert status == 0
    assert out == (
        "series,exponent,coefficient\n"
        "eta(9)^3 * eta(3)^-1,1,1\n"
        "eta(9)^3 * eta(3)^-1,4,1\n"
        "eta(9)^3 * eta(3)^-1,7,2\n"
    )


# -- solve -------------------------------------------------------------------------


def test_solve_d4_text(capsys):
    status, out, _ = _run(capsys, command="solve", model="d4", order=8)
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "a = q + 4q^3 + 6q^5 + 8q^7 + O(q^8)"
    assert lines[1].startswith("b = -1/24 ")
    assert lines[2].startswith("c = 3q^2 ")


def test_solve_e6_csv_streams_the_pole_series(capsys):
    status, out, _ = _run(capsys, command="solve", model="e6", order=9, format="csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "series,exponent,coefficient"
    assert lines[1] == "a,-1,1/3"
    assert lines[2] == "a,2,5/3"
    assert lines[3] == "a,5,-7/3"
    assert lines[4] == "a,8,1"


def test_solve_json_names_every_series(capsys):
    status, out, _ = _run(capsys, command="solve", model="d4", order=6, format="json")
    assert status == 0
    payload = json.loads(out)
    assert payload["command"] == "solve"
    assert sorted(payload["series"]) == ["a", "b", "c"]
    assert payload["series"]["b"]["coeffs"][0] == "-1/24"


# -- verify ------------------------------------------------------------------------


def test_verify_halphen_text(capsys):
    status, out, _ = _run(capsys, command="verify", model="halphen", order=20)
    assert status == 0
    assert "[halphen-system]" in out
    assert "[eta-forms]" in out
    assert "[theta-bridges]" in out
    assert "FAIL" not in out
    assert "pass  halphen-x2x3 (order 20)" in out


def test_verify_csv_header_and_rows(capsys):
    status, out, _ = _run(capsys, command="verify", model="halphen", order=12,
                          format="csv")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "name,order,status,failure_exponent"
    assert all(line.endswith(",pass,") for line in lines[1:])


def test_verify_json_groups_by_suite(capsys):
    status, out, _ = _run(capsys, command="verify", model="d4", order=8, format="json")
    assert status == 0
    payload = json.loads(out)
    names = [suite["name"] for suite in payload["suites"]]
    assert names == [
        "d4-construction",
        "d4-odes-and-bridges",
        "d4-elliptic-weyl",
        "d4-genus-one",
        "d4-potential",
    ]
    for suite in payload["suites"]:
        for report in suite["reports"]:
            assert report["status"] == "pass"


def test_verify_exit_code_points_at_the_failed_suite(capsys):
    status, out, _ = _run(capsys, command="verify", model="e6", order=8,
                          strict_typo_mode=True)
    assert status == 14  # e6-potential is the fifth suite in the stream
    assert "FAIL  wdvv" in out
    assert "pass  e6-j-relation" in out


def test_verify_parallel_matches_serial(capsys):
    serial, out_serial, _ = _run(capsys, command="verify", model="halphen", order=12)
    parallel, out_parallel, _ = _run(capsys, command="verify", model="halphen",
                                     order=12, parallel=True)
    assert serial == parallel == 0
    assert out_serial == out_parallel


def test_internal_failures_exit_three(capsys, monkeypatch):
    def _boom(config):
        raise PrecisionError("synthetic precision collapse")

    monkeypatch.setitem(cli._VERIFY_SUITES, "halphen", (("halphen-system", _boom),))
    status, out, err = _run(capsys, command="verify", model="halphen", order=12)
    assert status == 3
    assert "internal error: synthetic precision collapse" in err


# -- gw-table ----------------------------------------------------------------------


def test_gw_table_csv_reference(capsys):
    status, out, _ = _run(capsys, command="gw-table", kmax=2, format="csv")
    assert status == 0
    assert out == "k,c_k\n0,1\n1,1\n2,2\n"


def test_gw_table_text_includes_certificate(capsys):
    status, out, _ = _run(capsys, command="gw-table", kmax=4)
    assert status == 0
    assert "c_0 = 1" in out
    assert "c_3 = 0" in out
    assert "pass  e6-gw-dual-route" in out


def test_gw_table_json(capsys):
    status, out, _ = _run(capsys, command="gw-table", kmax=3, format="json")
    assert status == 0
    payload = json.loads(out)
    assert payload["table"] == [
        {"k": 0, "c_k": "1"},
        {"k": 1, "c_k": "1"},
        {"k": 2, "c_k": "2"},
        {"k": 3, "c_k": "0"},
    ]
    assert payload["report"]["status"] == "pass"


# -- genus-one ---------------------------------------------------------------------


def test_genus_one_text(capsys):
    status, out, _ = _run(capsys, command="genus-one", model="d4", order=12)
    assert status == 0
    assert "linear log q coefficient: -1/24" in out
    assert "series: 1/2q^2" in out
    assert "pass  d4-genus-one" in out


def test_genus_one_json(capsys):
    status, out, _ = _run(capsys, command="genus-one", model="e6", order=12,
                          format="json")
    assert status == 0
    payload = json.loads(out)
    assert payload["linear_log_q_coefficient"] == "-1/24"
    assert payload["report"]["status"] == "pass"
    series = QSeries.from_json_dict(payload["series"])
    assert series.coefficient(3) == Fraction(1, 3)


# -- argument parsing ----------------------------------------------------------------


def test_parse_args_defaults():
    config = parse_args(["solve", "e6"])
    assert config == RunConfig(command="solve", order=DEFAULT_ORDER, model="e6")


def test_parse_args_env_override(monkeypatch):
    monkeypatch.setenv(ORDER_ENV_VAR, "24")
    assert parse_args(["solve", "e6"]).order == 24
    assert parse_args(["solve", "e6", "--order", "12"]).order == 12


def test_parse_args_rejects_bad_env(monkeypatch):
    monkeypatch.setenv(ORDER_ENV_VAR, "twelve")
    with pytest.raises(SystemExit) as excinfo:
        parse_args(["solve", "e6"])
    assert excinfo.value.code == 2


def test_parse_args_usage_errors():
    for argv in (
        ["frobnicate"],
        ["solve"],
        ["solve", "p2"],
        ["solve", "e6", "--order", "1"],
        ["gw-table", "--kmax", "-1"],
        ["verify", "everything"],
        ["expand"],
    ):
        with pytest.raises(SystemExit) as excinfo:
            parse_args(argv)
        assert excinfo.value.code == 2


def test_parse_args_flags():
    config = parse_args(["verify", "e6", "--strict-typo-mode", "--parallel",
                         "--order", "8", "--format", "csv"])
    assert config.strict_typo_mode is True
    assert config.parallel is True
    assert config.format == "csv"
    assert parse_args(["verify", "e6", "--order", "8"]).strict_typo_mode is False


def test_main_exits_with_run_status(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["gw-table", "--kmax", "1"])
    assert excinfo.value.code == 0
    assert "c_1 = 1" in capsys.readouterr().out
