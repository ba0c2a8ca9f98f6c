"""Tests for literal parsing and the command-line surface"""

import csv
import io
import json

import pytest

from src.cli.commands import EXIT_BUDGET, EXIT_FOUND, EXIT_INPUT, EXIT_OK, run
from src.cli.config import parse_args
from src.cli.parser import parse_multiset_literal, parse_n_values
from src.errors import DimensionMismatchError, LiteralSyntaxError, NonPrimeError
from src.main import main
from src.multiset.constructions import construct_extremal_2d
from src.search.report import SearchReport
from src.sumset.engine import brute_force_sumset


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(parse_args(list(argv)), stream=out, errors=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_literal():
    A = parse_multiset_literal("p=5 m=2 : (1,0)*4 (0,1)*2")
    assert A == construct_extremal_2d(5, 1)
    B = parse_multiset_literal("p=5  m=2:(6,0) (-4,5)*2")
    assert B.to_literal() == "p=5 m=2 : (1,0)*3"
    assert parse_multiset_literal("p=3 m=2 :").total == 0


def test_parse_literal_errors():
    with pytest.raises(DimensionMismatchError):
        parse_multiset_literal("p=5 m=2 : (1,0,0)")
    with pytest.raises(LiteralSyntaxError) as info:
        parse_multiset_literal("p=5 m=2 : (1,0")
    assert info.value.offset == 14
    with pytest.raises(LiteralSyntaxError):
        parse_multiset_literal("p=5 m=2 : (1,0)*0")
    with pytest.raises(LiteralSyntaxError):
        parse_multiset_literal("q=5 m=2 : (1,0)")
    with pytest.raises(NonPrimeError):
        parse_multiset_literal("p=9 m=2 : (1,0)")


def test_parse_n_values():
    assert parse_n_values("5") == [5]
    assert parse_n_values("3..5") == [3, 4, 5]
    assert parse_n_values("3,4,7") == [3, 4, 7]
    with pytest.raises(ValueError):
        parse_n_values("5..3")
    with pytest.raises(ValueError):
        parse_n_values("three")


def test_sumset_command():
    literal = "p=3 m=2 : (1,0)*2 (1,1)"
    code, out, _ = invoke("sumset", literal, "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    expected = brute_force_sumset(parse_multiset_literal(literal))
    assert payload["sumset_card"] == expected.card
    assert payload["sumset_bits"] == expected.to_hex()
    assert "sumset_hex" not in payload
    assert payload["config"]["literal"] == literal
    assert "artifact_version" in payload


def test_validate_command():
    code, out, _ = invoke("validate", "p=5 m=2 : (1,0)*5")
    assert code == EXIT_FOUND
    assert "valid: False" in out
    code, _, _ = invoke("validate", "p=5 m=2 : (1,0)*4 (0,1)*2")
    assert code == EXIT_OK


def test_bound_command():
    code, out, _ = invoke("bound", "p=5 m=2 : (1,0)*4 (0,1)*2", "--all", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["best"]["value"] == payload["exact_card"] == 15
    assert payload["conjecture_floor"] == 15
    assert len(payload["certificates"]) > 1

    code, out, _ = invoke("bound", "p=3 m=3 : (1,0,0)*2 (0,1,0)", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["best"]["value"] <= json.loads(out)["exact_card"]


def test_construct_command():
    code, out, _ = invoke("construct", "extremal", "--p", "7", "--k", "2", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["sumset_card"] == 28
    assert payload["valid"]

    code, _, err = invoke("construct", "extremal", "--p", "7")
    assert code == EXIT_INPUT
    assert "--k" in err


def test_input_errors_exit_2():
    code, _, err = invoke("sumset", "p=5 m=2 : (1,0")
    assert code == EXIT_INPUT
    assert "byte offset 14" in err
    code, _, _ = invoke("verify", "--p", "3", "--m", "2", "--n", "6")
    assert code == EXIT_INPUT
    code, _, err = invoke("verify", "--p", "3", "--m", "2", "--n", "3", "--resume")
    assert code == EXIT_INPUT
    assert "checkpoint" in err


def test_verify_json():
    code, out, _ = invoke("verify", "--p", "3", "--m", "2", "--n", "3..5", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [r["min_card"] for r in payload["records"]] == [6, 8, 9]
    assert {r["verdict"] for r in payload["records"]} == {"CONFIRMED"}
    assert payload["config"]["seed"] is not None

    # a report read back and written again is byte-identical
    assert SearchReport.from_json(out).to_json() + "\n" == out


def test_verify_csv():
    code, out, _ = invoke("verify", "--p", "3", "--m", "2", "--n", "4,5", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "floor", "min_card", "verdict"]
    assert [(r["n"], r["min_card"]) for r in rows] == [("4", "8"), ("5", "9")]


def test_budget_exit_3():
    code, _, err = invoke("verify", "--p", "7", "--m", "2", "--n", "13")
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_thresholds_command():
    code, out, _ = invoke("thresholds", "--p", "101", "--k", "2", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["k_max_small_k_threshold"] == 2


def test_remark_command():
    code, out, _ = invoke("remark-p11", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["sixteen_cases"] == 16


def test_main_entry(capsys):
    assert main(["sumset", "p=3 m=1 : (1)*2", "--quiet"]) == EXIT_OK
    assert "#Sigma(A) = 3" in capsys.readouterr().out
