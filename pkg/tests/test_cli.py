import json
import subprocess
import sys

import jsonschema
import pytest

from bww.cli import main
from bww.diagnostics import DIAGNOSTIC_JSON_SCHEMA
from bww import export

from .conftest import FIXTURES, MODELS, RULE_FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_clean_library(capsys):
    assert run(capsys, "check", MODELS / "library.bww") == (0, "", "")


def test_check_clean_json_is_empty_array(capsys):
    code, out, err = run(capsys, "check", MODELS / "library.bww", "--format", "json")
    assert (code, out, json.loads(err)) == (0, "", [])


def test_json_front_end_failure(capsys):
    code, _, err = run(capsys, "check", FIXTURES / "bad_parse.bww", "--format", "json")
    assert code == 2
    assert [d["code"] for d in json.loads(err)] == ["P1"]


def test_check_parse_error(capsys):
    code, out, err = run(capsys, "check", FIXTURES / "bad_parse.bww")
    assert code == 2
    lines = err.strip().splitlines()
    assert len(lines) == 1 and "error[P1]" in lines[0]
    assert lines[0].startswith(f"{FIXTURES / 'bad_parse.bww'}:3:17: ")


@pytest.mark.parametrize("name", ["bad_lex.bww", "two_errors.bww", "unresolved.bww",
                                  "cyclic_conjunction.bww"])
def test_front_end_failures_exit_2(capsys, name):
    assert run(capsys, "check", FIXTURES / name)[0] == 2


def test_check_v1_json(capsys):
    code, out, err = run(capsys, "check", RULE_FIXTURES / "V1.bww", "--format", "json")
    assert code == 1 and out == ""
    doc = json.loads(err)
    assert [d["code"] for d in doc] == ["V1"]
    for d in doc:
        jsonschema.validate(d, DIAGNOSTIC_JSON_SCHEMA)


@pytest.mark.parametrize("path", sorted(RULE_FIXTURES.glob("*.bww")), ids=lambda p: p.stem)
def test_text_and_json_agree(capsys, path, monkeypatch):
    monkeypatch.setenv("BWW_NO_COLOR", "1")
    code_t, _, err = run(capsys, "check", path)
    code_j, _, err_j = run(capsys, "check", path, "--format", "json")
    assert code_t == code_j
    doc = json.loads(err_j)
    for d in doc:
        jsonschema.validate(d, DIAGNOSTIC_JSON_SCHEMA)
    text_codes = sorted(line.split("[")[1].split("]")[0] for line in err.strip().splitlines())
    assert text_codes == sorted(d["code"] for d in doc)


@pytest.mark.parametrize("path", sorted(RULE_FIXTURES.glob("*.bww")), ids=lambda p: p.stem)
def test_exit_code_matches_severity(capsys, path):
    code, _, _ = run(capsys, "check", path)
    # warnings and infos alone never fail a check
    assert code == (0 if path.stem in ("W1", "I2") else 1)


def test_query_true_false_both_exit_0(capsys):
    assert run(capsys, "query", MODELS / "library.bww", "possesses?(book1, Title)")[:2] == (0, "true\n")
    assert run(capsys, "query", MODELS / "library.bww",
               "event?(book1, onTheRack, claimed)")[:2] == (0, "false\n")


def test_query_reflexive_precedes(capsys):
    assert run(capsys, "query", MODELS / "precedence.bww",
               "precedes?(BeingPerson, BeingPerson)")[:2] == (0, "true\n")


def test_query_trace(capsys):
    code, out, _ = run(capsys, "query", MODELS / "precedence.bww",
                       "precedes?(BeingPerson, StayingInHostel)", "--trace")
    assert code == 0
    assert out.splitlines() == ["true", "  BeingPerson -> BeingStudent",
                                "  BeingStudent -> StayingInHostel"]


@pytest.mark.parametrize("expr", ["nope?(book1)", "possesses?(book9, Title)", "possesses?(book1"])
def test_query_bad_input_exit_3(capsys, expr):
    assert run(capsys, "query", MODELS / "library.bww", expr)[0] == 3


def test_query_on_broken_model_exit_2(capsys):
    assert run(capsys, "query", FIXTURES / "bad_parse.bww", "possesses?(a, b)")[0] == 2


def test_closure_chain(capsys):
    code, out, _ = run(capsys, "closure", MODELS / "chain.bww")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 10 and lines == sorted(lines)


def test_closure_without_precedes(capsys, tmp_path):
    p = tmp_path / "two.bww"
    p.write_text("model Two { property A; property B; }")
    assert run(capsys, "closure", p)[:2] == (0, "A -> A\nB -> B\n")


def test_closure_cycle(capsys):
    code, out, _ = run(capsys, "closure", MODELS / "cycle.bww")
    assert code == 0
    assert out.splitlines() == ["A -> A", "A -> B", "B -> A", "B -> B"]


def test_export_to_file_round_trips(capsys, tmp_path, four_things):
    out = tmp_path / "t2.json"
    assert run(capsys, "export", MODELS / "four_things.bww", "-o", out)[0] == 0
    assert export.loads(out.read_text()) == four_things


def test_export_stdout_empty_model(capsys, tmp_path):
    p = tmp_path / "empty.bww"
    p.write_text("model Empty { }")
    code, out, _ = run(capsys, "export", p)
    assert code == 0
    assert [t["name"] for t in json.loads(out)["things"]] == ["null"]


def test_io_failures_exit_3(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "missing.bww")[0] == 3
    assert run(capsys, "export", MODELS / "library.bww", "-o", tmp_path / "no" / "x.json")[0] == 3


def test_bad_invocation_exit_3(capsys):
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys, "check")[0] == 3
    assert run(capsys, "check", MODELS / "library.bww", "--format", "xml")[0] == 3


def test_color_only_when_allowed(capsys, monkeypatch):
    monkeypatch.setenv("BWW_NO_COLOR", "1")
    _, _, err = run(capsys, "check", RULE_FIXTURES / "V1.bww")
    assert "\x1b[" not in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bww", "check", str(RULE_FIXTURES / "V1.bww")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout == ""
    assert "error[V1]" in proc.stderr
