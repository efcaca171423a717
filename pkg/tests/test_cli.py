import json
import subprocess
import sys
from importlib import resources

import pytest

from qtoroidal.cli import main
from qtoroidal.cli.dsl import Call, Check, DslError, ListV, Mono, Range, Script, Word, format_script, parse
from qtoroidal.cli.runner import Options, run


def test_parse_relation_with_range():
    s = parse("check R1 { i=1 m=1..5 states=basis(deg<=6) }")
    (c,) = s.checks
    assert c.name == "R1"
    assert c.get("i") == 1
    assert c.get("m") == Range(1, 5)
    assert c.get("states") == Call("basis", (("deg", "<=", 6),))


def test_parse_suite_invocation():
    s = parse("check lemma7 {}")
    assert s == Script((Check("lemma7", ()),))


def test_parse_values():
    c = parse("check R3 { i=[0, 1] sign=[+, -] m=3 }").checks[0]
    assert c.get("i") == ListV((0, 1))
    assert c.get("sign") == ListV((Word("+"), Word("-")))
    c = parse("check h_bracket { perturb=q^-1/2 }").checks[0]
    assert isinstance(c.get("perturb"), Mono)


def test_semantic_error_for_index():
    with pytest.raises(DslError) as exc:
        parse("check R1 { i=3 }")
    assert exc.value.kind == "semantic"
    assert "index out of {0,1}" in str(exc.value)
    assert (exc.value.line, exc.value.col) == (1, 14)


@pytest.mark.parametrize(
    "text,line",
    [
        ("check R1 {\n  bogus=1\n}", 2),
        ("check nope {}", 1),
        ("\n\ncheck R1 { i=1", 3),
        ("check R1 { i=1 i=0 }", 1),
        ("check R1 {} check R2 {}", 1),
        ("test R1 {}", 1),
    ],
)
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises(DslError) as exc:
        parse(text)
    assert exc.value.line == line


def test_comments_and_multiline_bodies():
    s = parse("# header\ncheck R1 {\n  i=1   # trailing\n  m=3\n}\n\ncheck lemma7 {}\n")
    assert [c.name for c in s.checks] == ["R1", "lemma7"]


@pytest.mark.parametrize("name", ["all", "smoke", "perturbed"])
def test_shipped_scripts_roundtrip(name):
    text = resources.files("qtoroidal").joinpath("checks", f"{name}.checks").read_text()
    s = parse(text)
    assert parse(format_script(s)) == s
    assert s.checks


def test_empty_script_passes():
    rep = run(parse(""))
    assert rep.passed and rep.reports == []
    assert json.loads(rep.to_json())["checks"] == []


def test_h_bracket_and_its_perturbation(capsys):
    assert main(["--relation", "h_bracket"]) == 0
    capsys.readouterr()
    assert main(["--script", "@perturbed"]) == 1
    out = capsys.readouterr().out
    assert "lhs = ((q+q^-1)/2)1|0>" in out
    assert "rhs = ((q^2+1)/2)1|0>" in out
    assert out.strip().endswith("FAIL (1 of 1 checks)")


def test_json_schema_and_determinism(capsys):
    args = ["--script", "@smoke", "--format", "json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert set(doc) == {"version", "checks", "pass"}
    assert doc["pass"] is True
    for c in doc["checks"]:
        assert {"id", "params", "cells", "mismatches", "mismatch_count", "pass", "millis"} <= set(c)
        assert c["millis"] == 0


def test_jobs_keep_script_order(capsys):
    assert main(["--script", "@smoke", "--format", "json", "--jobs", "2"]) == 0
    ids = [c["id"] for c in json.loads(capsys.readouterr().out)["checks"]]
    text = resources.files("qtoroidal").joinpath("checks", "smoke.checks").read_text()
    assert ids == [c.name for c in parse(text).checks]


def test_list(capsys):
    assert main(["--list"]) == 0
    out = capsys.readouterr().out
    assert "GS16" in out and "quartic_bracket" in out


def test_print_echoes_canonical_form(capsys, tmp_path):
    p = tmp_path / "x.checks"
    p.write_text("check   R1{i=1\n m=1..5}\n")
    assert main(["--script", str(p), "--print"]) == 0
    assert capsys.readouterr().out == "check R1 { i=1 m=1..5 }\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["--script", "/nonexistent/file.checks"],
        ["--script", "@missing"],
        ["--relation", "R9"],
    ],
)
def test_exit_code_two(argv, capsys):
    assert main(argv) == 2


def test_usage_errors_exit_two():
    for argv in (["--window", "-1", "--relation", "R1"], ["--convention", "uv=weird", "--relation", "R1"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_convention_flag(capsys):
    code = main(["--relation", "GS16", "--window", "2", "--max-degree", "0", "--convention", "flip=off"])
    assert code == 1
    assert main(["--relation", "GS16", "--window", "2", "--max-degree", "0"]) == 0


def test_stdin_via_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "qtoroidal", "--script", "-"],
        input="check R1 { i=3 }\n",
        capture_output=True,
        text=True,
    )
    assert r.returncode == 2
    assert "semantic error at line 1, column 14: index out of {0,1}" in r.stderr


def test_options_override_defaults():
    s = parse("check R5 {}")
    rep = run(s, Options(window=1, max_degree=1, modes=1))
    assert rep.passed
    assert rep.reports[0].params["m"] == 1
