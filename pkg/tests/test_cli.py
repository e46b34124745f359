import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relweil.arith import MultiPoly, UniPoly
from relweil.cli import main, parse_job, run_job, run_paper_suite, serialize_job
from relweil.errors import ParseError, SchemaError

CUBIC_JOB = {
    "command": "restrict",
    "field": {"min_poly": ["-2", "0", "1"], "generator": "a"},
    "inputs": {"variables": ["x"], "equations": [], "morphism": [{"num": "x^3 - a*x^2"}]},
}


def dump(doc):
    return json.dumps(doc)


# -------------------------------------------------------------- parse_job
def test_parse_example_job():
    spec = parse_job(dump(CUBIC_JOB))
    assert spec.command == "restrict"
    assert spec.field == UniPoly([-2, 0, 1], "t")
    assert spec.generator == "a"
    (m,) = spec.inputs["morphism"]
    assert m["num"] == MultiPoly.parse("x^3 - a*x^2", ("x", "a"))


def test_unknown_command():
    with pytest.raises(SchemaError) as exc:
        parse_job(dump({"command": "integrate"}))
    assert exc.value.violations[0][0] == "command"


def test_schema_lists_every_violation():
    doc = {"command": "chabauty", "inputs": {"n": 0, "g_C": -1, "g_B": 0, "mw_L_C": 0,
                                            "mw_L_BL": 0, "mw_K_B": 0}}
    with pytest.raises(SchemaError) as exc:
        parse_job(dump(doc))
    paths = [p for p, _ in exc.value.violations]
    assert "inputs/n" in paths and "inputs/g_C" in paths and "inputs" in paths  # missing genus_Ch


def test_bad_rational():
    doc = {"command": "restrict", "field": {"min_poly": ["1/0", "0", "1"]},
           "inputs": {"variables": ["x"]}}
    with pytest.raises(ParseError) as exc:
        parse_job(dump(doc))
    assert exc.value.path == "field/min_poly/0"


def test_bad_json_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_job('{"command": "table1",\n  oops}')
    assert exc.value.line == 2


def test_bad_polynomial_reports_path():
    doc = dict(CUBIC_JOB, inputs={"variables": ["x"], "morphism": [{"num": "x^^2"}]})
    with pytest.raises(ParseError) as exc:
        parse_job(dump(doc))
    assert exc.value.path == "inputs/morphism/0/num"


# --------------------------------------------------------------- round trip
names = st.sampled_from(["x", "y", "a", "u"])
monomial = st.tuples(st.integers(-9, 9), st.fractions(min_value=1, max_value=5, max_denominator=3), names,
                     st.integers(0, 3))


def poly_text(terms):
    parts = [f"{c}*{v}^{k}" if c >= 0 else f"({c})*{v}^{k}" for c, _, v, k in terms]
    return " + ".join(parts) if parts else "0"


polys = st.lists(monomial, min_size=1, max_size=4).map(poly_text)
rats = st.fractions(min_value=-50, max_value=50, max_denominator=20).map(
    lambda q: f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)
)


@st.composite
def restrict_jobs(draw):
    doc = {"command": "restrict",
           "inputs": {"variables": ["x", "y"],
                      "equations": draw(st.lists(polys, max_size=2)),
                      "morphism": [{"num": draw(polys), "den": draw(polys)}]}}
    if draw(st.booleans()):
        doc["field"] = {"min_poly": draw(st.lists(rats, min_size=2, max_size=3)) + ["1"], "generator": "a"}
    return doc


@st.composite
def chabauty_jobs(draw):
    n = draw(st.integers(1, 4))
    nn = st.integers(0, 9)
    inputs = {"n": n, "g_C": draw(nn), "g_B": draw(nn), "mw_L_C": draw(nn), "mw_L_BL": draw(nn),
              "mw_K_B": draw(nn), "genus_Ch": draw(st.integers(-3, 9))}
    if draw(st.booleans()):
        inputs["degrees"] = draw(st.lists(st.integers(1, 5), min_size=n, max_size=n))
    return {"command": "chabauty", "inputs": inputs}


@st.composite
def model_jobs(draw):
    return {"command": "restrict",
            "inputs": {"model": "example-D", "params": {"a": draw(rats), "b": draw(rats), "d": draw(rats)},
                       "quotient": draw(st.booleans())}}


@settings(max_examples=150, deadline=None)
@given(st.one_of(restrict_jobs(), chabauty_jobs(), model_jobs(),
                 st.sampled_from([{"command": c} for c in ("table1", "enum-deg3", "paper-suite")])))
def test_parse_serialize_round_trip(doc):
    spec = parse_job(dump(doc))
    text = serialize_job(spec)
    again = parse_job(text)
    assert again == spec
    assert serialize_job(again) == text


# ------------------------------------------------------------------ running
def test_run_job_cubic_map():
    doc = run_job(parse_job(dump(CUBIC_JOB)))
    assert doc["exit_status"] == 0
    assert doc["results"]["rationality_equations"] == ["3*x1^2*x2 + 2*x2^3 - x1^2 - 2*x2^2"]


def test_run_job_computation_error():
    doc = run_job(parse_job(dump({"command": "restrict",
                                  "inputs": {"model": "example-D", "params": {"a": 0, "b": 0, "d": 5}}})))
    assert doc["exit_status"] == 1
    assert "SingularInstance" in doc["results"]["error"]


def test_paper_suite_passes():
    results, ok = run_paper_suite()
    assert ok, [r for r in results if not r["passed"]]
    assert len(results) >= 10


def write_job(tmp_path, doc):
    p = tmp_path / "job.json"
    p.write_text(dump(doc))
    return str(p)


def test_main_text_output(tmp_path, capsys):
    assert main(["--job", write_job(tmp_path, CUBIC_JOB)]) == 0
    out = capsys.readouterr().out
    assert "3*x1^2*x2 + 2*x2^3 - x1^2 - 2*x2^2" in out
    assert out.rstrip().endswith("exit status: 0")


def test_main_structured_output_to_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["--job", write_job(tmp_path, CUBIC_JOB), "--format", "structured", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["command"] == "restrict" and doc["exit_status"] == 0
    # deterministic: same job, same bytes
    out2 = tmp_path / "again.json"
    main(["--job", write_job(tmp_path, CUBIC_JOB), "--format", "structured", "--out", str(out2)])
    assert out.read_text() == out2.read_text()


def test_main_log_derivation(tmp_path, capsys):
    job = {"command": "restrict", "inputs": {"model": "example-D", "params": {"a": 1, "b": 3, "d": 13}}}
    assert main(["--job", write_job(tmp_path, job), "--log-derivation", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    steps = [s["step"] for s in doc["derivation_log"]]
    assert "eliminate" in steps and "discard" in steps
    assert doc["results"]["rhs"] == "x^12 + 172*x^8 + 192*x^6 + 8944*x^4 + 140608"


def test_main_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(dump({"command": "table1"})))
    assert main(["--job", "-"]) == 0
    assert "(6,3)" in capsys.readouterr().out


def test_main_exit_codes(tmp_path, capsys):
    assert main(["--job", write_job(tmp_path, {"command": "nope"})]) == 2
    assert main(["--job", str(tmp_path / "missing.json")]) == 2
    job = {"command": "chabauty", "inputs": {"n": 3, "g_C": 0, "g_B": 2, "mw_L_C": 0, "mw_L_BL": 0,
                                             "mw_K_B": 0, "genus_Ch": 0}}
    assert main(["--job", write_job(tmp_path, job)]) == 1
    capsys.readouterr()


def test_main_builtin_commands(capsys):
    assert main(["paper-suite"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out and "targets passed" in out
    assert main(["enum-deg3", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["results"]["configurations"]) == 2


def test_main_requires_one_source():
    with pytest.raises(SystemExit):
        main([])


def test_genus_job_from_maps():
    job = {"command": "genus", "field": {"min_poly": ["-2", "0", "1"]},
           "inputs": {"g_S": 0, "maps": [{"num": "x^3 - a*x^2"}, {"num": "x^3 + a*x^2"}]}}
    doc = run_job(parse_job(dump(job)))
    assert doc["exit_status"] == 0
    assert doc["results"]["arithmetic_genus"] == 0
    assert doc["results"]["formula_a"] == doc["results"]["formula_b"]


def test_genus_job_hyperelliptic():
    doc = run_job(parse_job(dump({"command": "genus", "inputs": {"hyperelliptic": "x^5 + x + 1"}})))
    assert doc["results"]["hyperelliptic_genus"] == 2


def test_fiber_types_job():
    job = {"command": "fiber-types", "field": {"min_poly": ["-2", "0", "1"]},
           "inputs": {"map": {"num": "x^3 - a*x^2"}, "at": ["0", "oo"]}}
    doc = run_job(parse_job(dump(job)))
    assert [f["types"] for f in doc["results"]["fibers"]] == [["(2,1)"], ["(3)"]]


def test_rational_leaves_are_fractions():
    spec = parse_job(dump({"command": "restrict",
                           "inputs": {"model": "ecc", "params": {"a0": "1", "a1": "-1/2", "a2": 3,
                                                                 "b1": 0, "b2": 1, "d": 2}}}))
    assert spec.inputs["params"]["a1"] == Fraction(-1, 2)
    assert isinstance(spec.inputs["params"]["a2"], Fraction)
