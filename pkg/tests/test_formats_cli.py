import json
from fractions import Fraction as F

import pytest

from curvops import catalog as C
from curvops import corpus as corp
from curvops import curvmodel as cm
from curvops import geometry as geo
from curvops.cli import main
from curvops.exactla import signature
from curvops.exprparse import parse_expr
from curvops.formats import (
    InputFormatError,
    data_path,
    dump_chart,
    dump_model,
    load_input,
    loads,
    parse_chart,
    parse_model,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- model files --------------------------------------------------------------------

def test_bundled_m68_file():
    mdl = load_input(data_path("ex4_m68.model"))
    assert mdl.equal_components(C.m68_model())
    assert signature(mdl.G) == (8, 6)  # stated (6,8) is recorded as a conflict


def test_empty_curvature_section_gives_flat_model():
    mdl = loads("[gram]\n1 0\n0 -1\n[curvature]\n")
    assert isinstance(mdl, cm.Model) and mdl.is_flat()


def test_model_round_trip():
    for mdl in (C.m68_model(), C.clifford_model(), cm.make_Rc([[1, 0], [0, 1]], F(2, 3))):
        again, _ = parse_model(dump_model(mdl, "x"))
        assert again.equal_components(mdl)


@pytest.mark.parametrize("text,line,fragment", [
    ("[gram]\n1 2\n3 1\n", 2, "not symmetric"),
    ("[gram]\n1 1\n1 1\n", 1, "degenerate"),
    ("[gram]\n1 0\n0 1 5\n", 3, "expected 2"),
    ("[gram]\n1 0\n0 1\n[curvature]\n1 2 2 1 = x\n", 5, "rational"),
    ("[gram]\n1 0\n0 1\n[curvature]\n1 2 3 1 = 1\n", 5, "out of range"),
    ("[gram]\n1 0\n0 1\n[curvature]\n1 2 = 1\n", 5, "four"),
    ("[gram]\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n[curvature]\n# lone component\n1 2 3 4 = 1\n", 8, "violates"),
    ("[gram]\n1\n[gram]\n1\n", 3, "duplicate"),
    ("1 0\n[gram]\n1\n", 1, "before the first section"),
    ("[gram]\n1\n[tensor]\n", 3, "unknown section"),
])
def test_model_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(InputFormatError) as exc:
        loads(text, "m.model")
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"m.model:{line}:")


# -- chart files ---------------------------------------------------------------------

def test_bundled_charts_round_trip():
    for p in sorted(data_path("").glob("*.chart")):
        chart = load_input(p)
        again = parse_chart(dump_chart(chart))
        assert again.names == chart.names
        assert all(again.g[i, j] == chart.g[i, j] for i in range(chart.dim) for j in range(chart.dim))


def test_bundled_ex9_chart_matches_catalog():
    chart = load_input(data_path("ex9.chart"))
    ref = C.ex9_chart()
    assert all(chart.g[i, j] == ref.g[i, j] for i in range(4) for j in range(4))


def test_asymmetric_metric_entry_rejected():
    text = "[coords]\nx1 x2\n[metric]\n1 1 = 1\n1 2 = x1\n2 1 = x2\n2 2 = 1\n"
    with pytest.raises(InputFormatError) as exc:
        loads(text)
    assert exc.value.line == 6 and "asymmetric" in str(exc.value)


def test_repeated_consistent_metric_entry_allowed():
    chart = loads("[coords]\nx1 x2\n[metric]\n1 1 = 1\n1 2 = x1\n2 1 = x1\n2 2 = -1\n")
    assert chart.g[0, 1] == chart.g[1, 0]


@pytest.mark.parametrize("text,fragment", [
    ("[coords]\nx1 x1\n", "duplicate coordinate"),
    ("[coords]\nx1 x2\n[metric]\n1 1 = x3\n", "bad expression"),
    ("[coords]\nx1 x2\n[metric]\n1 3 = 1\n", "out of range"),
    ("[coords]\nx1 x2\n[metric]\n1 1 = 1\n2 2 = 1\n[orientation]\n2\n", "orientation"),
    ("[coords]\nx1 x2\n[metric]\n1 1 = 1\n2 2 = 1\n[point]\n1\n", "point has 1"),
    ("[chart]\nname = q\n", "need a [gram]"),
])
def test_chart_errors(text, fragment):
    with pytest.raises(InputFormatError) as exc:
        loads(text)
    assert fragment in str(exc.value)


def test_unreadable_file(tmp_path):
    with pytest.raises(InputFormatError):
        load_input(tmp_path / "missing.chart")
    bad = tmp_path / "bad.model"
    bad.write_bytes(b"\xff\xfe[gram]")
    with pytest.raises(InputFormatError):
        load_input(bad)


# -- corpus ---------------------------------------------------------------------------

def test_corpus_provenance_enforced():
    with pytest.raises(ValueError):
        corp.expect("signature", "1,1", "PAPER: no quote")
    with pytest.raises(ValueError):
        corp.expect("signature", "1,1", "DERIVED:")
    with pytest.raises(ValueError):
        corp.expect("signature", "1,1", "GUESS")
    corp.expect("signature", "1,1", "TRIVIAL")
    for e in corp.corpus():
        for x in e.expectations:
            corp.check_provenance(x.provenance)


def test_corpus_ids_cover_listed_entries():
    ids = set(corp.entry_ids())
    want = {"EX2", "EX3p2", "EX4", "EX5", "EX6a", "EX6b", "EX7", "EX8", "EX9", "EX10", "EX11",
            "T12-SD", "T12-ASD", "T13-1d", "T13-2c"} | {f"T15-{k}" for k in C.T15_METRICS}
    assert want <= ids


def test_corpus_filters():
    assert corp.run_corpus("T15")["total_entries"] == 11
    empty = corp.run_corpus("nonexistent")
    assert empty["total_entries"] == 0 and empty["passed"]


def test_full_corpus_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "corpus", "run", "--format", "json", "--no-timing")
    code2, out2, _ = run(capsys, "corpus", "run", "--format", "json", "--no-timing", "--jobs", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["schema"] == "curvops.report/1" and doc["passed"]


# -- CLI ------------------------------------------------------------------------------

def test_cli_version_and_usage(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and "curvops" in out
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_analyze_ex9(capsys):
    code, out, _ = run(capsys, "analyze", str(data_path("ex9.chart")), "--point", "0,0,0,0")
    assert code == 0
    rep = json.loads(out)
    v = {k: d["holds"] for k, d in rep["verdicts"].items()}
    assert v["jacobi_videv"] and v["skew_tsankov"] and v["conformal_osserman"] and v["locally_symmetric"]
    assert not v["osserman"] and not v["jacobi_tsankov"]
    assert len(rep["input"]["sha256"]) == 64 and rep["signature"] == [2, 2]


def test_analyze_ex10(capsys):
    _, out, _ = run(capsys, "analyze", str(data_path("ex10.chart")), "--point", "1,0,0,0")
    v = {k: d["holds"] for k, d in json.loads(out)["verdicts"].items()}
    assert v["einstein"] and v["jacobi_videv"] and v["skew_tsankov"]
    assert not (v["jacobi_tsankov"] or v["osserman"] or v["conformal_osserman"])


def test_analyze_flat_chart(capsys):
    _, out, _ = run(capsys, "analyze", str(data_path("flat4.chart")), "--point", "1,2,3,4")
    v = {k: d["holds"] for k, d in json.loads(out)["verdicts"].items()}
    assert [k for k, ok in v.items() if not ok] == ["three_skew_nilpotent"]


def test_analyze_model_markdown_and_props(capsys):
    code, out, _ = run(capsys, "analyze", str(data_path("ex4_m68.model")),
                       "--props", "skew_tsankov,jacobi_tsankov", "--format", "md")
    assert code == 0
    assert "| skew_tsankov | no |" in out and "| jacobi_tsankov | yes |" in out
    code, _, err = run(capsys, "analyze", str(data_path("ex4_m68.model")), "--props", "bogus")
    assert code == 2 and "unknown properties" in err


def test_analyze_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.model"
    bad.write_text("[gram]\n1 2\n3 1\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and f"{bad}:2:" in err
    code, _, err = run(capsys, "analyze", str(data_path("ex9.chart")), "--point", "1,2")
    assert code == 2
    code, _, err = run(capsys, "analyze", str(data_path("ex9.chart")), "--point", "a,b,c,d")
    assert code == 2
    code, _, err = run(capsys, "analyze", str(data_path("ex9.chart")), "--props", "osserman")
    assert code == 2 and "--point" in err


def test_analyze_symbolic_chart(capsys):
    code, out, _ = run(capsys, "analyze", str(data_path("ex6b.chart")), "--props", "locally_symmetric")
    rep = json.loads(out)
    assert code == 0 and rep["tau"] == geo.scalar_curvature(C.ex6b_chart()).render()


def test_spectrum_examples(capsys):
    code, out, _ = run(capsys, "spectrum", str(data_path("t15_1b.chart")), "--operator", "jw",
                       "--direction", "1,0,1/2,0", "--point", "1,0,0,0", "--format", "json")
    assert code == 0
    assert json.loads(out)["char_poly_factored"] == "lambda^2*(lambda^2 + 1/4)"
    code, out, _ = run(capsys, "spectrum", str(data_path("t15_3a.chart")), "--operator", "jw",
                       "--direction", "1,0,1/2,0", "--point", "1,1,0,0", "--format", "json")
    got = json.loads(out)["char_poly_factored"]
    assert parse_expr(got, ["lambda"]) == parse_expr("lambda^2*(lambda^2 - 49/4)", ["lambda"])
    code, out, _ = run(capsys, "spectrum", str(data_path("flat4.chart")), "--operator", "jw",
                       "--direction", "1,0,1/2,0", "--point", "0,0,0,0", "--format", "json")
    assert json.loads(out)["char_poly"] == "lambda^4"
    code, out, _ = run(capsys, "spectrum", str(data_path("ex11_rc4.model")), "--operator", "ricci")
    assert code == 0 and out.strip()


def test_spectrum_errors(capsys):
    code, _, err = run(capsys, "spectrum", str(data_path("flat4.chart")), "--operator", "jw",
                       "--direction", "1,0,1/2,0")
    assert code == 2 and "--point" in err
    code, _, err = run(capsys, "spectrum", str(data_path("flat4.chart")), "--operator", "jw",
                       "--point", "0,0,0,0")
    assert code == 2 and "--direction" in err
    code, _, err = run(capsys, "spectrum", str(data_path("ex8.chart")), "--operator", "ricci",
                       "--point", "0,1,0,0")
    assert code == 2 and "not rational" in err


def test_corpus_cli_parameters(capsys):
    code, out, _ = run(capsys, "corpus", "run", "--param", "a11=0", "--no-timing")
    assert code == 1 and "EX5 | FAIL" in out
    code, _, _ = run(capsys, "corpus", "run", "--param", "a11=1", "--no-timing")
    assert code == 0
    code, _, err = run(capsys, "corpus", "run", "--param", "zz=1")
    assert code == 2 and "unknown parameter zz" in err
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "T15-3c" in out


def test_corpus_cli_mismatch_exit_code(capsys, monkeypatch):
    bad = corp.CorpusEntry("ZZ-bad", "model", C.m68_model,
                           (corp.expect("signature", "6,8", "TRIVIAL"),), "deliberate mismatch")
    monkeypatch.setattr(corp, "corpus", lambda: (bad,))
    code, out, _ = run(capsys, "corpus", "run", "--filter", "ZZ", "--no-timing")
    assert code == 1 and "expected 6,8, got 8,6" in out
