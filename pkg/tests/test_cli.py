import json

import pytest

from ctxdl.cli import run
from ctxdl.textio import parse

IRREFLEXIVE = """ontology irreflexive {
  exists(capitalOf, top) sub forall(inv(capitalOf), bottom) .
  capitalOf(babylon, babylon) .
}
"""

BABYLON = """ontology babylon {
  capitalOf(babylon, babylonianEmpire) .
}
"""

PREMISE = """ontology premise {
  capitalOf rsub cityOf .
  capitalOf(babylon, babylonianEmpire) .
}
"""

CONCLUSION = """ontology conclusion {
  cityOf(babylon, babylonianEmpire) .
}
"""

CONTEXT = """annotation CA anchor a {
  validity(a, t) .
  Interval(t) .
  from(t, 609BC) .
  to(t, 539BC) .
  prov(a, w) .
  name(w, wikipedia) .
  Wiki(w) .
}
"""


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("irreflexive.dl", IRREFLEXIVE),
        ("babylon.dl", BABYLON),
        ("premise.dl", PREMISE),
        ("conclusion.dl", CONCLUSION),
        ("ctx.dl", CONTEXT),
    ]:
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


class TestContextualize:
    def test_writes_parseable_output(self, files, capsys):
        out = str(files["dir"] / "out.dl")
        code = run(
            [
                "contextualize", "--strategy", "ndterms",
                "-O", files["babylon.dl"], "-A", files["ctx.dl"], "-o", out,
            ]
        )
        assert code == 0
        [onto] = parse((files["dir"] / "out.dl").read_text()).ontologies()
        names = {t.name for t in onto.signature}
        assert "capitalOf@CA" in names
        assert "isContextualPartOf" in names

    def test_every_strategy_name(self, files):
        for strategy in ("ndterms", "ndfluents", "rdf", "nary", "nary-concept", "singleton"):
            out = str(files["dir"] / f"out-{strategy}.dl")
            code = run(
                [
                    "contextualize", "--strategy", strategy,
                    "-O", files["babylon.dl"], "-A", files["ctx.dl"], "-o", out,
                ]
            )
            assert code == 0

    def test_output_is_byte_deterministic(self, files):
        outs = []
        for name in ("first.dl", "second.dl"):
            out = str(files["dir"] / name)
            run(
                [
                    "contextualize", "--strategy", "singleton",
                    "-O", files["babylon.dl"], "-A", files["ctx.dl"], "-o", out,
                ]
            )
            outs.append((files["dir"] / name).read_bytes())
        assert outs[0] == outs[1]


class TestModels:
    def test_satisfiable_exits_zero(self, files, capsys):
        assert run(["models", files["babylon.dl"], "--bound", "2"]) == 0
        assert "satisfiable at size 1" in capsys.readouterr().out

    def test_inconsistent_exits_one(self, files, capsys):
        assert run(["models", files["irreflexive.dl"], "--bound", "3"]) == 1
        assert "no model up to size 3" in capsys.readouterr().out

    def test_witness_report(self, files):
        report = str(files["dir"] / "report.jsonl")
        run(["models", files["babylon.dl"], "--bound", "2", "--report", report])
        [record] = [json.loads(line) for line in open(report)]
        assert record["outcome"] == "satisfiable"
        assert record["witness"] is not None
        [model] = parse(open(record["witness"]).read()).models()
        assert model.size == 1


class TestEntails:
    def test_entailed_exits_zero(self, files, capsys):
        code = run(["entails", "-P", files["premise.dl"], "-C", files["conclusion.dl"], "--bound", "3"])
        assert code == 0
        assert "no counterexample up to 3" in capsys.readouterr().out

    def test_not_entailed_exits_one(self, files):
        code = run(["entails", "-P", files["babylon.dl"], "-C", files["conclusion.dl"], "--bound", "3"])
        assert code == 1


class TestCheck:
    def test_rdf_inconsistency_violated(self, files, capsys):
        code = run(
            [
                "check", "--property", "inconsistency", "--strategy", "rdf",
                "-O", files["irreflexive.dl"], "-A", files["ctx.dl"], "--bound", "3",
            ]
        )
        assert code == 1
        assert "violated" in capsys.readouterr().out

    def test_ndterms_inconsistency_holds(self, files, capsys):
        code = run(
            [
                "check", "--property", "inconsistency", "--strategy", "ndterms",
                "-O", files["irreflexive.dl"], "-A", files["ctx.dl"], "--bound", "3",
            ]
        )
        assert code == 0

    def test_entailment_property_reports_witness(self, files):
        report = str(files["dir"] / "check.jsonl")
        code = run(
            [
                "check", "--property", "entailment", "--strategy", "rdf",
                "-P", files["premise.dl"], "-C", files["conclusion.dl"],
                "-A", files["ctx.dl"], "--bound", "3", "--report", report,
            ]
        )
        assert code == 1
        [record] = [json.loads(line) for line in open(report)]
        assert record["property"] == "entailment"
        assert record["strategy"] == "rdf"
        assert record["outcome"] == "violated"
        assert record["witness"]

    def test_soundness_holds(self, files):
        code = run(
            [
                "check", "--property", "soundness", "--strategy", "ndterms",
                "-O", files["babylon.dl"], "-A", files["ctx.dl"], "--bound", "3",
            ]
        )
        assert code == 0


class TestCombine:
    def test_two_contexts(self, files, tmp_path):
        other_ctx = tmp_path / "ctx2.dl"
        other_ctx.write_text("annotation CB anchor b2 {\n  source(b2, doc2) .\n}\n")
        out = str(tmp_path / "combined.dl")
        code = run(
            [
                "combine", "--strategy", "ndterms",
                "--pair", f"{files['babylon.dl']}:{files['ctx.dl']}",
                "--pair", f"{files['premise.dl']}:{other_ctx}",
                "-o", out,
            ]
        )
        assert code == 0
        [onto] = parse(open(out).read()).ontologies()
        names = {t.name for t in onto.signature}
        assert "capitalOf@CA" in names and "capitalOf@CB" in names


class TestValidateAndErrors:
    def test_valid_annotation(self, files, capsys):
        assert run(["validate", "-A", files["ctx.dl"]]) == 0
        assert "is valid" in capsys.readouterr().out

    def test_disconnected_annotation_exits_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.dl"
        bad.write_text("annotation B anchor a {\n  validity(a, t) .\n  name(w, wikipedia) .\n}\n")
        assert run(["validate", "-A", str(bad)]) == 1
        assert "invalid annotation" in capsys.readouterr().out

    def test_parse_error_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "syntax.dl"
        bad.write_text("ontology broken { and( }\n")
        assert run(["models", str(bad)]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file_exits_two(self):
        assert run(["models", "/nonexistent/x.dl"]) == 2

    def test_bound_out_of_range_exits_two(self, files, capsys):
        assert run(["models", files["babylon.dl"], "--bound", "9"]) == 2

    def test_budget_env_override(self, files, monkeypatch, capsys):
        monkeypatch.setenv("CTXDL_BUDGET", "1")
        code = run(["models", files["irreflexive.dl"], "--bound", "3"])
        assert code == 2
        assert "budget" in capsys.readouterr().err
