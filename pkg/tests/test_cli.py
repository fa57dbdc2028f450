import json

import pytest

from bi_notation.calculus import Col, Ew
from bi_notation.checker import audit_trace
from bi_notation.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, Check, Corpus, main, run
from bi_notation.corpus import reflexivity
from bi_notation.sexpr import parse_derivation
from shared_utilities.report_generator import TraceReportGenerator


class TestCheck:
    def test_valid_derivation(self, write_term, literal_cut, capsys):
        assert main(["check", write_term(literal_cut)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "✅ Valid derivation ending in {Eq(0,0)}" in out
        assert "last rule: Cut[Eq(0,0)]" in out
        assert "gate: failed" in out

    def test_eligible_derivation(self, write_term, literal_cut, capsys):
        assert main(["check", write_term(Ew(literal_cut))]) == EXIT_OK
        assert "✅ gate: eligible" in capsys.readouterr().out

    def test_improper_derivation(self, write_term, literal_cut, capsys):
        assert main(["check", write_term(Col(literal_cut))]) == EXIT_FAILURE
        out = capsys.readouterr().out
        assert "❌ Improper derivation: collapse-degree" in out

    def test_false_axiom(self, write_term, capsys):
        assert main(["check", write_term("(ax (seq (lt 1 0)))")]) == EXIT_FAILURE
        assert "AxiomNotTrue" in capsys.readouterr().err

    def test_parse_error(self, write_term, capsys):
        assert main(["check", write_term("(ax (seq (eq 0 0))")]) == EXIT_FAILURE
        assert "ParseError" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(Check(str(tmp_path / "missing.sexp"))) == EXIT_USAGE


class TestStep:
    def test_two_steps(self, write_term, literal_cut, capsys):
        assert main(["step", write_term(literal_cut), "--count", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("🔁 step 0: rep on Rep")
        assert lines[1].startswith("🔁 step 1: rep on Rep")
        assert lines[2].startswith("(r (eq 0 0)")

    def test_negative_count(self, write_term, literal_cut):
        assert main(["step", write_term(literal_cut), "--count", "-1"]) == EXIT_USAGE

    def test_ineligible_operator_term(self, write_term, literal_cut, capsys):
        assert main(["step", write_term(Col(literal_cut))]) == EXIT_FAILURE
        assert "ImproperDerivation: collapse-degree" in capsys.readouterr().err


class TestNormalize:
    def test_trace_file(self, write_term, literal_cut, tmp_path, capsys):
        trace_path = tmp_path / "trace.jsonl"
        assert main(["normalize", write_term(literal_cut), "--trace", str(trace_path)]) == EXIT_OK
        out = capsys.readouterr().out
        records = [json.loads(line) for line in trace_path.read_text(encoding="utf-8").splitlines()]
        assert [record["clause"] for record in records] == ["rep", "rep", "rep", "axiom"]
        assert all(record["passed"] for record in records)
        assert "🔁 4 steps, final end-sequent {Eq(0,0)}" in out
        assert "✅ cut-free: True" in out

        reloaded = TraceReportGenerator().load_trace(trace_path)
        assert len(reloaded.steps) == 4
        assert audit_trace(reloaded).summary() in out

    def test_pdf_report(self, write_term, literal_cut, tmp_path):
        pdf_path = tmp_path / "audit.pdf"
        assert main(["normalize", write_term(literal_cut), "--pdf", str(pdf_path)]) == EXIT_OK
        assert pdf_path.read_bytes().startswith(b"%PDF")

    def test_budget(self, write_term, literal_cut, capsys):
        assert main(["normalize", write_term(literal_cut), "--max-steps", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "⚠️ Budget of 1 steps exhausted" in out
        assert "(reduction budget exhausted)" in out

    def test_negative_budget(self, write_term, literal_cut):
        assert main(["normalize", write_term(literal_cut), "--max-steps", "-3"]) == EXIT_USAGE


class TestExpand:
    def test_tree(self, write_term, capsys):
        assert main(["expand", write_term(reflexivity()), "--depth", "1", "--omega", "0,3"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("ω[")
        assert lines[2].strip().startswith("[3] Ax")

    def test_records(self, write_term, capsys):
        args = ["expand", write_term(reflexivity()), "--depth", "1", "--omega", "0,3", "--records"]
        assert main(args) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [record["path"] for record in records] == ["root", "0", "3"]
        assert records[0]["truncated"] is False

    def test_default_depth_from_settings(self, write_term, env_settings, capsys):
        env_settings(BI_EXPAND_DEPTH="0")
        assert main(["expand", write_term(reflexivity())]) == EXIT_OK
        assert capsys.readouterr().out.strip().endswith("…")


class TestCorpus:
    def test_list(self, capsys):
        assert main(["corpus", "--list"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "set-cut" in out
        assert "omega-cut" in out

    def test_no_name_lists(self, capsys):
        assert run(Corpus()) == EXIT_OK
        assert "📚 Scenarios:" in capsys.readouterr().out

    def test_scenario(self, capsys):
        assert main(["corpus", "set-cut"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "expected tp: Ω~^Y" in out
        assert "PASS" in out

    def test_export(self, tmp_path, literal_cut):
        target = tmp_path / "literal-cut.sexp"
        assert main(["corpus", "literal-cut", "--export", str(target)]) == EXIT_OK
        assert parse_derivation(target.read_text(encoding="utf-8")) == literal_cut

    def test_unknown_entry(self, capsys):
        assert main(["corpus", "no-such-case"]) == EXIT_USAGE
        assert "unknown corpus entry" in capsys.readouterr().err


def test_caches_cleared_after_each_command(write_term, literal_cut, monkeypatch):
    calls = []
    monkeypatch.setattr("bi_notation.cli.clear_caches", lambda: calls.append(True))
    assert main(["check", write_term(literal_cut)]) == EXIT_OK
    assert main(["check", write_term("(ax (seq (lt 1 0)))")]) == EXIT_FAILURE
    assert len(calls) == 2


@pytest.mark.parametrize("argv, status", [([], EXIT_USAGE), (["--help"], EXIT_OK), (["check"], EXIT_USAGE)])
def test_argument_errors(argv, status):
    assert main(argv) == status
