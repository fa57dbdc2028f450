from bi_notation.calculus import Ax, E, R, Weak
from bi_notation.checker import AuditVerdict, CheckResult, audit_trace, check_local, check_step
from bi_notation.corpus import ONE_EQ, ZERO_EQ, conjunction, excluded_middle, reflexivity, scenario
from bi_notation.lang import eq, negate, sequent
from bi_notation.notation import Nat
from bi_notation.reduction import normalize, prepare, red


def names(verdict):
    return [check.name for check in verdict.checks]


class TestVerdict:
    def test_summary(self):
        verdict = AuditVerdict([CheckResult("sequent", True), CheckResult("degree", False, "root", "degree 1", 3)])
        lines = verdict.summary().splitlines()
        assert lines[0] == "FAIL: 1/2 checks passed"
        assert lines[1] == "[FAIL] step 3 degree at root: degree 1"
        assert not verdict.overall
        assert verdict.failures() == [verdict.checks[1]]

    def test_budget_is_reported(self):
        verdict = AuditVerdict([CheckResult("sequent", True)], budget_exhausted=True)
        assert verdict.summary() == "PASS: 1/1 checks passed (reduction budget exhausted)"

    def test_extend_tags_steps(self):
        verdict = AuditVerdict().extend(AuditVerdict([CheckResult("gate", True)]), step=2)
        assert verdict.by_step() == {2: [CheckResult("gate", True, "root", "", 2)]}


class TestCheckLocal:
    def test_sample_proofs(self, proofs):
        for d in proofs.values():
            assert check_local(d).overall

    def test_checks_run(self):
        verdict = check_local(conjunction())
        assert names(verdict) == ["principal"] + ["child-sequent", "child-degree", "child-proper"] * 2

    def test_cut_rank(self, literal_cut):
        assert "cut-rank" in names(check_local(literal_cut))

    def test_eigenvariable(self):
        assert "eigenvariable" in names(check_local(excluded_middle()))

    def test_explicit_samples(self):
        verdict = check_local(reflexivity(), samples=[Nat(7)])
        assert [check.where for check in verdict.checks[1:]] == ["7"] * 3

    def test_bad_index_is_a_failure(self):
        verdict = check_local(Ax(sequent(ZERO_EQ)), samples=[Nat(0)])
        assert not verdict.overall
        assert verdict.failures()[0].name == "child"

    def test_operator_terms(self, literal_cut):
        assert check_local(E(literal_cut)).overall
        assert check_local(scenario("set-cut").input).overall


class TestCheckStep:
    def test_faithful_step(self, literal_cut):
        before = E(literal_cut)
        verdict = check_step(before, red(before))
        assert verdict.overall
        assert names(verdict) == ["sequent", "degree", "proper", "gate", "reduct", "descent"]

    def test_wrong_reduct(self, literal_cut):
        before = E(literal_cut)
        verdict = check_step(before, Ax(sequent(ZERO_EQ)))
        failed = {check.name for check in verdict.failures()}
        assert failed == {"reduct", "descent"}

    def test_foreign_end_sequent(self, literal_cut):
        verdict = check_step(E(literal_cut), R(ZERO_EQ, Ax(sequent(eq(1, 1))), Ax(sequent(ZERO_EQ))))
        assert "sequent" in {check.name for check in verdict.failures()}

    def test_lost_formula_is_reported(self):
        axiom = Weak(sequent(ONE_EQ), Ax(sequent(ZERO_EQ, negate(ZERO_EQ))))
        other = E(Ax(sequent(negate(ZERO_EQ), ZERO_EQ)))
        verdict = check_step(R(ZERO_EQ, axiom, other), other)
        failed = {check.name: check for check in verdict.failures()}
        assert set(failed) == {"sequent", "reduct"}
        assert failed["sequent"].detail == f"lost {{{ONE_EQ}}}"

    def test_collapsing_step(self):
        s = scenario("set-cut")
        verdict = check_step(s.input, red(s.input))
        assert verdict.overall
        assert verdict.checks[-1].where == "q"


class TestAuditTrace:
    def test_literal_cut(self, literal_cut):
        verdict = audit_trace(normalize(prepare(literal_cut)))
        assert verdict.overall
        assert sorted(verdict.by_step()) == [0, 1, 2, 3]
        assert verdict.summary().startswith("PASS")

    def test_empty_trace(self):
        verdict = audit_trace(normalize(excluded_middle()))
        assert verdict.overall
        assert verdict.checks == []

    def test_records_take_verdict(self, literal_cut):
        trace = normalize(prepare(literal_cut))
        records = trace.records(audit_trace(trace))
        assert all(record["passed"] for record in records)

    def test_budget_flag_carried(self, literal_cut):
        verdict = audit_trace(normalize(prepare(literal_cut), max_steps=1))
        assert verdict.budget_exhausted
        assert "budget exhausted" in verdict.summary()
