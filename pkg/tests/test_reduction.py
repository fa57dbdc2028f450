import pytest

from bi_notation.calculus import (
    CACHE_SIZE,
    COLLAPSE_DEGREE,
    Ax,
    Col,
    Cut,
    E,
    Ew,
    MapRed,
    OmI,
    R,
    Selector,
    Sub,
    Template,
    Weak,
    end_sequent,
)
from bi_notation.checker import check_step
from bi_notation.config import get_settings
from bi_notation.corpus import IS_ZERO, ONE_EQ, REFLEXIVITY, ZERO_EQ, excluded_middle, reflexivity, set_witness
from bi_notation.errors import GateFailed, ImproperDerivation, NotBIMinus, NotPi1EndSequent
from bi_notation.lang import eq, negate, sequent
from bi_notation.notation import Nat, child
from bi_notation.reduction import (
    AXIOM,
    LOGICAL_ROOT,
    LOGICAL_TP,
    REP,
    WEAKENING,
    _reduce,
    clear_caches,
    gate,
    is_cut_free,
    normalize,
    prepare,
    red,
    reduce_step,
    require_gate,
    strip_lazy,
)

NEG_ZERO_EQ = negate(ZERO_EQ)


def reflexivity_with_cut(cut_formula):
    """ω-rule whose schema cuts on cut_formula against an axiom"""
    schema = E(Cut(cut_formula, Ax(sequent(eq("n", "n"))), Ax(sequent(cut_formula, negate(cut_formula)))))
    return OmI(REFLEXIVITY, Template("n", schema))


class TestGate:
    def test_cut_free_proof_is_eligible(self):
        report = gate(excluded_middle())
        assert report.eligible
        assert str(report) == "eligible"

    def test_cut_has_positive_degree(self, literal_cut):
        report = gate(literal_cut)
        assert not report.eligible
        assert not report.degree_zero
        assert "degree_zero" in str(report)

    def test_improper_derivation(self, literal_cut):
        report = gate(Col(literal_cut))
        assert not report.proper
        assert not report.eligible
        assert report.tp_ok is None
        assert "tp not computed" in str(report)

    def test_require_gate_names_the_properness_clause(self, literal_cut):
        with pytest.raises(ImproperDerivation) as info:
            require_gate(Col(literal_cut))
        assert info.value.clause == COLLAPSE_DEGREE
        assert str(info.value).startswith(COLLAPSE_DEGREE)

    def test_require_gate_on_eligible_input(self, literal_cut):
        assert require_gate(Ew(literal_cut)).eligible

    def test_second_order_existential_end_sequent(self):
        assert not gate(set_witness()).pi1_end

    def test_red_outside_the_gate(self, literal_cut):
        with pytest.raises(GateFailed):
            red(literal_cut)


class TestPrepare:
    def test_wraps_in_ew(self, literal_cut):
        assert prepare(literal_cut) == Ew(literal_cut)
        assert gate(prepare(literal_cut)).eligible

    def test_operators_rejected(self, literal_cut):
        with pytest.raises(NotBIMinus):
            prepare(E(literal_cut))

    def test_existential_end_sequent_rejected(self):
        with pytest.raises(NotPi1EndSequent):
            prepare(set_witness())


class TestRed:
    def test_rep_clause_returns_first_premise(self, literal_cut):
        after, clause = reduce_step(E(literal_cut))
        assert clause == REP
        assert after == R(ZERO_EQ, E(literal_cut.d0), E(literal_cut.d1))
        assert after == child(E(literal_cut), Nat(0))

    def test_axiom_clause(self):
        d = E(Ew(Ax(sequent(ZERO_EQ))))
        assert reduce_step(d) == (Ax(sequent(ZERO_EQ)), AXIOM)

    def test_logical_rule_at_the_root(self):
        after, clause = reduce_step(excluded_middle())
        assert clause == LOGICAL_ROOT
        assert after == excluded_middle()

    def test_logical_rule_from_tp(self):
        after, clause = reduce_step(Ew(excluded_middle()))
        assert clause == LOGICAL_TP
        assert after.eigen == "Y"
        assert after.d0 == Ew(excluded_middle().d0)

    def test_omega_rule_from_tp_is_lazy(self):
        d = Ew(reflexivity())
        after, clause = reduce_step(d)
        assert clause == LOGICAL_TP
        assert after == OmI(REFLEXIVITY, Selector(d))

    def test_axiom_cut_keeps_weakened_formulas(self):
        axiom = Weak(sequent(ONE_EQ), Ax(sequent(ZERO_EQ, NEG_ZERO_EQ)))
        other = E(Ax(sequent(NEG_ZERO_EQ, ZERO_EQ)))
        d = R(ZERO_EQ, axiom, other)
        after, clause = reduce_step(d)
        assert clause == REP
        assert after == Weak(sequent(ONE_EQ), other)
        assert end_sequent(after) == end_sequent(d) == sequent(ZERO_EQ, NEG_ZERO_EQ, ONE_EQ)
        assert check_step(d, after).overall

    def test_substitution_over_reused_eigenvariable(self):
        d = Sub("Y", IS_ZERO, Col(excluded_middle()))
        after = red(d)
        assert end_sequent(after) == end_sequent(d)
        assert after.eigen != "Y"
        assert check_step(d, after).overall

    def test_weakening_is_kept_around_the_reduct(self):
        d = Weak(sequent(ONE_EQ), E(Ew(Ax(sequent(ZERO_EQ)))))
        after, clause = reduce_step(d)
        assert clause == WEAKENING
        assert after == Weak(sequent(ONE_EQ), Ax(sequent(ZERO_EQ)))

    def test_end_sequent_preserved(self, proofs):
        for d in proofs.values():
            prepared = prepare(d)
            assert end_sequent(red(prepared)) == end_sequent(prepared)


class TestCutFree:
    def test_cut_free_proofs(self, proofs):
        assert is_cut_free(proofs["excluded-middle"])
        assert is_cut_free(proofs["reflexivity"])

    def test_pending_cut(self, literal_cut):
        assert not is_cut_free(E(literal_cut))

    def test_strip_lazy(self):
        family = Template("n", Ax(sequent(eq("n", "n"))))
        assert strip_lazy(OmI(REFLEXIVITY, MapRed(MapRed(family)))) == reflexivity()


class TestNormalize:
    def test_literal_cut(self, literal_cut):
        trace = normalize(prepare(literal_cut))
        assert [step.clause for step in trace.steps] == [REP, REP, REP, AXIOM]
        assert trace.final == Ax(sequent(ZERO_EQ))
        assert not trace.budget_exhausted
        assert trace.cut_free()

    def test_steps_are_chained(self, literal_cut):
        trace = normalize(prepare(literal_cut))
        assert trace.steps[0].before == trace.initial
        for previous, current in zip(trace.steps, trace.steps[1:]):
            assert previous.after == current.before
        assert [step.index for step in trace.steps] == [0, 1, 2, 3]

    def test_cut_free_input_takes_no_steps(self):
        trace = normalize(excluded_middle())
        assert trace.steps == []
        assert trace.final == excluded_middle()

    def test_prepared_cut_free_input_comes_back(self):
        trace = normalize(prepare(excluded_middle()))
        assert trace.final == excluded_middle()
        assert [step.clause for step in trace.steps] == [LOGICAL_TP] * 3 + [AXIOM]

    def test_omega_rule_stays_lazy(self):
        trace = normalize(prepare(reflexivity()))
        assert isinstance(trace.final, OmI)
        assert isinstance(trace.final.family, Selector)
        assert trace.lazy_families == 1
        assert trace.cut_free()

    def test_omega_cut(self, proofs):
        trace = normalize(prepare(proofs["omega-cut"]))
        assert trace.final == Ax(sequent(ZERO_EQ))
        assert trace.cut_free()

    @pytest.mark.parametrize("name", ["excluded-middle", "reflexivity", "second-order-cut", "literal-cut", "omega-cut", "successor-exists"])
    def test_sample_proofs_normalize(self, proofs, name):
        prepared = prepare(proofs[name])
        trace = normalize(prepared)
        assert trace.cut_free()
        assert end_sequent(trace.final) == end_sequent(prepared)

    def test_budget(self, literal_cut):
        trace = normalize(prepare(literal_cut), max_steps=2)
        assert len(trace.steps) == 2
        assert trace.budget_exhausted
        assert not trace.cut_free()

    def test_budget_from_settings(self, literal_cut, env_settings):
        env_settings(BI_MAX_STEPS="1")
        trace = normalize(prepare(literal_cut))
        assert len(trace.steps) == 1
        assert trace.budget_exhausted

    def test_records(self, literal_cut):
        records = normalize(prepare(literal_cut)).records()
        assert [record["step"] for record in records] == [0, 1, 2, 3]
        assert records[-1]["clause"] == AXIOM
        assert records[-1]["sequent"] == "{Eq(0,0)}"
        assert all(record["passed"] is None for record in records)
        assert all(record["degree"] == 0 for record in records)


class TestSymbolicTemplates:
    def test_template_reduced_once_for_all_instances(self):
        d = reflexivity_with_cut(eq("n", "n"))
        assert gate(d).eligible
        trace = normalize(d)
        assert len(trace.steps) == 3
        assert trace.final == reflexivity()
        assert all(step.path[0] == "ω" for step in trace.steps)
        assert all(step.params == ("n",) for step in trace.steps)

    def test_parameter_sensitive_template_left_lazy(self):
        d = reflexivity_with_cut(ZERO_EQ)
        trace = normalize(d)
        assert trace.steps == []
        assert trace.lazy_families == 1
        assert isinstance(trace.final.family, MapRed)
        expected = R(ZERO_EQ, E(Ax(sequent(eq(2, 2)))), E(Ax(sequent(ZERO_EQ, NEG_ZERO_EQ))))
        assert child(trace.final, Nat(2)) == expected


class TestCaches:
    def test_memo_size_follows_settings(self):
        assert _reduce.cache_info().maxsize == CACHE_SIZE == get_settings().cache_size

    def test_clear_caches(self, literal_cut):
        red(E(literal_cut))
        assert _reduce.cache_info().currsize > 0
        clear_caches()
        assert _reduce.cache_info().currsize == 0
        assert end_sequent.cache_info().currsize == 0

    def test_cache_size_setting(self, env_settings):
        assert env_settings(BI_CACHE_SIZE="128").cache_size == 128
