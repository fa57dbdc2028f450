import pytest

from bi_notation.calculus import AllSetI, AndI, Ax, Col, Cut, E, Ew, R, Sub, Weak, end_sequent, validate
from bi_notation.checker import check_local
from bi_notation.corpus import (
    EXCLUDED_MIDDLE,
    IS_ZERO,
    REFLEXIVITY,
    ZERO_EQ,
    conjunction,
    excluded_middle,
    excluded_middle_instance,
    reflexivity,
    refuting_instance,
    scenario,
    set_witness,
)
from bi_notation.errors import IndexOutOfRange, InvalidOmegaIndex, ParameterSensitive
from bi_notation.lang import And, ForallSet, eq, instance_abs, instance_set, lt, negate, sequent, set_lit
from bi_notation.notation import (
    AllSetS,
    AndS,
    ArityKind,
    AxS,
    CutS,
    Nat,
    Omega,
    OmegaIndex,
    OmegaS,
    OmegaTildeS,
    OmS,
    OrS,
    RepS,
    arity,
    canonical_index,
    child,
    expand,
    make_index,
    minor_formulas,
    opaque_parameters,
    render_tree,
    rule_of,
    sample_indices,
    signature,
    tree_records,
)

NEG_ZERO_EQ = negate(ZERO_EQ)


class TestRuleOf:
    def test_stored_rules(self, literal_cut):
        assert rule_of(Ax(sequent(ZERO_EQ))) == AxS(sequent(ZERO_EQ))
        assert rule_of(literal_cut) == CutS(ZERO_EQ)
        assert rule_of(conjunction()) == AndS(And(ZERO_EQ, eq(1, 1)))
        assert rule_of(reflexivity()) == OmS(REFLEXIVITY)
        assert rule_of(excluded_middle()) == AllSetS("Y", EXCLUDED_MIDDLE)

    def test_second_order_witness_is_omega(self):
        assert rule_of(set_witness()) == OmegaS(negate(EXCLUDED_MIDDLE))

    def test_elimination_over_cut_repeats(self, literal_cut):
        assert rule_of(E(literal_cut)) == RepS()
        assert rule_of(Ew(literal_cut)) == RepS()

    def test_elimination_passes_other_rules_through(self):
        assert rule_of(E(Ax(sequent(ZERO_EQ)))) == AxS(sequent(ZERO_EQ))
        assert rule_of(Ew(conjunction())) == AndS(And(ZERO_EQ, eq(1, 1)))

    def test_substitution_relabels(self):
        d = Sub("Y", IS_ZERO, Col(excluded_middle_instance("Y")))
        assert rule_of(d) == OrS(1, instance_abs(EXCLUDED_MIDDLE, IS_ZERO))

    def test_impredicative_cut(self):
        cut = R(EXCLUDED_MIDDLE, excluded_middle(), set_witness())
        assert rule_of(E(cut)) == OmegaTildeS("Y", negate(EXCLUDED_MIDDLE))
        assert rule_of(Col(E(cut))) == RepS()

    def test_cut_not_principal_on_the_left(self):
        d = R(ZERO_EQ, Ax(sequent(eq(1, 1))), Ax(sequent(NEG_ZERO_EQ, ZERO_EQ)))
        assert rule_of(d) == AxS(sequent(eq(1, 1)))

    def test_cut_against_axiom(self):
        d = R(ZERO_EQ, Ax(sequent(ZERO_EQ)), Ax(sequent(ZERO_EQ, NEG_ZERO_EQ)))
        assert rule_of(d) == RepS()
        assert child(d, Nat(0)) == Ax(sequent(ZERO_EQ))


class TestChild:
    def test_elimination_over_cut(self, literal_cut):
        a0, a1 = literal_cut.d0, literal_cut.d1
        assert child(E(literal_cut), Nat(0)) == R(ZERO_EQ, E(a0), E(a1))

    def test_weak_elimination_over_cut(self, literal_cut):
        a0, a1 = literal_cut.d0, literal_cut.d1
        assert child(Ew(literal_cut), Nat(0)) == E(Cut(ZERO_EQ, Ew(a0), Ew(a1)))

    def test_omega_rule_premises(self):
        assert child(reflexivity(), Nat(5)) == Ax(sequent(eq(5, 5)))

    def test_index_out_of_range(self, literal_cut):
        with pytest.raises(IndexOutOfRange):
            child(Ax(sequent(ZERO_EQ)), Nat(0))
        with pytest.raises(IndexOutOfRange):
            child(conjunction(), Nat(2))
        with pytest.raises(IndexOutOfRange):
            child(E(literal_cut), Nat(1))

    def test_omega_index_on_finite_rule(self, literal_cut):
        q = make_index(Col(excluded_middle_instance("Y")), "Y", EXCLUDED_MIDDLE)
        with pytest.raises(IndexOutOfRange):
            child(literal_cut, Omega(q))

    def test_second_order_witness_premise(self):
        q = make_index(Col(excluded_middle_instance("Y")), "Y", EXCLUDED_MIDDLE)
        expected = R(
            instance_abs(EXCLUDED_MIDDLE, IS_ZERO),
            Sub("Y", IS_ZERO, Col(excluded_middle_instance("Y"))),
            refuting_instance(),
        )
        assert child(set_witness(), Omega(q)) == expected

    def test_index_with_wrong_target(self):
        other = ForallSet("X", set_lit("X", 0))
        q = OmegaIndex(Col(excluded_middle_instance("Y")), "Y", other)
        with pytest.raises(InvalidOmegaIndex) as excinfo:
            child(set_witness(), Omega(q))
        assert excinfo.value.clause == "target"

    def test_axiom_cut_needs_the_negation_in_the_axiom(self):
        bare, both = Ax(sequent(ZERO_EQ)), Ax(sequent(ZERO_EQ, negate(ZERO_EQ)))
        other = Ax(sequent(negate(ZERO_EQ), ZERO_EQ))
        assert child(R(ZERO_EQ, both, other), Nat(0)) == other
        assert child(R(ZERO_EQ, bare, other), Nat(0)) == bare
        weakened = Weak(sequent(negate(ZERO_EQ)), bare)
        assert child(R(ZERO_EQ, weakened, other), Nat(0)) == weakened

    def test_weakening_is_transparent(self):
        d = Weak(sequent(lt(0, 1)), conjunction())
        assert rule_of(d) == rule_of(conjunction())
        assert child(d, Nat(1)) == child(conjunction(), Nat(1))


class TestSubstitutedEigenvariable:
    """Sub over a collapse whose eigenvariable has the substituted name"""

    def derivation(self):
        return Sub("Y", IS_ZERO, Col(excluded_middle()))

    def test_eigenvariable_renamed_apart(self):
        symbol = rule_of(self.derivation())
        assert isinstance(symbol, AllSetS)
        assert symbol.eigen != "Y"
        assert symbol.principal == EXCLUDED_MIDDLE

    def test_premise_keeps_the_renamed_eigenvariable_free(self):
        d = self.derivation()
        eigen = rule_of(d).eigen
        premise = child(d, Nat(0))
        assert end_sequent(premise) == sequent(instance_set(EXCLUDED_MIDDLE, eigen))

    def test_local_check(self):
        d = validate(self.derivation())
        assert check_local(d).overall


class TestOmegaIndex:
    def test_valid_index(self):
        q = make_index(Col(excluded_middle_instance("Y")), "Y", EXCLUDED_MIDDLE)
        assert q.var == "Y"
        assert str(q) == "q[Y]"

    @pytest.mark.parametrize(
        "witness, target, clause",
        [
            (Col(Ew(Ax(sequent(ZERO_EQ)))), REFLEXIVITY, "target"),
            (Ax(sequent(ZERO_EQ)), EXCLUDED_MIDDLE, "collapse-shape"),
            (Col(Ew(Ax(sequent(set_lit("Y", 0), set_lit("Y", 0, False))))), EXCLUDED_MIDDLE, "fresh-variable"),
        ],
    )
    def test_invalid_index(self, witness, target, clause):
        with pytest.raises(InvalidOmegaIndex) as excinfo:
            make_index(witness, "Y", target)
        assert excinfo.value.clause == clause

    def test_improper_witness(self, literal_cut):
        with pytest.raises(InvalidOmegaIndex) as excinfo:
            make_index(Col(literal_cut), "Y", EXCLUDED_MIDDLE)
        assert excinfo.value.clause == "proper"

    def test_canonical_index_of_impredicative_cut(self):
        s = scenario("set-cut")
        q = canonical_index(s.input, s.expected_tp)
        assert q.var == "Y"
        assert q.target == EXCLUDED_MIDDLE
        assert isinstance(q.witness, Col)


class TestSignatures:
    def test_arity(self):
        assert arity(AxS(sequent(ZERO_EQ))).size == 0
        assert arity(AndS(And(ZERO_EQ, ZERO_EQ))).size == 2
        assert arity(OmS(REFLEXIVITY)).kind is ArityKind.OMEGA
        assert arity(OmegaS(negate(EXCLUDED_MIDDLE))).kind is ArityKind.BIG_OMEGA
        assert arity(OmegaTildeS("Y", negate(EXCLUDED_MIDDLE))).with_zero
        assert str(arity(OmS(REFLEXIVITY))) == "ω"

    def test_minor_formulas(self):
        assert minor_formulas(CutS(ZERO_EQ), Nat(1)) == sequent(NEG_ZERO_EQ)
        assert minor_formulas(OmS(REFLEXIVITY), Nat(4)) == sequent(eq(4, 4))
        symbol = OmegaTildeS("Y", negate(EXCLUDED_MIDDLE))
        assert minor_formulas(symbol, Nat(0)) == sequent(excluded_middle_instance("Y").principal)

    def test_signature(self):
        sig = signature(AndS(And(ZERO_EQ, eq(1, 1))))
        assert sig.principal == sequent(And(ZERO_EQ, eq(1, 1)))
        assert sig.minor(Nat(1)) == sequent(eq(1, 1))


class TestOpaqueParameters:
    def test_membership_depending_on_parameter_is_refused(self):
        d = R(ZERO_EQ, Ax(sequent(eq("n", "n"))), Ax(sequent(ZERO_EQ, NEG_ZERO_EQ)))
        assert rule_of(d) == AxS(sequent(eq("n", "n")))
        with opaque_parameters("n"):
            with pytest.raises(ParameterSensitive):
                rule_of(d)

    def test_context_is_restored(self):
        with opaque_parameters("n"):
            pass
        d = R(ZERO_EQ, Ax(sequent(eq("n", "n"))), Ax(sequent(ZERO_EQ, NEG_ZERO_EQ)))
        assert rule_of(d) == AxS(sequent(eq("n", "n")))


class TestSampling:
    def test_finite_indices_in_full(self):
        assert sample_indices(conjunction()) == [Nat(0), Nat(1)]

    def test_omega_picks(self):
        assert sample_indices(reflexivity(), omega_picks=(1, 4)) == [Nat(1), Nat(4)]

    def test_canonical_witness_for_collapsing_rule(self):
        s = scenario("set-cut")
        indices = sample_indices(s.input)
        assert indices[0] == Nat(0)
        assert indices[1] == Omega(canonical_index(s.input, s.expected_tp))

    def test_witnesses_from_second_order_introductions(self):
        both = AndI(
            And(EXCLUDED_MIDDLE, EXCLUDED_MIDDLE),
            excluded_middle(),
            AllSetI("Z", EXCLUDED_MIDDLE, excluded_middle_instance("Z")),
        )
        d = R(ZERO_EQ, set_witness(), both)
        assert rule_of(d) == OmegaS(negate(EXCLUDED_MIDDLE))
        assert [index.q.var for index in sample_indices(d, witness_budget=1)] == ["Y"]
        assert [index.q.var for index in sample_indices(d, witness_budget=2)] == ["Y", "Z"]
        assert sample_indices(d, witness_budget=0) == []


class TestExpand:
    def test_cut_free_tree(self):
        view = expand(excluded_middle(), 5)
        labels = [type(node.label) for node in view.walk()]
        assert labels == [AllSetS, OrS, OrS, AxS]
        assert not any(node.truncated for node in view.walk())

    def test_truncation(self):
        assert expand(conjunction(), 0).truncated
        assert not expand(Ax(sequent(ZERO_EQ)), 0).truncated

    def test_omega_picks(self):
        view = expand(reflexivity(), 1, omega_picks=(0, 3))
        assert [index for index, _ in view.children] == [Nat(0), Nat(3)]
        assert [sub.sequent for _, sub in view.children] == [sequent(eq(0, 0)), sequent(eq(3, 3))]

    def test_render_and_records(self):
        view = expand(reflexivity(), 1, omega_picks=(0, 3))
        text = render_tree(view)
        assert text.splitlines()[0].startswith("ω[")
        assert "[3]" in text
        records = tree_records(view)
        assert [record["path"] for record in records] == ["root", "0", "3"]
        assert [record["depth"] for record in records] == [0, 1, 1]

    def test_expanding_an_operator_term(self, literal_cut):
        view = expand(E(literal_cut), 2)
        assert view.label == RepS()
        ((index, sub),) = view.children
        assert index == Nat(0)
        assert sub.sequent == sequent(ZERO_EQ)
