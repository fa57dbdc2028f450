"""
Scenario Corpus
===============

Concrete instances of every reduction case with their expected reducts, and a
handful of small end-to-end proofs. The side sequent throughout is {0=0}.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict

from .calculus import (
    AllSetI,
    AndI,
    Ax,
    Col,
    Cut,
    Derivation,
    E,
    Ew,
    ExI,
    OmI,
    OrI,
    OrSetI,
    R,
    Sub,
    Template,
    alpha_equal,
)
from .checker import AuditVerdict, CheckResult, check_step
from .errors import CalculusError
from .lang import (
    Abstraction,
    And,
    ExistsNum,
    ForallNum,
    ForallSet,
    NumVar,
    Or,
    Succ,
    eq,
    instance_abs,
    instance_set,
    negate,
    sequent,
    set_lit,
)
from .notation import (
    ExtendedSymbol,
    Nat,
    Omega,
    OmegaTildeS,
    RepS,
    canonical_index,
    child,
    rule_of,
)
from .reduction import gate, red

logger = logging.getLogger(__name__)

# Building blocks
ZERO_EQ = eq(0, 0)
ONE_EQ = eq(1, 1)
EXCLUDED_MIDDLE = ForallSet("X", Or(set_lit("X", 0), set_lit("X", 0, False)))
REFLEXIVITY = ForallNum("x", eq("x", "x"))
IS_ZERO = Abstraction("x", eq("x", 0))
EIGEN = "Y"


def excluded_middle_instance(var: str) -> Derivation:
    """Cut-free proof of X(0) ∨ ¬X(0) for the set variable var"""
    body = instance_set(EXCLUDED_MIDDLE, var)
    return OrI(1, body, OrI(0, body, Ax(sequent(set_lit(var, 0), set_lit(var, 0, False)))))


def excluded_middle() -> Derivation:
    return AllSetI(EIGEN, EXCLUDED_MIDDLE, excluded_middle_instance(EIGEN))


def refuting_instance() -> Derivation:
    """¬(0=0 ∨ ¬0=0) together with the side formula 0=0"""
    return AndI(
        negate(instance_abs(EXCLUDED_MIDDLE, IS_ZERO)),
        Ax(sequent(negate(ZERO_EQ), ZERO_EQ)),
        Ax(sequent(ZERO_EQ)),
    )


def set_witness() -> Derivation:
    """¬∀X(X(0) ∨ ¬X(0)) by the abstraction λx.x=0"""
    return OrSetI(IS_ZERO, negate(EXCLUDED_MIDDLE), refuting_instance())


def reflexivity() -> Derivation:
    return OmI(REFLEXIVITY, Template("n", Ax(sequent(eq("n", "n")))))


def irreflexive_witness() -> Derivation:
    return ExI(0, negate(REFLEXIVITY), Ax(sequent(negate(ZERO_EQ), ZERO_EQ)))


def conjunction() -> Derivation:
    return AndI(And(ZERO_EQ, ONE_EQ), Ax(sequent(ZERO_EQ)), Ax(sequent(ONE_EQ)))


def refuted_conjunction() -> Derivation:
    return OrI(0, negate(And(ZERO_EQ, ONE_EQ)), Ax(sequent(negate(ZERO_EQ), ZERO_EQ)))


def successor_exists() -> Derivation:
    """∀x∃y y=S(x) with the successor of the parameter as witness"""
    body = ExistsNum("y", eq("y", Succ(NumVar("x"))))
    successor = Succ(NumVar("n"))
    schema = ExI(successor, ExistsNum("y", eq("y", successor)), Ax(sequent(eq(successor, successor))))
    return OmI(ForallNum("x", body), Template("n", schema))


def sample_proofs() -> Dict[str, Derivation]:
    """Small operator-free proofs, in presentation order"""
    return {
        "excluded-middle": excluded_middle(),
        "reflexivity": reflexivity(),
        "second-order-cut": Cut(EXCLUDED_MIDDLE, excluded_middle(), set_witness()),
        "literal-cut": Cut(ZERO_EQ, Ax(sequent(ZERO_EQ)), Ax(sequent(ZERO_EQ, negate(ZERO_EQ)))),
        "omega-cut": Cut(REFLEXIVITY, reflexivity(), irreflexive_witness()),
        "successor-exists": successor_exists(),
    }


# ---------------------------------------------------------------------------
# Scenarios
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    input: Derivation
    expected_red: Derivation
    expected_tp: ExtendedSymbol

    def descent_index(self):
        """Index whose premise red must return"""
        if isinstance(self.expected_tp, OmegaTildeS):
            return Omega(canonical_index(self.input, self.expected_tp))
        return Nat(0)


def _e_cut():
    a0, a1 = Ax(sequent(ZERO_EQ)), Ax(sequent(ZERO_EQ, negate(ZERO_EQ)))
    return Scenario(
        "e-cut",
        "T9: E over a cut becomes a cut-reduction of E applied to both premises",
        E(Cut(ZERO_EQ, a0, a1)),
        R(ZERO_EQ, E(a0), E(a1)),
        RepS(),
    )


def _axiom_cut():
    axiom = Ax(sequent(ZERO_EQ, negate(ZERO_EQ)))
    other = E(Ax(sequent(negate(ZERO_EQ), ZERO_EQ)))
    return Scenario(
        "axiom-cut",
        "T10: cut against an axiom containing the negated cut formula returns the other premise",
        R(ZERO_EQ, axiom, other),
        other,
        RepS(),
    )


def _and_cut():
    c = And(ZERO_EQ, ONE_EQ)
    d0, d1 = conjunction(), refuted_conjunction()
    return Scenario(
        "and-cut",
        "T11: E over a conjunction cut moves to a cut on the selected conjunct",
        E(R(c, d0, d1)),
        R(ZERO_EQ, E(R(c, d0.d0, d1)), E(R(c, d0, d1.d0))),
        RepS(),
    )


def _and_cut_ew():
    c = And(ZERO_EQ, ONE_EQ)
    d0, d1 = conjunction(), refuted_conjunction()
    return Scenario(
        "and-cut-ew",
        "T12: Ew over a conjunction cut becomes E^(m+1) over a cut of rank m",
        Ew(R(c, d0, d1)),
        E(Cut(ZERO_EQ, Ew(R(c, d0.d0, d1)), Ew(R(c, d0, d1.d0)))),
        RepS(),
    )


def _forall_cut():
    d0, d1 = reflexivity(), irreflexive_witness()
    return Scenario(
        "forall-cut",
        "T13: E over a cut on ∀x against an existential witness cuts on the instance",
        E(R(REFLEXIVITY, d0, d1)),
        R(ZERO_EQ, E(R(REFLEXIVITY, Ax(sequent(ZERO_EQ)), d1)), E(R(REFLEXIVITY, d0, d1.d0))),
        RepS(),
    )


def _forall_cut_ew():
    d0, d1 = reflexivity(), irreflexive_witness()
    return Scenario(
        "forall-cut-ew",
        "T14: Ew over a cut on ∀x becomes E^(m+1) over a cut on the instance",
        Ew(R(REFLEXIVITY, d0, d1)),
        E(Cut(ZERO_EQ, Ew(R(REFLEXIVITY, Ax(sequent(ZERO_EQ)), d1)), Ew(R(REFLEXIVITY, d0, d1.d0)))),
        RepS(),
    )


def _collapse(wrap: Callable[[Derivation], Derivation], name: str, description: str):
    d0, d1 = excluded_middle(), set_witness()
    witness = Col(wrap(R(EXCLUDED_MIDDLE, excluded_middle_instance(EIGEN), d1)))
    instance = R(instance_abs(EXCLUDED_MIDDLE, IS_ZERO), Sub(EIGEN, IS_ZERO, witness), refuting_instance())
    return Scenario(
        name,
        description,
        Col(wrap(R(EXCLUDED_MIDDLE, d0, d1))),
        Col(wrap(R(EXCLUDED_MIDDLE, d0, instance))),
        RepS(),
    )


def _collapse_ew():
    return _collapse(Ew, "collapse-ew", "T15: collapsing an Ω~ inference picks the premise at its own witness")


def _collapse_e():
    return _collapse(E, "collapse-e", "T15b: as collapse-ew with E^(m+1) in place of Ew")


def _set_cut():
    d0, d1 = excluded_middle(), set_witness()
    witness = Col(E(R(EXCLUDED_MIDDLE, excluded_middle_instance(EIGEN), d1)))
    instance = R(instance_abs(EXCLUDED_MIDDLE, IS_ZERO), Sub(EIGEN, IS_ZERO, witness), refuting_instance())
    return Scenario(
        "set-cut",
        "T16: impredicative cut: red follows the Ω~ inference to the premise at the collapsing witness",
        E(R(EXCLUDED_MIDDLE, d0, d1)),
        E(R(EXCLUDED_MIDDLE, d0, instance)),
        OmegaTildeS(EIGEN, negate(EXCLUDED_MIDDLE)),
    )


SCENARIOS: Dict[str, Callable[[], Scenario]] = {
    "e-cut": _e_cut,
    "axiom-cut": _axiom_cut,
    "and-cut": _and_cut,
    "and-cut-ew": _and_cut_ew,
    "forall-cut": _forall_cut,
    "forall-cut-ew": _forall_cut_ew,
    "collapse-ew": _collapse_ew,
    "collapse-e": _collapse_e,
    "set-cut": _set_cut,
}


def scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None


def check_scenario(s: Scenario) -> AuditVerdict:
    """Golden assertions: gate, tp, expected reduct, descent and the step audit"""
    verdict = AuditVerdict()

    def record(name, test):
        try:
            passed, detail = test()
        except CalculusError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        verdict.checks.append(CheckResult(name, bool(passed), s.name, detail))

    record("gate", lambda: (gate(s.input).eligible, str(gate(s.input))))
    record("tp", lambda: (rule_of(s.input) == s.expected_tp, f"got {rule_of(s.input)}"))
    record("red", lambda: (alpha_equal(red(s.input), s.expected_red), f"got {red(s.input)}"))
    record("descent", lambda: (red(s.input) == child(s.input, s.descent_index()), "red is not the indexed premise"))
    if verdict.overall:
        verdict.extend(check_step(s.input, red(s.input)))
    logger.debug("scenario %s: %s", s.name, "pass" if verdict.overall else "fail")
    return verdict


def all_scenarios():
    return [builder() for builder in SCENARIOS.values()]

