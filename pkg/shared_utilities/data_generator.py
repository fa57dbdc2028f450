"""
Shared Data Generation Utilities
================================

Seeded random derivations for property tests and the explorer. Every
derivation handed out is validated and proper, has at most max_nodes nodes,
uses numerals up to max_numeral and only template omega-families.
"""

import logging
from itertools import count

import numpy as np
import pandas as pd

from bi_notation.calculus import (
    AllSetI,
    AndI,
    Ax,
    Col,
    Cut,
    Ew,
    ExI,
    OmI,
    OrI,
    OrSetI,
    R,
    Sub,
    Template,
    Weak,
    count_nodes,
    degree,
    e_power,
    end_sequent,
    is_proper,
    validate,
)
from bi_notation.corpus import EXCLUDED_MIDDLE, excluded_middle_instance
from bi_notation.errors import CalculusError
from bi_notation.lang import (
    Abstraction,
    And,
    ExistsNum,
    ForallNum,
    NumVar,
    Or,
    RelLit,
    Succ,
    eq,
    format_sequent,
    instance_abs,
    instance_num,
    le,
    lt,
    negate,
    numeral,
    sequent,
)
from bi_notation.reduction import gate

logger = logging.getLogger(__name__)

# Universal statements proved by a single axiom schema over the parameter n
TEMPLATE_CATALOGUE = [
    (ForallNum("x", eq("x", "x")), Ax(sequent(eq("n", "n")))),
    (ForallNum("x", le("x", "x")), Ax(sequent(le("n", "n")))),
    (ForallNum("x", lt("x", Succ(NumVar("x")))), Ax(sequent(lt("n", Succ(NumVar("n")))))),
    (ForallNum("x", le(0, "x")), Ax(sequent(le(0, "n")))),
]

# λx.A(x) with A(0) true
ABSTRACTIONS = [
    Abstraction("x", eq("x", 0)),
    Abstraction("x", le("x", 1)),
    Abstraction("x", lt("x", 2)),
]


class DerivationGenerator:
    """Utility class for generating random proper derivations"""

    def __init__(self, seed=42, max_nodes=12, max_numeral=3):
        """Initialize with random seed for reproducibility"""
        self.rng = np.random.default_rng(seed)
        self.max_nodes = max_nodes
        self.max_numeral = max_numeral
        self._names = count()

    def _pick(self, items):
        return items[int(self.rng.integers(len(items)))]

    def _fresh_set_variable(self, stem="Y"):
        return f"{stem}{next(self._names)}"

    # ------------------------------------------------------------------
    # Formulas
    # ------------------------------------------------------------------

    def literal(self, truth=None):
        """Closed relational literal; truth=True or False forces its value"""
        a = int(self.rng.integers(self.max_numeral + 1))
        b = int(self.rng.integers(self.max_numeral + 1))
        relation = self._pick(["eq", "lt", "le"])
        lit = RelLit(relation, (numeral(a), numeral(b)))
        value = {"eq": a == b, "lt": a < b, "le": a <= b}[relation]
        if truth is None or truth == value:
            return lit
        return negate(lit)

    # ------------------------------------------------------------------
    # Cut-free building blocks
    # ------------------------------------------------------------------

    def true_axiom(self):
        lit = self.literal(truth=True)
        return Ax(sequent(lit)), lit

    def weakened_axiom(self):
        """True literal axiom with an arbitrary literal added by weakening"""
        d, lit = self.true_axiom()
        return Weak(sequent(self.literal()), d), lit

    def excluded_middle_axiom(self):
        lit = self.literal()
        return Ax(sequent(lit, negate(lit))), lit

    def or_block(self, depth):
        d, a = self.prove(depth - 1)
        other = self.literal()
        k = int(self.rng.integers(2))
        principal = Or(a, other) if k == 0 else Or(other, a)
        return OrI(k, principal, d), principal

    def and_block(self, depth):
        d0, a0 = self.prove(depth - 1)
        d1, a1 = self.prove(depth - 1)
        principal = And(a0, a1)
        return AndI(principal, d0, d1), principal

    def exists_block(self):
        """∃x B(x) from a true literal B(t), abstracting one argument position"""
        d, lit = self.true_axiom()
        position = int(self.rng.integers(2))
        args = list(lit.args)
        witness = args[position]
        args[position] = NumVar("x")
        principal = ExistsNum("x", RelLit(lit.relation, tuple(args), lit.positive))
        return ExI(witness, principal, d), principal

    def omega_block(self):
        principal, schema = self._pick(TEMPLATE_CATALOGUE)
        return OmI(principal, Template("n", schema)), principal

    def set_block(self):
        eigen = self._fresh_set_variable()
        return AllSetI(eigen, EXCLUDED_MIDDLE, excluded_middle_instance(eigen)), EXCLUDED_MIDDLE

    def prove(self, depth=2):
        """(derivation, formula) with the formula in the end-sequent"""
        kinds = ["axiom", "weakened", "excluded-middle", "omega", "exists", "set"]
        if depth > 0:
            kinds += ["or", "and"]
        kind = self._pick(kinds)
        if kind == "axiom":
            return self.true_axiom()
        if kind == "weakened":
            return self.weakened_axiom()
        if kind == "excluded-middle":
            return self.excluded_middle_axiom()
        if kind == "omega":
            return self.omega_block()
        if kind == "exists":
            return self.exists_block()
        if kind == "set":
            return self.set_block()
        if kind == "or":
            return self.or_block(depth)
        return self.and_block(depth)

    def cut_free(self, depth=2):
        return self.prove(depth)[0]

    # ------------------------------------------------------------------
    # Cuts and operators
    # ------------------------------------------------------------------

    def set_refutation(self, t: Abstraction):
        """¬∀X(X(0) ∨ ¬X(0)) with side formula T(0)"""
        t0 = t.apply(numeral(0))
        body = negate(instance_abs(EXCLUDED_MIDDLE, t))
        return OrSetI(t, negate(EXCLUDED_MIDDLE), AndI(body, Ax(sequent(negate(t0), t0)), Ax(sequent(t0))))

    def cut_pair(self):
        """(cut formula, left premise, right premise) for a cut with a true literal end-sequent"""
        kind = self._pick(["literal", "weakened", "and", "forall", "set"])
        if kind in ("literal", "weakened"):
            d, lit = self.weakened_axiom() if kind == "weakened" else self.true_axiom()
            return lit, d, Ax(sequent(lit, negate(lit)))
        if kind == "and":
            (d0, a0), (d1, a1) = self.true_axiom(), self.true_axiom()
            c = And(a0, a1)
            k = int(self.rng.integers(2))
            chosen = a0 if k == 0 else a1
            return c, AndI(c, d0, d1), OrI(k, negate(c), Ax(sequent(negate(chosen), chosen)))
        if kind == "forall":
            d0, c = self.omega_block()
            n = numeral(int(self.rng.integers(self.max_numeral)))
            body = instance_num(c, n)
            return c, d0, ExI(n, negate(c), Ax(sequent(negate(body), body)))
        d0, c = self.set_block()
        return c, d0, self.set_refutation(self._pick(ABSTRACTIONS))

    def operator_derivation(self):
        """A gate-eligible derivation built from a cut with one of the reduction operators"""
        c, d0, d1 = self.cut_pair()
        cut = Cut(c, d0, d1)
        kind = self._pick(["ew", "e", "r", "axiom-r", "collapse", "sub", "eigen-sub"])
        if kind == "ew":
            return Ew(cut)
        if kind == "e":
            return e_power(degree(cut), cut)
        if kind == "r":
            return e_power(degree(R(c, d0, d1)), R(c, d0, d1))
        if kind == "collapse":
            return Col(Ew(cut))
        if kind == "axiom-r":
            return self.axiom_reduction()
        if kind == "eigen-sub":
            return self.eigen_substitution()
        var = self._fresh_set_variable("W")
        return Sub(var, self._pick(ABSTRACTIONS), Col(excluded_middle_instance(var)))

    def axiom_reduction(self):
        """Cut-reduction against a weakened axiom holding the negated cut formula"""
        lit = self.literal()
        axiom = Weak(sequent(self.literal()), Ax(sequent(lit, negate(lit))))
        other = Ax(sequent(negate(lit), lit))
        d = R(lit, axiom, other)
        return e_power(degree(d), d)

    def eigen_substitution(self):
        """Substitution for the set variable the collapsed derivation uses as eigenvariable"""
        var = self._fresh_set_variable("W")
        proof = AllSetI(var, EXCLUDED_MIDDLE, excluded_middle_instance(var))
        return Sub(var, self._pick(ABSTRACTIONS), Col(proof))

    def wrapped(self, base):
        """Extend base by a disjunction introduction on one of its end formulas"""
        formulas = sorted(end_sequent(base), key=str)
        a = self._pick(formulas)
        other = self.literal()
        k = int(self.rng.integers(2))
        principal = Or(a, other) if k == 0 else Or(other, a)
        return OrI(k, principal, base)

    def candidate(self):
        kind = self._pick(["cut-free", "cut", "operator", "wrapped"])
        if kind == "cut-free":
            return self.cut_free()
        if kind == "cut":
            return Cut(*self.cut_pair())
        if kind == "operator":
            return self.operator_derivation()
        return self.wrapped(self.operator_derivation())

    # ------------------------------------------------------------------
    # Accepted derivations
    # ------------------------------------------------------------------

    def accept(self, d):
        if count_nodes(d) > self.max_nodes:
            return False
        try:
            validate(d)
        except CalculusError as exc:
            logger.debug("generated candidate rejected: %s", exc)
            return False
        return bool(is_proper(d))

    def derivation(self, source=None, attempts=100):
        """
        Draw candidates until one is accepted

        Args:
            source: Zero-argument candidate factory (self.candidate by default)
            attempts: Maximum number of draws

        Returns:
            A validated proper derivation
        """
        source = source or self.candidate
        for _ in range(attempts):
            d = source()
            if self.accept(d):
                return d
        raise RuntimeError(f"no acceptable derivation in {attempts} attempts")

    def batch(self, n=100):
        return [self.derivation() for _ in range(n)]

    def gate_batch(self, n=100):
        """Derivations on which red is defined"""
        out = []
        while len(out) < n:
            d = self.derivation()
            if gate(d).eligible:
                out.append(d)
        return out

    def embedding_batch(self, n=100):
        """Derivations built only from axioms and logical introductions"""
        return [self.derivation(self.cut_free) for _ in range(n)]

    def describe(self, derivations) -> pd.DataFrame:
        """One row per derivation with size, degree, end-sequent and gate flag"""
        rows = []
        for i, d in enumerate(derivations):
            rows.append(
                {
                    "id": i,
                    "root": type(d).__name__,
                    "nodes": count_nodes(d),
                    "degree": degree(d),
                    "end_sequent": format_sequent(end_sequent(d)),
                    "eligible": gate(d).eligible,
                }
            )
        return pd.DataFrame(rows)
