"""
Language of Second-Order Arithmetic
===================================

Number terms, negation-normal formulas, abstractions and sequents. Formulas
compare up to renaming of bound variables; negation is computed with De Morgan
duals so that only literals carry a polarity.
"""

import logging
import operator
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from itertools import count
from typing import Callable, Dict, FrozenSet, Iterable, Optional, Tuple, Union

from .errors import IllFormed, NotClosedLiteral

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Number terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Succ:
    inner: "NumTerm"

    def __str__(self):
        value = term_value(self)
        if value is not None:
            return str(value)
        return f"S({self.inner})"


@dataclass(frozen=True)
class NumVar:
    name: str

    def __str__(self):
        return self.name


NumTerm = Union[Zero, Succ, NumVar]
ZERO = Zero()


def succ_n(term, n):
    for _ in range(n):
        term = Succ(term)
    return term


def numeral(n: int) -> NumTerm:
    """The closed term S^n(0)"""
    if n < 0:
        raise ValueError(f"numerals are natural numbers, got {n}")
    return succ_n(ZERO, n)


def split_term(term) -> Tuple[int, NumTerm]:
    """Strip successors: returns (count, base) with base Zero or NumVar"""
    k = 0
    while isinstance(term, Succ):
        k += 1
        term = term.inner
    return k, term


def term_value(term) -> Optional[int]:
    """Value of a closed term, None when the term contains a variable"""
    k, base = split_term(term)
    return k if isinstance(base, Zero) else None


def term_vars(term) -> FrozenSet[str]:
    _, base = split_term(term)
    return frozenset([base.name]) if isinstance(base, NumVar) else frozenset()


def subst_term(term, name, value):
    k, base = split_term(term)
    if isinstance(base, NumVar) and base.name == name:
        return succ_n(value, k)
    return term


def as_term(value) -> NumTerm:
    """Accept ints as numerals and strings as number variables"""
    if isinstance(value, bool):
        raise TypeError("booleans are not number terms")
    if isinstance(value, int):
        return numeral(value)
    if isinstance(value, str):
        return NumVar(value)
    if isinstance(value, (Zero, Succ, NumVar)):
        return value
    raise TypeError(f"cannot read {value!r} as a number term")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    stem = base.rstrip("0123456789") or base
    for i in count():
        candidate = f"{stem}{i}"
        if candidate not in avoid:
            return candidate


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    decide: Callable[..., bool]
    display: str


RELATIONS: Dict[str, Relation] = {}


def register_relation(name: str, arity: int, decide: Callable[..., bool], display: str = None):
    """
    Make a decidable relation on naturals available to literals

    Args:
        name: Symbol used in the concrete syntax, e.g. 'eq'
        arity: Number of arguments
        decide: Total function on ints returning the truth value
        display: Name used when printing formulas

    Returns:
        The registered Relation
    """
    relation = Relation(name, arity, decide, display or name.capitalize())
    RELATIONS[name] = relation
    logger.debug("registered relation %s/%d", name, arity)
    return relation


register_relation("eq", 2, operator.eq, "Eq")
register_relation("lt", 2, operator.lt, "Lt")
register_relation("le", 2, operator.le, "Le")


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class _AlphaKeyed:
    """Equality and hashing through an alpha-canonical key"""

    @cached_property
    def _hash(self):
        return hash(self.key)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, _AlphaKeyed):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key


class Formula(_AlphaKeyed):
    """Base class of the formula variants"""

    @cached_property
    def key(self):
        return _formula_key(self, (), ())


@dataclass(frozen=True, eq=False)
class RelLit(Formula):
    relation: str
    args: Tuple[NumTerm, ...]
    positive: bool = True

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        known = RELATIONS.get(self.relation)
        if known is None:
            raise IllFormed(f"unknown relation {self.relation!r}")
        if known.arity != len(self.args):
            raise IllFormed(f"{self.relation} expects {known.arity} arguments, got {len(self.args)}")

    def __str__(self):
        sign = "" if self.positive else "¬"
        args = ",".join(str(arg) for arg in self.args)
        return f"{sign}{RELATIONS[self.relation].display}({args})"


@dataclass(frozen=True, eq=False)
class SetLit(Formula):
    var: str
    arg: NumTerm
    positive: bool = True

    def __str__(self):
        sign = "" if self.positive else "¬"
        return f"{sign}{self.var}({self.arg})"


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} ∧ {self.right})"


@dataclass(frozen=True, eq=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} ∨ {self.right})"


@dataclass(frozen=True, eq=False)
class ForallNum(Formula):
    binder: str
    body: Formula

    def __str__(self):
        return f"∀{self.binder}.{self.body}"


@dataclass(frozen=True, eq=False)
class ExistsNum(Formula):
    binder: str
    body: Formula

    def __str__(self):
        return f"∃{self.binder}.{self.body}"


def _check_parameter_free(quantifier):
    if has_second_order(quantifier.body):
        raise IllFormed(f"nested second-order quantifier under {quantifier.binder}")
    _, sets = free_vars(quantifier.body)
    extra = sets - {quantifier.binder}
    if extra:
        raise IllFormed(f"second-order quantifier over {quantifier.binder} has set parameters {sorted(extra)}")


@dataclass(frozen=True, eq=False)
class ForallSet(Formula):
    binder: str
    body: Formula

    def __post_init__(self):
        _check_parameter_free(self)

    def __str__(self):
        return f"∀{self.binder}.{self.body}"


@dataclass(frozen=True, eq=False)
class ExistsSet(Formula):
    binder: str
    body: Formula

    def __post_init__(self):
        _check_parameter_free(self)

    def __str__(self):
        return f"∃{self.binder}.{self.body}"


LITERALS = (RelLit, SetLit)
NUM_QUANTIFIERS = (ForallNum, ExistsNum)
SET_QUANTIFIERS = (ForallSet, ExistsSet)


@dataclass(frozen=True, eq=False)
class Abstraction(_AlphaKeyed):
    """λx.A with an arithmetical body"""

    binder: str
    body: Formula

    def __post_init__(self):
        if has_second_order(self.body):
            raise IllFormed(f"abstraction body must be arithmetical: {self.body}")

    @cached_property
    def key(self):
        return ("λ", _formula_key(self.body, (self.binder,), ()))

    def free_vars(self):
        nums, sets = free_vars(self.body)
        return nums - {self.binder}, sets

    def apply(self, term):
        return subst_num(self.body, self.binder, term)

    def __str__(self):
        return f"λ{self.binder}.{self.body}"


def eq(left, right, positive=True):
    return RelLit("eq", (as_term(left), as_term(right)), positive)


def lt(left, right, positive=True):
    return RelLit("lt", (as_term(left), as_term(right)), positive)


def le(left, right, positive=True):
    return RelLit("le", (as_term(left), as_term(right)), positive)


def set_lit(var, arg, positive=True):
    return SetLit(var, as_term(arg), positive)


# ---------------------------------------------------------------------------
# Alpha-canonical keys
# ---------------------------------------------------------------------------

def _bound_index(env, name):
    for depth, bound in enumerate(reversed(env)):
        if bound == name:
            return depth
    return None


def _term_key(term, nenv):
    k, base = split_term(term)
    if isinstance(base, Zero):
        return ("t", k, ("0",))
    idx = _bound_index(nenv, base.name)
    return ("t", k, ("b", idx) if idx is not None else ("v", base.name))


def _formula_key(a, nenv, senv):
    if isinstance(a, RelLit):
        return ("R", a.relation, a.positive, tuple(_term_key(t, nenv) for t in a.args))
    if isinstance(a, SetLit):
        idx = _bound_index(senv, a.var)
        var = ("b", idx) if idx is not None else ("v", a.var)
        return ("L", var, a.positive, _term_key(a.arg, nenv))
    if isinstance(a, And):
        return ("&", _formula_key(a.left, nenv, senv), _formula_key(a.right, nenv, senv))
    if isinstance(a, Or):
        return ("|", _formula_key(a.left, nenv, senv), _formula_key(a.right, nenv, senv))
    if isinstance(a, ForallNum):
        return ("A", _formula_key(a.body, nenv + (a.binder,), senv))
    if isinstance(a, ExistsNum):
        return ("E", _formula_key(a.body, nenv + (a.binder,), senv))
    if isinstance(a, ForallSet):
        return ("AA", _formula_key(a.body, nenv, senv + (a.binder,)))
    if isinstance(a, ExistsSet):
        return ("EE", _formula_key(a.body, nenv, senv + (a.binder,)))
    raise IllFormed(f"not a formula: {a!r}")


def _opaque_term(key, params):
    base = key[2]
    return base[0] == "v" and base[1] in params


def _unifiable(k1, k2, params):
    if k1 == k2:
        return True
    if isinstance(k1, tuple) and isinstance(k2, tuple):
        if k1 and k2 and k1[0] == "t" and k2[0] == "t":
            return _opaque_term(k1, params) or _opaque_term(k2, params)
        return len(k1) == len(k2) and all(_unifiable(x, y, params) for x, y in zip(k1, k2))
    return False


def may_coincide(a: Formula, b: Formula, params: FrozenSet[str]) -> bool:
    """
    Whether a and b could become alpha-equal once the number variables in
    params are replaced by numerals. Over-approximates.
    """
    return _unifiable(a.key, b.key, frozenset(params))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def negate(a: Formula) -> Formula:
    """De Morgan dual"""
    if isinstance(a, LITERALS):
        return replace(a, positive=not a.positive)
    if isinstance(a, And):
        return Or(negate(a.left), negate(a.right))
    if isinstance(a, Or):
        return And(negate(a.left), negate(a.right))
    if isinstance(a, ForallNum):
        return ExistsNum(a.binder, negate(a.body))
    if isinstance(a, ExistsNum):
        return ForallNum(a.binder, negate(a.body))
    if isinstance(a, ForallSet):
        return ExistsSet(a.binder, negate(a.body))
    if isinstance(a, ExistsSet):
        return ForallSet(a.binder, negate(a.body))
    raise IllFormed(f"not a formula: {a!r}")


def rank(a: Formula) -> int:
    if isinstance(a, LITERALS + SET_QUANTIFIERS):
        return 0
    if isinstance(a, (And, Or)):
        return max(rank(a.left), rank(a.right)) + 1
    if isinstance(a, NUM_QUANTIFIERS):
        return rank(a.body) + 1
    raise IllFormed(f"not a formula: {a!r}")


def is_literal(a: Formula) -> bool:
    return isinstance(a, LITERALS)


def has_second_order(a: Formula) -> bool:
    if isinstance(a, LITERALS):
        return False
    if isinstance(a, SET_QUANTIFIERS):
        return True
    if isinstance(a, (And, Or)):
        return has_second_order(a.left) or has_second_order(a.right)
    return has_second_order(a.body)


def _has_exists_set(a: Formula) -> bool:
    if isinstance(a, LITERALS):
        return False
    if isinstance(a, ExistsSet):
        return True
    if isinstance(a, (And, Or)):
        return _has_exists_set(a.left) or _has_exists_set(a.right)
    return _has_exists_set(a.body)


def free_vars(a: Formula) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(free number variables, free set variables)"""
    nums, sets = set(), set()
    _collect_free(a, frozenset(), frozenset(), nums, sets)
    return frozenset(nums), frozenset(sets)


def _collect_free(a, nbound, sbound, nums, sets):
    if isinstance(a, RelLit):
        for arg in a.args:
            nums.update(term_vars(arg) - nbound)
    elif isinstance(a, SetLit):
        if a.var not in sbound:
            sets.add(a.var)
        nums.update(term_vars(a.arg) - nbound)
    elif isinstance(a, (And, Or)):
        _collect_free(a.left, nbound, sbound, nums, sets)
        _collect_free(a.right, nbound, sbound, nums, sets)
    elif isinstance(a, NUM_QUANTIFIERS):
        _collect_free(a.body, nbound | {a.binder}, sbound, nums, sets)
    else:
        _collect_free(a.body, nbound, sbound | {a.binder}, nums, sets)


def rename_free(a: Formula, set_map=None, num_map=None) -> Formula:
    """Simultaneously rename free set and number variables, avoiding capture"""
    set_map = {k: v for k, v in (set_map or {}).items() if k != v}
    num_map = {k: v for k, v in (num_map or {}).items() if k != v}
    if not set_map and not num_map:
        return a
    return _rename(a, set_map, num_map)


def _rename_term(term, num_map):
    k, base = split_term(term)
    if isinstance(base, NumVar) and base.name in num_map:
        return succ_n(NumVar(num_map[base.name]), k)
    return term


def rename_term(term, num_map):
    return _rename_term(term, num_map)


def _rename(a, sm, nm):
    if isinstance(a, RelLit):
        return RelLit(a.relation, tuple(_rename_term(t, nm) for t in a.args), a.positive)
    if isinstance(a, SetLit):
        return SetLit(sm.get(a.var, a.var), _rename_term(a.arg, nm), a.positive)
    if isinstance(a, (And, Or)):
        return type(a)(_rename(a.left, sm, nm), _rename(a.right, sm, nm))
    if isinstance(a, NUM_QUANTIFIERS):
        inner = {k: v for k, v in nm.items() if k != a.binder}
        if a.binder in inner.values():
            body_nums, _ = free_vars(a.body)
            fresh = fresh_name(a.binder, body_nums | set(inner.values()) | set(inner))
            inner[a.binder] = fresh
            return type(a)(fresh, _rename(a.body, sm, inner))
        return type(a)(a.binder, _rename(a.body, sm, inner))
    inner = {k: v for k, v in sm.items() if k != a.binder}
    if a.binder in inner.values():
        fresh = fresh_name(a.binder, set(inner.values()) | set(inner) | {a.binder})
        inner[a.binder] = fresh
        return type(a)(fresh, _rename(a.body, inner, nm))
    return type(a)(a.binder, _rename(a.body, inner, nm))


def rename_set(a: Formula, old: str, new: str) -> Formula:
    return rename_free(a, {old: new}, {})


def subst_num(a: Formula, name: str, term: NumTerm) -> Formula:
    """Replace free occurrences of a number variable, renaming binders on capture"""
    return _subst_num(a, name, term, term_vars(term))


def _subst_num(a, name, term, term_names):
    if isinstance(a, RelLit):
        return RelLit(a.relation, tuple(subst_term(t, name, term) for t in a.args), a.positive)
    if isinstance(a, SetLit):
        return SetLit(a.var, subst_term(a.arg, name, term), a.positive)
    if isinstance(a, (And, Or)):
        return type(a)(_subst_num(a.left, name, term, term_names), _subst_num(a.right, name, term, term_names))
    if isinstance(a, NUM_QUANTIFIERS):
        if a.binder == name:
            return a
        body_nums, _ = free_vars(a.body)
        if name not in body_nums:
            return a
        if a.binder in term_names:
            fresh = fresh_name(a.binder, body_nums | term_names | {name})
            body = _rename(a.body, {}, {a.binder: fresh})
            return type(a)(fresh, _subst_num(body, name, term, term_names))
        return type(a)(a.binder, _subst_num(a.body, name, term, term_names))
    return type(a)(a.binder, _subst_num(a.body, name, term, term_names))


def subst_set(a: Formula, name: str, abstraction: Abstraction) -> Formula:
    """Replace X(s) by T(s) and ¬X(s) by ¬T(s); second-order subformulas are untouched"""
    abstraction_nums, _ = abstraction.free_vars()
    return _subst_set(a, name, abstraction, abstraction_nums)


def _subst_set(a, name, abstraction, abstraction_nums):
    if isinstance(a, RelLit):
        return a
    if isinstance(a, SetLit):
        if a.var != name:
            return a
        instance = abstraction.apply(a.arg)
        return instance if a.positive else negate(instance)
    if isinstance(a, (And, Or)):
        return type(a)(
            _subst_set(a.left, name, abstraction, abstraction_nums),
            _subst_set(a.right, name, abstraction, abstraction_nums),
        )
    if isinstance(a, NUM_QUANTIFIERS):
        body_nums, body_sets = free_vars(a.body)
        if name not in body_sets:
            return a
        if a.binder in abstraction_nums:
            fresh = fresh_name(a.binder, body_nums | abstraction_nums)
            body = _rename(a.body, {}, {a.binder: fresh})
            return type(a)(fresh, _subst_set(body, name, abstraction, abstraction_nums))
        return type(a)(a.binder, _subst_set(a.body, name, abstraction, abstraction_nums))
    return a


def eval_literal(a: Formula) -> bool:
    """Truth value of a closed relational literal"""
    if not isinstance(a, RelLit):
        raise NotClosedLiteral(f"{a} is not a relational literal")
    values = [term_value(arg) for arg in a.args]
    if any(value is None for value in values):
        raise NotClosedLiteral(f"{a} contains a number variable")
    truth = bool(RELATIONS[a.relation].decide(*values))
    return truth if a.positive else not truth


class FormulaClass(Enum):
    LITERAL = "literal"
    ARITHMETICAL = "arithmetical"
    PI1 = "pi1"
    GENERAL = "general"


def classify(a: Formula) -> FormulaClass:
    """Most specific class of a formula"""
    if is_literal(a):
        return FormulaClass.LITERAL
    if not has_second_order(a):
        return FormulaClass.ARITHMETICAL
    if not _has_exists_set(a):
        return FormulaClass.PI1
    return FormulaClass.GENERAL


# ---------------------------------------------------------------------------
# Instances of quantified and compound formulas
# ---------------------------------------------------------------------------

def disjunct(a: Formula, k: int) -> Formula:
    """k-th component of a conjunction or disjunction"""
    if k not in (0, 1):
        raise IllFormed(f"component index must be 0 or 1, got {k}")
    return a.left if k == 0 else a.right


def instance_num(a: Formula, term: NumTerm) -> Formula:
    return subst_num(a.body, a.binder, term)


def instance_set(a: Formula, var: str) -> Formula:
    return rename_set(a.body, a.binder, var)


def instance_abs(a: Formula, abstraction: Abstraction) -> Formula:
    return subst_set(a.body, a.binder, abstraction)


# ---------------------------------------------------------------------------
# Sequents
# ---------------------------------------------------------------------------

Sequent = FrozenSet[Formula]


def sequent(*formulas: Formula) -> Sequent:
    return frozenset(formulas)


def is_pi1_sequent(formulas: Iterable[Formula]) -> bool:
    return all(classify(f) is not FormulaClass.GENERAL for f in formulas)


def sequent_free_vars(formulas: Iterable[Formula]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    nums, sets = set(), set()
    for f in formulas:
        f_nums, f_sets = free_vars(f)
        nums |= f_nums
        sets |= f_sets
    return frozenset(nums), frozenset(sets)


def format_sequent(formulas: Iterable[Formula]) -> str:
    return "{" + ", ".join(sorted(str(f) for f in formulas)) + "}"
