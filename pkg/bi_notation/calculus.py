"""
Finite Derivation Terms
=======================

Derivations of the calculus with the reduction operators R, E, Ew, Col and
Sub and structural weakening, their end-sequents, cut-degrees and properness.
Inferences with infinitely many premises carry a finite premise family
instead of a list.
"""

import logging
from dataclasses import dataclass, fields
from functools import cached_property, lru_cache
from typing import FrozenSet, Iterator, Optional, Tuple

from .config import get_settings
from .errors import (
    AxiomNotTrue,
    EigenvariableClash,
    EigenvariableEscapes,
    IllFormed,
    NotClosedLiteral,
    format_path,
)
from .lang import (
    Abstraction,
    And,
    ExistsNum,
    ExistsSet,
    ForallNum,
    ForallSet,
    Formula,
    NumTerm,
    NumVar,
    Or,
    SetLit,
    Sequent,
    as_term,
    disjunct,
    eval_literal,
    fresh_name,
    free_vars,
    instance_abs,
    instance_num,
    instance_set,
    is_literal,
    is_pi1_sequent,
    negate,
    numeral,
    rank,
    rename_free,
    rename_term,
    sequent_free_vars,
    subst_num,
    subst_set,
    subst_term,
    term_vars,
)

logger = logging.getLogger(__name__)

COLLAPSE_DEGREE = "collapse-degree"
COLLAPSE_PI1 = "collapse-pi1-end"
SUBSTITUTION_TARGET = "substitution-target"

CACHE_SIZE = get_settings().cache_size


class _Term:
    """Structural equality with a cached hash"""

    def _values(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    @cached_property
    def _hash(self):
        return hash((type(self).__name__,) + self._values())

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, _Term):
            return NotImplemented
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._values() == other._values()


class Derivation(_Term):
    """Base class of derivation terms"""

    def __str__(self):
        from .sexpr import render

        return render(self)


class PremiseFamily(_Term):
    """Finite description of the premises of an omega-rule inference"""


# ---------------------------------------------------------------------------
# Derivation constructors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ax(Derivation):
    delta: Sequent

    def __post_init__(self):
        object.__setattr__(self, "delta", frozenset(self.delta))


@dataclass(frozen=True, eq=False)
class AndI(Derivation):
    principal: Formula
    d0: Derivation
    d1: Derivation


@dataclass(frozen=True, eq=False)
class OrI(Derivation):
    k: int
    principal: Formula
    d0: Derivation


@dataclass(frozen=True, eq=False)
class OmI(Derivation):
    principal: Formula
    family: PremiseFamily


@dataclass(frozen=True, eq=False)
class ExI(Derivation):
    k: NumTerm
    principal: Formula
    d0: Derivation

    def __post_init__(self):
        object.__setattr__(self, "k", as_term(self.k))


@dataclass(frozen=True, eq=False)
class AllSetI(Derivation):
    eigen: str
    principal: Formula
    d0: Derivation


@dataclass(frozen=True, eq=False)
class OrSetI(Derivation):
    t: Abstraction
    principal: Formula
    d0: Derivation


@dataclass(frozen=True, eq=False)
class Cut(Derivation):
    cut_formula: Formula
    d0: Derivation
    d1: Derivation


@dataclass(frozen=True, eq=False)
class R(Derivation):
    cut_formula: Formula
    d0: Derivation
    d1: Derivation


@dataclass(frozen=True, eq=False)
class E(Derivation):
    d0: Derivation


@dataclass(frozen=True, eq=False)
class Ew(Derivation):
    d0: Derivation


@dataclass(frozen=True, eq=False)
class Col(Derivation):
    d0: Derivation


@dataclass(frozen=True, eq=False)
class Sub(Derivation):
    x: str
    t: Abstraction
    d0: Derivation


@dataclass(frozen=True, eq=False)
class Weak(Derivation):
    """d0 with the formulas of side added to its end-sequent"""

    side: Sequent
    d0: Derivation

    def __post_init__(self):
        object.__setattr__(self, "side", frozenset(self.side))


@dataclass(frozen=True, eq=False)
class Template(PremiseFamily):
    """n-th premise is schema with the numeral n for param"""

    param: str
    schema: Derivation


@dataclass(frozen=True, eq=False)
class Selector(PremiseFamily):
    """n-th premise is child(parent, Nat(n))"""

    parent: Derivation


@dataclass(frozen=True, eq=False)
class MapRed(PremiseFamily):
    """n-th premise is red applied to the n-th premise of inner"""

    inner: PremiseFamily


LOGICAL_RULES = (AndI, OrI, OmI, ExI, AllSetI)
OPERATORS = (R, E, Ew, Col, Sub)
UNARY_OPERATORS = (E, Ew, Col)


def e_power(n: int, d: Derivation) -> Derivation:
    """E applied n times"""
    for _ in range(n):
        d = E(d)
    return d


def strip_weakening(d: Derivation) -> Derivation:
    while isinstance(d, Weak):
        d = d.d0
    return d


# ---------------------------------------------------------------------------
# Traversal
# ---------------------------------------------------------------------------

def family_terms(f: PremiseFamily) -> Iterator[Tuple[str, Derivation]]:
    """Generating derivation terms of a premise family"""
    if isinstance(f, Template):
        yield "ω", f.schema
    elif isinstance(f, Selector):
        yield "sel", f.parent
    else:
        for _, term in family_terms(f.inner):
            yield "map", term


def immediate_subterms(d: Derivation) -> Iterator[Tuple[object, Derivation]]:
    """Stored premises and family generating terms, with their positions"""
    if isinstance(d, (AndI, Cut, R)):
        yield 0, d.d0
        yield 1, d.d1
    elif isinstance(d, OmI):
        yield from family_terms(d.family)
    elif not isinstance(d, Ax):
        yield 0, d.d0


def iter_subterms(d: Derivation, path=()) -> Iterator[Tuple[tuple, Derivation]]:
    yield path, d
    for position, sub in immediate_subterms(d):
        yield from iter_subterms(sub, path + (position,))


def count_nodes(d: Derivation) -> int:
    return sum(1 for _ in iter_subterms(d))


def node_formulas(d: Derivation):
    """Formulas stored at the root node itself"""
    if isinstance(d, Ax):
        return list(d.delta)
    if isinstance(d, Weak):
        return list(d.side)
    if isinstance(d, LOGICAL_RULES + (OrSetI,)):
        return [d.principal]
    if isinstance(d, (Cut, R)):
        return [d.cut_formula]
    return []


def contains_cut(d: Derivation) -> bool:
    return any(isinstance(sub, (Cut, R)) for _, sub in iter_subterms(d))


def first_operator(d: Derivation) -> Optional[tuple]:
    """Path of the first node outside the operator-free fragment, if any"""
    for path, sub in iter_subterms(d):
        if isinstance(sub, OPERATORS):
            return path
        if isinstance(sub, OmI) and not isinstance(sub.family, Template):
            return path
    return None


def is_bi_minus(d: Derivation) -> bool:
    return first_operator(d) is None


# ---------------------------------------------------------------------------
# End-sequents and degrees
# ---------------------------------------------------------------------------

def _expect(formula, kind, d):
    if not isinstance(formula, kind):
        raise IllFormed(f"{type(d).__name__} needs a principal formula of shape {kind.__name__}, got {formula}")
    return formula


def stored_minor(d: Derivation) -> Formula:
    """Minor formula of the single premise of OrI, ExI, AllSetI and OrSetI"""
    if isinstance(d, OrI):
        return disjunct(_expect(d.principal, Or, d), d.k)
    if isinstance(d, ExI):
        return instance_num(_expect(d.principal, ExistsNum, d), d.k)
    if isinstance(d, AllSetI):
        return instance_set(_expect(d.principal, ForallSet, d), d.eigen)
    if isinstance(d, OrSetI):
        return instance_abs(_expect(d.principal, ExistsSet, d), d.t)
    raise IllFormed(f"{type(d).__name__} has no single minor formula")


@lru_cache(maxsize=CACHE_SIZE)
def end_sequent(d: Derivation) -> Sequent:
    """Last sequent of d, composed by set difference with built-in weakening"""
    if isinstance(d, Ax):
        return d.delta
    if isinstance(d, Weak):
        return end_sequent(d.d0) | d.side
    if isinstance(d, AndI):
        p = _expect(d.principal, And, d)
        return frozenset([p]) | (end_sequent(d.d0) - {p.left}) | (end_sequent(d.d1) - {p.right})
    if isinstance(d, (OrI, ExI, AllSetI, OrSetI)):
        return frozenset([d.principal]) | (end_sequent(d.d0) - {stored_minor(d)})
    if isinstance(d, OmI):
        p = _expect(d.principal, ForallNum, d)
        return frozenset([p]) | family_side(d.family, p)
    if isinstance(d, (Cut, R)):
        c = d.cut_formula
        return (end_sequent(d.d0) - {c}) | (end_sequent(d.d1) - {negate(c)})
    if isinstance(d, UNARY_OPERATORS):
        return end_sequent(d.d0)
    if isinstance(d, Sub):
        return frozenset(subst_set(a, d.x, d.t) for a in end_sequent(d.d0))
    raise IllFormed(f"not a derivation: {d!r}")


def family_side(f: PremiseFamily, principal: Formula) -> Sequent:
    """Union of the premise sequents of a family minus their minor formulas"""
    if isinstance(f, Template):
        return end_sequent(f.schema) - {instance_num(principal, NumVar(f.param))}
    if isinstance(f, Selector):
        return end_sequent(f.parent)
    if isinstance(f, MapRed):
        return family_side(f.inner, principal)
    raise IllFormed(f"not a premise family: {f!r}")


def weaken(d: Derivation, gamma: Sequent) -> Derivation:
    """d with its end-sequent extended to include gamma; d itself when nothing is missing"""
    missing = frozenset(gamma) - end_sequent(d)
    if not missing:
        return d
    if isinstance(d, Weak):
        return Weak(d.side | missing, d.d0)
    return Weak(missing, d)


@lru_cache(maxsize=CACHE_SIZE)
def degree(d: Derivation) -> int:
    """Cut-degree"""
    if isinstance(d, Ax):
        return 0
    if isinstance(d, AndI):
        return max(degree(d.d0), degree(d.d1))
    if isinstance(d, OmI):
        return family_degree(d.family)
    if isinstance(d, OrSetI):
        return max(rank(stored_minor(d)), degree(d.d0))
    if isinstance(d, Cut):
        return max(rank(d.cut_formula) + 1, degree(d.d0), degree(d.d1))
    if isinstance(d, R):
        return max(rank(d.cut_formula), degree(d.d0), degree(d.d1))
    if isinstance(d, E):
        return max(degree(d.d0) - 1, 0)
    if isinstance(d, Ew):
        return 0
    return degree(d.d0)


def family_degree(f: PremiseFamily) -> int:
    if isinstance(f, Template):
        return degree(f.schema)
    if isinstance(f, Selector):
        return degree(f.parent)
    return family_degree(f.inner)


# ---------------------------------------------------------------------------
# Properness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Properness:
    ok: bool
    path: tuple = ()
    clause: str = ""
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "proper"
        return f"{self.clause}: {self.message} (at {format_path(self.path)})"


@lru_cache(maxsize=CACHE_SIZE)
def _first_violation(d: Derivation):
    if isinstance(d, Col):
        if degree(d.d0) != 0:
            return (), COLLAPSE_DEGREE, f"collapsed derivation has degree {degree(d.d0)}"
        if not is_pi1_sequent(end_sequent(d.d0)):
            return (), COLLAPSE_PI1, "collapsed derivation ends in a second-order existential"
    if isinstance(d, Sub) and not isinstance(d.d0, Col):
        return (), SUBSTITUTION_TARGET, f"substitution applied to {type(d.d0).__name__} instead of Col"
    for position, sub in immediate_subterms(d):
        violation = _first_violation(sub)
        if violation is not None:
            path, clause, message = violation
            return (position,) + path, clause, message
    return None


def is_proper(d: Derivation) -> Properness:
    """Check every Col and Sub node; reports the first offending path"""
    violation = _first_violation(d)
    if violation is None:
        return Properness(True)
    return Properness(False, *violation)


# ---------------------------------------------------------------------------
# Premise families
# ---------------------------------------------------------------------------

def _instantiate_abstraction(t: Abstraction, name: str, term: NumTerm) -> Abstraction:
    bound = subst_num(ForallNum(t.binder, t.body), name, term)
    return Abstraction(bound.binder, bound.body)


@lru_cache(maxsize=CACHE_SIZE)
def instantiate(d: Derivation, name: str, term: NumTerm) -> Derivation:
    """Substitute a number term for a free number variable in every formula of d"""

    def sub(a):
        return subst_num(a, name, term)

    def rec(e):
        return instantiate(e, name, term)

    if isinstance(d, Ax):
        return Ax(frozenset(map(sub, d.delta)))
    if isinstance(d, Weak):
        return Weak(frozenset(map(sub, d.side)), rec(d.d0))
    if isinstance(d, AndI):
        return AndI(sub(d.principal), rec(d.d0), rec(d.d1))
    if isinstance(d, OrI):
        return OrI(d.k, sub(d.principal), rec(d.d0))
    if isinstance(d, OmI):
        return OmI(sub(d.principal), _instantiate_family(d.family, name, term))
    if isinstance(d, ExI):
        return ExI(subst_term(d.k, name, term), sub(d.principal), rec(d.d0))
    if isinstance(d, AllSetI):
        return AllSetI(d.eigen, sub(d.principal), rec(d.d0))
    if isinstance(d, OrSetI):
        return OrSetI(_instantiate_abstraction(d.t, name, term), sub(d.principal), rec(d.d0))
    if isinstance(d, (Cut, R)):
        return type(d)(sub(d.cut_formula), rec(d.d0), rec(d.d1))
    if isinstance(d, UNARY_OPERATORS):
        return type(d)(rec(d.d0))
    return Sub(d.x, _instantiate_abstraction(d.t, name, term), rec(d.d0))


def _instantiate_family(f: PremiseFamily, name: str, term: NumTerm) -> PremiseFamily:
    if isinstance(f, Template):
        if f.param == name:
            return f
        if f.param in term_vars(term):
            fresh = fresh_name(f.param, free_names(f.schema)[0] | term_vars(term) | {name})
            f = Template(fresh, instantiate(f.schema, f.param, NumVar(fresh)))
        return Template(f.param, instantiate(f.schema, name, term))
    if isinstance(f, Selector):
        return Selector(instantiate(f.parent, name, term))
    return MapRed(_instantiate_family(f.inner, name, term))


def premise_at(f: PremiseFamily, n: int) -> Derivation:
    """n-th premise of an omega-rule family"""
    if isinstance(f, Template):
        return instantiate(f.schema, f.param, numeral(n))
    if isinstance(f, Selector):
        from .notation import Nat, child

        return child(f.parent, Nat(n))
    if isinstance(f, MapRed):
        from .reduction import red

        return red(premise_at(f.inner, n))
    raise IllFormed(f"not a premise family: {f!r}")


# ---------------------------------------------------------------------------
# Free names and renaming
# ---------------------------------------------------------------------------

@lru_cache(maxsize=CACHE_SIZE)
def free_names(d: Derivation) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Number and set variables free in d, taking derivation binders into account"""
    nums, sets = sequent_free_vars(node_formulas(d))
    nums, sets = set(nums), set(sets)
    if isinstance(d, ExI):
        nums |= term_vars(d.k)
    if isinstance(d, (OrSetI, Sub)):
        t_nums, t_sets = d.t.free_vars()
        nums |= t_nums
        sets |= t_sets
    for position, sub in immediate_subterms(d):
        sub_nums, sub_sets = free_names(sub)
        if isinstance(d, AllSetI):
            sub_sets = sub_sets - {d.eigen}
        if isinstance(d, Sub):
            sub_sets = sub_sets - {d.x}
        if isinstance(d, OmI) and isinstance(d.family, Template) and position == "ω":
            sub_nums = sub_nums - {d.family.param}
        nums |= sub_nums
        sets |= sub_sets
    return frozenset(nums), frozenset(sets)


def all_names(d: Derivation) -> FrozenSet[str]:
    """Every variable name mentioned anywhere in d, bound or free"""
    names = set()
    for _, sub in iter_subterms(d):
        names |= set().union(*sequent_free_vars(node_formulas(sub)))
        if isinstance(sub, AllSetI):
            names.add(sub.eigen)
        if isinstance(sub, Sub):
            names.add(sub.x)
        if isinstance(sub, (OrSetI, Sub)):
            names |= set().union(*free_vars(ForallNum(sub.t.binder, sub.t.body)))
        if isinstance(sub, OmI) and isinstance(sub.family, Template):
            names.add(sub.family.param)
        if isinstance(sub, ExI):
            names |= term_vars(sub.k)
    return frozenset(names)


class _Renamer:
    """Rename derivation-level binders to fresh names, top-down"""

    def __init__(self, avoid, eigen=True, substitution=True, params=True, set_stem="X", num_stem="n"):
        self.avoid = set(avoid)
        self.eigen = eigen
        self.substitution = substitution
        self.params = params
        self.set_stem = set_stem
        self.num_stem = num_stem

    def fresh(self, stem):
        name = fresh_name(stem, self.avoid)
        self.avoid.add(name)
        return name

    def abstraction(self, t, sets, nums):
        bound = rename_free(ForallNum(t.binder, t.body), sets, nums)
        return Abstraction(bound.binder, bound.body)

    def derivation(self, d, sets, nums):
        def fm(a):
            return rename_free(a, sets, nums)

        if isinstance(d, Ax):
            return Ax(frozenset(map(fm, d.delta)))
        if isinstance(d, Weak):
            return Weak(frozenset(map(fm, d.side)), self.derivation(d.d0, sets, nums))
        if isinstance(d, AndI):
            return AndI(fm(d.principal), self.derivation(d.d0, sets, nums), self.derivation(d.d1, sets, nums))
        if isinstance(d, OrI):
            return OrI(d.k, fm(d.principal), self.derivation(d.d0, sets, nums))
        if isinstance(d, OmI):
            return OmI(fm(d.principal), self.family(d.family, sets, nums))
        if isinstance(d, ExI):
            return ExI(rename_term(d.k, nums), fm(d.principal), self.derivation(d.d0, sets, nums))
        if isinstance(d, AllSetI):
            new = self.fresh(self.set_stem) if self.eigen else d.eigen
            inner = {k: v for k, v in sets.items() if k != d.eigen}
            inner[d.eigen] = new
            return AllSetI(new, fm(d.principal), self.derivation(d.d0, inner, nums))
        if isinstance(d, OrSetI):
            return OrSetI(self.abstraction(d.t, sets, nums), fm(d.principal), self.derivation(d.d0, sets, nums))
        if isinstance(d, (Cut, R)):
            return type(d)(fm(d.cut_formula), self.derivation(d.d0, sets, nums), self.derivation(d.d1, sets, nums))
        if isinstance(d, UNARY_OPERATORS):
            return type(d)(self.derivation(d.d0, sets, nums))
        new = self.fresh(self.set_stem) if self.substitution else d.x
        inner = {k: v for k, v in sets.items() if k != d.x}
        inner[d.x] = new
        return Sub(new, self.abstraction(d.t, sets, nums), self.derivation(d.d0, inner, nums))

    def family(self, f, sets, nums):
        if isinstance(f, Template):
            new = self.fresh(self.num_stem) if self.params else f.param
            inner = {k: v for k, v in nums.items() if k != f.param}
            inner[f.param] = new
            return Template(new, self.derivation(f.schema, sets, inner))
        if isinstance(f, Selector):
            return Selector(self.derivation(f.parent, sets, nums))
        return MapRed(self.family(f.inner, sets, nums))


@lru_cache(maxsize=CACHE_SIZE)
def canonicalize(d: Derivation) -> Derivation:
    """Alpha-equivalent copy with binders named X0, X1, ... and n0, n1, ... in traversal order"""
    nums, sets = free_names(d)
    return _Renamer(nums | sets).derivation(d, {}, {})


def alpha_equal(d1: Derivation, d2: Derivation) -> bool:
    return canonicalize(d1) == canonicalize(d2)


def rename_separated(d: Derivation) -> Derivation:
    """Give every eigenvariable occurrence a globally distinct fresh name"""
    renamer = _Renamer(all_names(d), substitution=False, params=False, set_stem="Y")
    return renamer.derivation(d, {}, {})


def rename_set_variable(d: Derivation, old: str, new: str) -> Derivation:
    """d with the free set variable old renamed to new"""
    renamer = _Renamer(all_names(d) | {new}, eigen=False, substitution=False, params=False)
    return renamer.derivation(d, {old: new}, {})


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _check_shapes(d: Derivation, path=()):
    for position, sub in immediate_subterms(d):
        _check_shapes(sub, path + (position,))
    try:
        end_sequent(d)
        degree(d)
    except IllFormed as exc:
        raise exc.at(path)


class _Validator:
    """Top-down walk enforcing axiom shapes, eigenvariable and parameter discipline"""

    def __init__(self, samples, eigenvariables):
        self.samples = samples
        self.eigenvariables = eigenvariables

    def visit(self, d, path, above, below, params):
        gamma = end_sequent(d)
        if isinstance(d, Ax):
            self.check_axiom(d, path)
        self.check_numbers(d, gamma, path, params)
        if isinstance(d, AllSetI):
            if d.eigen in above:
                raise EigenvariableClash(f"eigenvariable {d.eigen} is reused on one path", path)
            if d.eigen in sequent_free_vars(gamma)[1] | below:
                raise EigenvariableEscapes(f"eigenvariable {d.eigen} occurs free below its inference", path)
            above = above | {d.eigen}
        if isinstance(d, (OrSetI, Sub)):
            clash = d.t.free_vars()[1] & self.eigenvariables
            if clash:
                raise EigenvariableClash(f"abstraction {d.t} mentions eigenvariables {sorted(clash)}", path)
        below = below | sequent_free_vars(gamma)[1]
        if isinstance(d, OmI):
            self.visit_family(d.family, d.principal, path, above, below, params)
            return
        for position, sub in immediate_subterms(d):
            self.visit(sub, path + (position,), above, below, params)

    def check_axiom(self, d, path):
        core = d.delta
        if len(core) == 1:
            (a,) = core
            if not is_literal(a):
                raise IllFormed(f"one-formula axiom needs a literal, got {a}", path)
            if isinstance(a, SetLit):
                raise AxiomNotTrue(f"{a} is a set literal", path)
            try:
                truth = eval_literal(a)
            except NotClosedLiteral as exc:
                raise AxiomNotTrue(f"{a} is not a closed literal", path) from exc
            if not truth:
                raise AxiomNotTrue(f"{a} is false", path)
        elif len(core) == 2:
            a, b = tuple(core)
            if b != negate(a):
                raise IllFormed(f"two-formula axiom must be complementary, got {a} and {b}", path)
        else:
            raise IllFormed(f"axiom core must have one or two formulas, got {len(core)}", path)

    def check_numbers(self, d, gamma, path, params):
        nums = set(sequent_free_vars(gamma)[0]) | set(sequent_free_vars(node_formulas(d))[0])
        if isinstance(d, ExI):
            nums |= term_vars(d.k)
        if isinstance(d, (OrSetI, Sub)):
            nums |= d.t.free_vars()[0]
        loose = nums - params
        if loose:
            raise IllFormed(f"free number variables {sorted(loose)}", path)

    def visit_family(self, f, principal, path, above, below, params):
        if isinstance(f, Template):
            if f.param in sequent_free_vars(family_side(f, principal))[0]:
                raise IllFormed(f"template parameter {f.param} occurs in a side formula", path)
            schema_sequent = end_sequent(f.schema)
            for n in self.samples:
                instance = premise_at(f, n)
                expected = frozenset(subst_num(a, f.param, numeral(n)) for a in schema_sequent)
                if end_sequent(instance) != expected:
                    raise IllFormed(f"template premise {n} does not follow its schema", path + (n,))
                self.visit(instance, path + (n,), above, below, params)
        elif isinstance(f, Selector):
            from .notation import OmS, rule_of

            symbol = rule_of(f.parent)
            if not isinstance(symbol, OmS) or symbol.principal != principal:
                raise IllFormed(f"selector parent ends in {symbol}, not the omega-rule for {principal}", path)
            self.visit(f.parent, path + ("sel",), above, below, params)
        else:
            self.visit_family(f.inner, principal, path, above, below, params)


def validate(d: Derivation, samples=None) -> Derivation:
    """
    Check grammar, axiom shapes, eigenvariable path discipline and parameter
    scoping. Template families are checked at sample numerals.

    Args:
        d: Derivation to check
        samples: Numerals used for template families (settings default)

    Returns:
        d itself when every check passes
    """
    samples = tuple(samples) if samples is not None else get_settings().template_samples
    _check_shapes(d)
    eigenvariables = frozenset(sub.eigen for _, sub in iter_subterms(d) if isinstance(sub, AllSetI))
    _Validator(samples, eigenvariables).visit(d, (), frozenset(), frozenset(), frozenset())
    logger.debug("validated derivation with %d nodes", count_nodes(d))
    return d


def clear_caches():
    """Drop memoized results"""
    for cached in (end_sequent, degree, _first_violation, instantiate, free_names, canonicalize):
        cached.cache_clear()
