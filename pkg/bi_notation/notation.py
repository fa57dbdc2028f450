"""
Notation Semantics
==================

rule_of(d) is the last inference of the infinitary derivation denoted by d and
child(d, i) a term denoting its i-th immediate subderivation. Both are computed
lazily from the finite term; expand() unfolds a bounded part of the denoted
tree for inspection.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple, Union

from .calculus import (
    CACHE_SIZE,
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
    Weak,
    all_names,
    e_power,
    end_sequent,
    is_proper,
    iter_subterms,
    premise_at,
    rename_set_variable,
)
from .errors import (
    CalculusError,
    IllFormed,
    IndexOutOfRange,
    InvalidOmegaIndex,
    ParameterSensitive,
    format_path,
)
from .lang import (
    And,
    ExistsNum,
    ExistsSet,
    ForallNum,
    ForallSet,
    Formula,
    NumTerm,
    Or,
    Sequent,
    disjunct,
    format_sequent,
    fresh_name,
    instance_abs,
    instance_num,
    instance_set,
    may_coincide,
    negate,
    numeral,
    rank,
    sequent_free_vars,
    subst_set,
    term_value,
    term_vars,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Extended inference symbols
# ---------------------------------------------------------------------------

class ExtendedSymbol:
    """Inference symbol of the infinitary system"""


@dataclass(frozen=True)
class AxS(ExtendedSymbol):
    delta: Sequent

    def __str__(self):
        return f"Ax{format_sequent(self.delta)}"


@dataclass(frozen=True)
class AndS(ExtendedSymbol):
    principal: Formula

    def __str__(self):
        return f"∧[{self.principal}]"


@dataclass(frozen=True)
class OrS(ExtendedSymbol):
    k: int
    principal: Formula

    def __str__(self):
        return f"∨{self.k}[{self.principal}]"


@dataclass(frozen=True)
class OmS(ExtendedSymbol):
    principal: Formula

    def __str__(self):
        return f"ω[{self.principal}]"


@dataclass(frozen=True)
class ExS(ExtendedSymbol):
    k: NumTerm
    principal: Formula

    def __str__(self):
        return f"∃{self.k}[{self.principal}]"


@dataclass(frozen=True)
class AllSetS(ExtendedSymbol):
    eigen: str
    principal: Formula

    def __str__(self):
        return f"∀^{self.eigen}[{self.principal}]"


@dataclass(frozen=True)
class CutS(ExtendedSymbol):
    cut_formula: Formula

    def __str__(self):
        return f"Cut[{self.cut_formula}]"


@dataclass(frozen=True)
class RepS(ExtendedSymbol):
    def __str__(self):
        return "Rep"


@dataclass(frozen=True)
class OmegaS(ExtendedSymbol):
    neg_principal: Formula

    def __str__(self):
        return f"Ω[{self.neg_principal}]"


@dataclass(frozen=True)
class OmegaTildeS(ExtendedSymbol):
    eigen: str
    neg_principal: Formula

    def __str__(self):
        return f"Ω~^{self.eigen}[{self.neg_principal}]"


LOGICAL_SYMBOLS = (AndS, OrS, OmS, ExS, AllSetS)


# ---------------------------------------------------------------------------
# Child indices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaIndex:
    """Witness pair addressing one premise of an Omega inference"""

    witness: Derivation
    var: str
    target: Formula

    def __str__(self):
        return f"q[{self.var}]"


@dataclass(frozen=True)
class Nat:
    n: int

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class Omega:
    q: OmegaIndex

    def __str__(self):
        return str(self.q)


ChildIndex = Union[Nat, Omega]


class ArityKind(Enum):
    FINITE = "finite"
    OMEGA = "omega"
    BIG_OMEGA = "big-omega"


@dataclass(frozen=True)
class Arity:
    kind: ArityKind
    size: int = 0
    with_zero: bool = False

    def __str__(self):
        if self.kind is ArityKind.FINITE:
            return "{" + ", ".join(str(i) for i in range(self.size)) + "}"
        if self.kind is ArityKind.OMEGA:
            return "ω"
        return "{0} ∪ |∀XA|" if self.with_zero else "|∀XA|"


@dataclass(frozen=True)
class Signature:
    """Principal formulas, minor formulas per index and the index set of a symbol"""

    symbol: ExtendedSymbol
    principal: Sequent
    arity: Arity

    def minor(self, index: ChildIndex) -> Sequent:
        return minor_formulas(self.symbol, index)


def _set_target(symbol) -> Formula:
    target = negate(symbol.neg_principal)
    if not isinstance(target, ForallSet):
        raise IllFormed(f"{symbol} does not negate a universal set quantifier")
    return target


def principal_set(symbol: ExtendedSymbol) -> Sequent:
    if isinstance(symbol, AxS):
        return symbol.delta
    if isinstance(symbol, LOGICAL_SYMBOLS):
        return frozenset([symbol.principal])
    if isinstance(symbol, OmegaS):
        return frozenset([symbol.neg_principal])
    return frozenset()


def arity(symbol: ExtendedSymbol) -> Arity:
    if isinstance(symbol, AxS):
        return Arity(ArityKind.FINITE, 0)
    if isinstance(symbol, (AndS, CutS)):
        return Arity(ArityKind.FINITE, 2)
    if isinstance(symbol, (OrS, ExS, AllSetS, RepS)):
        return Arity(ArityKind.FINITE, 1)
    if isinstance(symbol, OmS):
        return Arity(ArityKind.OMEGA)
    if isinstance(symbol, OmegaS):
        return Arity(ArityKind.BIG_OMEGA)
    return Arity(ArityKind.BIG_OMEGA, with_zero=True)


def witness_minor(q: OmegaIndex) -> Sequent:
    return end_sequent(q.witness) - {instance_set(q.target, q.var)}


def minor_formulas(symbol: ExtendedSymbol, index: ChildIndex) -> Sequent:
    """Minor formulas of symbol at index"""
    if isinstance(index, Omega):
        if not isinstance(symbol, (OmegaS, OmegaTildeS)):
            raise IndexOutOfRange(f"{symbol} has no Omega-indexed premises")
        return witness_minor(index.q)
    n = index.n
    if isinstance(symbol, AndS):
        return frozenset([disjunct(symbol.principal, n)])
    if isinstance(symbol, OrS):
        return frozenset([disjunct(symbol.principal, symbol.k)])
    if isinstance(symbol, OmS):
        return frozenset([instance_num(symbol.principal, numeral(n))])
    if isinstance(symbol, ExS):
        return frozenset([instance_num(symbol.principal, symbol.k)])
    if isinstance(symbol, AllSetS):
        return frozenset([instance_set(symbol.principal, symbol.eigen)])
    if isinstance(symbol, CutS):
        return frozenset([symbol.cut_formula if n == 0 else negate(symbol.cut_formula)])
    if isinstance(symbol, OmegaTildeS):
        return frozenset([instance_set(_set_target(symbol), symbol.eigen)])
    return frozenset()


def signature(symbol: ExtendedSymbol) -> Signature:
    return Signature(symbol, principal_set(symbol), arity(symbol))


def eigenvariable(symbol: ExtendedSymbol) -> Optional[str]:
    if isinstance(symbol, (AllSetS, OmegaTildeS)):
        return symbol.eigen
    return None


def substituted_eigen(d: Sub, symbol: ExtendedSymbol) -> Optional[str]:
    """Eigenvariable of symbol seen through d, renamed apart from d.x and the set variables of d.t"""
    eigen = eigenvariable(symbol)
    if eigen is None or (eigen != d.x and eigen not in d.t.free_vars()[1]):
        return eigen
    return fresh_name(eigen, all_names(d))


def relabel(symbol: ExtendedSymbol, var: str, abstraction, eigen: Optional[str] = None) -> ExtendedSymbol:
    """Symbol with a set substitution applied to its formulas; index sets are untouched"""

    def sub(a):
        return subst_set(a, var, abstraction)

    if isinstance(symbol, AxS):
        return AxS(frozenset(map(sub, symbol.delta)))
    if isinstance(symbol, AndS):
        return AndS(sub(symbol.principal))
    if isinstance(symbol, OrS):
        return OrS(symbol.k, sub(symbol.principal))
    if isinstance(symbol, OmS):
        return OmS(sub(symbol.principal))
    if isinstance(symbol, ExS):
        return ExS(symbol.k, sub(symbol.principal))
    if isinstance(symbol, AllSetS):
        return AllSetS(eigen or symbol.eigen, sub(symbol.principal))
    if isinstance(symbol, CutS):
        return CutS(sub(symbol.cut_formula))
    if isinstance(symbol, OmegaS):
        return OmegaS(sub(symbol.neg_principal))
    if isinstance(symbol, OmegaTildeS):
        return OmegaTildeS(eigen or symbol.eigen, sub(symbol.neg_principal))
    return symbol


def root_symbol(d: Derivation) -> Optional[ExtendedSymbol]:
    """Symbol of the inference stored at the root, None for operators"""
    if isinstance(d, Weak):
        return root_symbol(d.d0)
    if isinstance(d, Ax):
        return AxS(d.delta)
    if isinstance(d, AndI):
        return AndS(d.principal)
    if isinstance(d, OrI):
        return OrS(d.k, d.principal)
    if isinstance(d, OmI):
        return OmS(d.principal)
    if isinstance(d, ExI):
        return ExS(d.k, d.principal)
    if isinstance(d, AllSetI):
        return AllSetS(d.eigen, d.principal)
    if isinstance(d, Cut):
        return CutS(d.cut_formula)
    if isinstance(d, OrSetI):
        return OmegaS(d.principal)
    return None


# ---------------------------------------------------------------------------
# Opaque template parameters
# ---------------------------------------------------------------------------

_OPAQUE: ContextVar[FrozenSet[str]] = ContextVar("opaque_parameters", default=frozenset())


@contextmanager
def opaque_parameters(*names):
    """Treat the given number variables as unknown numerals inside the block"""
    token = _OPAQUE.set(_OPAQUE.get() | frozenset(names))
    try:
        yield
    finally:
        _OPAQUE.reset(token)


def _occurs(a: Formula, formulas: Sequent) -> bool:
    if a in formulas:
        return True
    params = _OPAQUE.get()
    if params and any(may_coincide(a, b, params) for b in formulas):
        raise ParameterSensitive(f"membership of {a} depends on the value of {sorted(params)}")
    return False


def _index_value(k: NumTerm) -> int:
    value = term_value(k)
    if value is not None:
        return value
    if term_vars(k) & _OPAQUE.get():
        raise ParameterSensitive(f"existential witness {k} depends on a template parameter")
    raise IllFormed(f"existential witness {k} is not a numeral")


# ---------------------------------------------------------------------------
# Omega indices
# ---------------------------------------------------------------------------

def make_index(h: Derivation, var: str, target: Formula) -> OmegaIndex:
    """
    Validate a witness pair for the premises of an Omega inference

    Args:
        h: Witness derivation, must be of the form Col(h0) and proper
        var: Set variable standing for the instance A(var)
        target: The universal set formula being indexed

    Returns:
        OmegaIndex for (h, var)
    """
    if not isinstance(target, ForallSet):
        raise InvalidOmegaIndex(f"index target {target} is not a universal set formula", clause="target")
    if not isinstance(h, Col):
        raise InvalidOmegaIndex(f"witness is a {type(h).__name__}, not a collapse", clause="collapse-shape")
    properness = is_proper(h)
    if not properness:
        raise InvalidOmegaIndex(f"witness is not proper: {properness}", clause="proper")
    rest = end_sequent(h) - {instance_set(target, var)}
    if var in sequent_free_vars(rest)[1]:
        raise InvalidOmegaIndex(f"{var} occurs free in the witness side formulas", clause="fresh-variable")
    return OmegaIndex(h, var, target)


def canonical_index(d: Derivation, symbol: OmegaTildeS) -> OmegaIndex:
    """The pair (Col(d[0]), Y) selected by collapsing"""
    return make_index(Col(child(d, Nat(0))), symbol.eigen, _set_target(symbol))


# ---------------------------------------------------------------------------
# tp and d[i]
# ---------------------------------------------------------------------------

def rule_of(d: Derivation) -> ExtendedSymbol:
    """Last inference symbol of the derivation denoted by d"""
    return _rule_of(d, _OPAQUE.get())


@lru_cache(maxsize=CACHE_SIZE)
def _rule_of(d, opaque):
    if isinstance(d, Weak):
        return rule_of(d.d0)
    symbol = root_symbol(d)
    if symbol is not None:
        return symbol
    if isinstance(d, (E, Ew)):
        below = rule_of(d.d0)
        return RepS() if isinstance(below, CutS) else below
    if isinstance(d, Col):
        below = rule_of(d.d0)
        return RepS() if isinstance(below, OmegaTildeS) else below
    if isinstance(d, Sub):
        below = rule_of(d.d0)
        return relabel(below, d.x, d.t, substituted_eigen(d, below))
    if isinstance(d, R):
        return _r_case(d, opaque)[1]
    raise IllFormed(f"not a derivation: {d!r}")


@lru_cache(maxsize=CACHE_SIZE)
def _r_case(d, opaque):
    """Which reduction case applies to R(A, d0, d1), and the resulting symbol"""
    a = d.cut_formula
    na = negate(a)
    left = rule_of(d.d0)
    right = rule_of(d.d1)
    if not _occurs(a, principal_set(left)):
        return "left", left
    if not _occurs(na, principal_set(right)):
        return "right", right
    if isinstance(left, AxS) and _occurs(na, left.delta):
        return "axiom-left", RepS()
    if isinstance(right, AxS) and _occurs(a, right.delta):
        return "axiom-right", RepS()
    if isinstance(a, And) and isinstance(left, AndS) and isinstance(right, OrS):
        return "and", CutS(disjunct(a, right.k))
    if isinstance(a, Or) and isinstance(left, OrS) and isinstance(right, AndS):
        return "or", CutS(disjunct(na, left.k))
    if isinstance(a, ForallNum) and isinstance(left, OmS) and isinstance(right, ExS):
        return "forall-num", CutS(instance_num(a, numeral(_index_value(right.k))))
    if isinstance(a, ExistsNum) and isinstance(left, ExS) and isinstance(right, OmS):
        return "exists-num", CutS(instance_num(na, numeral(_index_value(left.k))))
    if isinstance(a, ForallSet) and isinstance(left, AllSetS) and isinstance(right, OmegaS):
        return "forall-set", OmegaTildeS(left.eigen, na)
    if isinstance(a, ExistsSet) and isinstance(left, OmegaS) and isinstance(right, AllSetS):
        return "exists-set", OmegaTildeS(right.eigen, a)
    raise IllFormed(f"cut on {a} is principal on both sides with incompatible rules {left} and {right}")


def _check_index(symbol: ExtendedSymbol, index: ChildIndex):
    if isinstance(index, Omega):
        if not isinstance(symbol, (OmegaS, OmegaTildeS)):
            raise IndexOutOfRange(f"{symbol} has no Omega-indexed premises")
        if index.q.target != _set_target(symbol):
            raise InvalidOmegaIndex(f"index targets {index.q.target}, expected {_set_target(symbol)}", clause="target")
        return
    if not isinstance(index, Nat) or isinstance(index.n, bool) or not isinstance(index.n, int) or index.n < 0:
        raise IndexOutOfRange(f"{index!r} is not a child index")
    shape = arity(symbol)
    if shape.kind is ArityKind.FINITE and index.n < shape.size:
        return
    if shape.kind is ArityKind.OMEGA:
        return
    if shape.kind is ArityKind.BIG_OMEGA and shape.with_zero and index.n == 0:
        return
    raise IndexOutOfRange(f"index {index} is outside {shape} for {symbol}")


def child(d: Derivation, index: ChildIndex) -> Derivation:
    """Term for the premise at index of the derivation denoted by d"""
    _check_index(rule_of(d), index)
    return _child(d, index, _OPAQUE.get())


@lru_cache(maxsize=CACHE_SIZE)
def _child(d, index, opaque):
    if isinstance(d, (AndI, Cut)):
        return d.d1 if index.n == 1 else d.d0
    if isinstance(d, (OrI, ExI, AllSetI)):
        return d.d0
    if isinstance(d, OmI):
        return premise_at(d.family, index.n)
    if isinstance(d, OrSetI):
        q = index.q
        cut_formula = instance_abs(q.target, d.t)
        return R(cut_formula, Sub(q.var, d.t, q.witness), d.d0)
    if isinstance(d, E):
        below = rule_of(d.d0)
        if isinstance(below, CutS):
            return R(below.cut_formula, E(child(d.d0, Nat(0))), E(child(d.d0, Nat(1))))
        return E(child(d.d0, index))
    if isinstance(d, Ew):
        below = rule_of(d.d0)
        if isinstance(below, CutS):
            cut = Cut(below.cut_formula, Ew(child(d.d0, Nat(0))), Ew(child(d.d0, Nat(1))))
            return e_power(rank(below.cut_formula) + 1, cut)
        return Ew(child(d.d0, index))
    if isinstance(d, Col):
        below = rule_of(d.d0)
        if isinstance(below, OmegaTildeS):
            return Col(child(d.d0, Omega(canonical_index(d.d0, below))))
        return Col(child(d.d0, index))
    if isinstance(d, Weak):
        return child(d.d0, index)
    if isinstance(d, Sub):
        below = rule_of(d.d0)
        premise = child(d.d0, index)
        eigen, renamed = eigenvariable(below), substituted_eigen(d, below)
        if renamed != eigen and index == Nat(0):
            premise = rename_set_variable(premise, eigen, renamed)
        return Sub(d.x, d.t, premise)
    if isinstance(d, R):
        return _r_child(d, index, opaque)
    raise IndexOutOfRange(f"{type(d).__name__} has no premises")


def _r_child(d, index, opaque):
    case, _ = _r_case(d, opaque)
    a, d0, d1 = d.cut_formula, d.d0, d.d1
    if case == "left":
        return R(a, child(d0, index), d1)
    if case == "right":
        return R(a, d0, child(d1, index))
    if case == "axiom-left":
        return d1
    if case == "axiom-right":
        return d0
    if case == "and":
        if index.n == 0:
            return R(a, child(d0, Nat(rule_of(d1).k)), d1)
        return R(a, d0, child(d1, Nat(0)))
    if case == "or":
        if index.n == 0:
            return R(a, d0, child(d1, Nat(rule_of(d0).k)))
        return R(a, child(d0, Nat(0)), d1)
    if case == "forall-num":
        if index.n == 0:
            return R(a, child(d0, Nat(_index_value(rule_of(d1).k))), d1)
        return R(a, d0, child(d1, Nat(0)))
    if case == "exists-num":
        if index.n == 0:
            return R(a, d0, child(d1, Nat(_index_value(rule_of(d0).k))))
        return R(a, child(d0, Nat(0)), d1)
    if case == "forall-set":
        if isinstance(index, Nat):
            return R(a, child(d0, Nat(0)), d1)
        return R(a, d0, child(d1, index))
    if isinstance(index, Nat):
        return R(a, d0, child(d1, Nat(0)))
    return R(a, child(d0, index), d1)


# ---------------------------------------------------------------------------
# Sampling and lazy expansion
# ---------------------------------------------------------------------------

def witnesses(d: Derivation, symbol: ExtendedSymbol, budget: int) -> List[OmegaIndex]:
    """
    Omega indices reachable from d itself: the collapsing witness for Ω~ and,
    for Ω, second-order introductions of the target found inside d.
    """
    if budget <= 0:
        return []
    found = []
    if isinstance(symbol, OmegaTildeS):
        try:
            found.append(canonical_index(d, symbol))
        except CalculusError as exc:
            logger.debug("canonical witness rejected: %s", exc)
        return found
    if not isinstance(symbol, OmegaS):
        return found
    target = _set_target(symbol)
    for path, sub in iter_subterms(d):
        if len(found) >= budget:
            break
        if isinstance(sub, AllSetI) and sub.principal == target:
            try:
                q = make_index(Col(sub.d0), sub.eigen, target)
            except CalculusError as exc:
                logger.debug("witness candidate at %s rejected: %s", format_path(path), exc)
                continue
            if q not in found:
                found.append(q)
    return found


def sample_indices(d: Derivation, omega_picks=(0, 1, 2), witness_budget=1) -> List[ChildIndex]:
    """Finite indices in full, ω at the picks and Omega indices from witnesses()"""
    symbol = rule_of(d)
    shape = arity(symbol)
    if shape.kind is ArityKind.FINITE:
        return [Nat(i) for i in range(shape.size)]
    if shape.kind is ArityKind.OMEGA:
        return [Nat(n) for n in omega_picks]
    indices = [Nat(0)] if shape.with_zero else []
    indices += [Omega(q) for q in witnesses(d, symbol, witness_budget)]
    return indices


@dataclass
class TreeView:
    label: ExtendedSymbol
    sequent: Sequent
    children: List[Tuple[ChildIndex, "TreeView"]] = field(default_factory=list)
    truncated: bool = False
    path: tuple = ()

    def walk(self):
        yield self
        for _, sub in self.children:
            yield from sub.walk()


def expand(d: Derivation, depth: int, omega_picks=(0, 1, 2), witness_budget=1, path=()) -> TreeView:
    """Unfold the denoted derivation to the given depth"""
    symbol = rule_of(d)
    view = TreeView(symbol, end_sequent(d), path=path)
    indices = sample_indices(d, omega_picks, witness_budget)
    if depth <= 0:
        view.truncated = arity(symbol).kind is not ArityKind.FINITE or arity(symbol).size > 0
        return view
    for index in indices:
        sub = child(d, index)
        view.children.append((index, expand(sub, depth - 1, omega_picks, witness_budget, path + (str(index),))))
    return view


def render_tree(view: TreeView, indent: str = "  ") -> str:
    """Indented text rendering, one node per line"""
    lines = []

    def visit(node, index, level):
        prefix = f"[{index}] " if index is not None else ""
        mark = " …" if node.truncated else ""
        lines.append(f"{indent * level}{prefix}{node.label}  ⊢ {format_sequent(node.sequent)}{mark}")
        for sub_index, sub in node.children:
            visit(sub, sub_index, level + 1)

    visit(view, None, 0)
    return "\n".join(lines)


def tree_records(view: TreeView) -> List[dict]:
    """One record per node: path, label, sequent, truncated flag"""
    return [
        {
            "path": format_path(node.path),
            "depth": len(node.path),
            "label": str(node.label),
            "sequent": format_sequent(node.sequent),
            "truncated": node.truncated,
        }
        for node in view.walk()
    ]


def clear_caches():
    for cached in (_rule_of, _r_case, _child):
        cached.cache_clear()
