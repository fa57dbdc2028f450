"""
Cut Elimination by Reduction
============================

The one-step reduction red, the gate that delimits its domain, the cut-free
predicate and a budgeted normalization loop that records every step it takes.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import List, Optional, Tuple

from .calculus import (
    CACHE_SIZE,
    LOGICAL_RULES,
    AllSetI,
    AndI,
    Ax,
    Derivation,
    Ew,
    ExI,
    MapRed,
    OmI,
    OrI,
    Selector,
    Template,
    Weak,
    alpha_equal,
    contains_cut,
    degree,
    end_sequent,
    first_operator,
    is_proper,
    validate,
    weaken,
)
from .calculus import clear_caches as clear_calculus_caches
from .config import get_settings
from .errors import (
    GateFailed,
    ImproperDerivation,
    InternalInconsistency,
    InvalidOmegaIndex,
    NotBIMinus,
    NotPi1EndSequent,
    ParameterSensitive,
    format_path,
)
from .lang import format_sequent, is_pi1_sequent
from .notation import (
    _OPAQUE,
    AllSetS,
    AndS,
    AxS,
    CutS,
    ExS,
    Nat,
    Omega,
    OmegaS,
    OmegaTildeS,
    OmS,
    OrS,
    RepS,
    canonical_index,
    child,
    opaque_parameters,
    rule_of,
)
from .notation import clear_caches as clear_notation_caches

logger = logging.getLogger(__name__)

AXIOM = "axiom"
LOGICAL_ROOT = "logical-root"
LOGICAL_TP = "logical-tp"
REP = "rep"
OMEGA_TILDE = "omega-tilde"
WEAKENING = "weakening"


@dataclass(frozen=True)
class GateReport:
    """Gate conditions; tp_ok stays None when an improper term leaves tp undefined"""

    proper: bool
    pi1_end: bool
    degree_zero: bool
    tp_ok: Optional[bool] = None

    @property
    def eligible(self):
        return self.proper and self.pi1_end and self.degree_zero and self.tp_ok is True

    def __str__(self):
        if self.eligible:
            return "eligible"
        failed = [name for name in ("proper", "pi1_end", "degree_zero", "tp_ok") if getattr(self, name) is False]
        text = "failed " + ", ".join(failed)
        return text + " (tp not computed)" if self.tp_ok is None else text


def gate(d: Derivation) -> GateReport:
    """Decide whether red is defined on d"""
    proper = bool(is_proper(d))
    pi1_end = is_pi1_sequent(end_sequent(d))
    degree_zero = degree(d) == 0
    if not proper:
        return GateReport(False, pi1_end, degree_zero)
    symbol = rule_of(d)
    tp_ok = not isinstance(symbol, (CutS, OmegaS))
    if pi1_end and degree_zero and not tp_ok:
        raise InternalInconsistency(f"proper degree-0 derivation with Π¹ end-sequent ends in {symbol}")
    return GateReport(proper, pi1_end, degree_zero, tp_ok)


def require_gate(d: Derivation) -> GateReport:
    """gate(d), raising ImproperDerivation or GateFailed when red is not defined"""
    report = gate(d)
    if not report.proper:
        properness = is_proper(d)
        raise ImproperDerivation(f"{properness.clause}: {properness.message}", properness.path, properness.clause)
    if not report.eligible:
        raise GateFailed(report)
    return report


# ---------------------------------------------------------------------------
# red
# ---------------------------------------------------------------------------

def _reduce_family(f):
    if isinstance(f, Template):
        try:
            with opaque_parameters(f.param):
                return Template(f.param, _red(f.schema))
        except ParameterSensitive as exc:
            logger.debug("template over %s reduced pointwise: %s", f.param, exc)
            return MapRed(f)
    return MapRed(f)


def _red(d):
    return _reduce(d, _OPAQUE.get())[0]


@lru_cache(maxsize=CACHE_SIZE)
def _reduce(d, opaque):
    reduct, clause = _reduct(d)
    return weaken(reduct, end_sequent(d)), clause


def _reduct(d):
    """The reduct before weakening; it may lack formulas of the end-sequent of d"""
    if isinstance(d, Weak):
        return Weak(d.side, _red(d.d0)), WEAKENING
    symbol = rule_of(d)
    if isinstance(symbol, AxS):
        return Ax(symbol.delta), AXIOM
    if isinstance(d, LOGICAL_RULES):
        if isinstance(d, AndI):
            return AndI(d.principal, _red(d.d0), _red(d.d1)), LOGICAL_ROOT
        if isinstance(d, OmI):
            return OmI(d.principal, _reduce_family(d.family)), LOGICAL_ROOT
        return replace(d, d0=_red(d.d0)), LOGICAL_ROOT
    if isinstance(symbol, AndS):
        return AndI(symbol.principal, child(d, Nat(0)), child(d, Nat(1))), LOGICAL_TP
    if isinstance(symbol, OrS):
        return OrI(symbol.k, symbol.principal, child(d, Nat(0))), LOGICAL_TP
    if isinstance(symbol, ExS):
        return ExI(symbol.k, symbol.principal, child(d, Nat(0))), LOGICAL_TP
    if isinstance(symbol, AllSetS):
        return AllSetI(symbol.eigen, symbol.principal, child(d, Nat(0))), LOGICAL_TP
    if isinstance(symbol, OmS):
        return OmI(symbol.principal, Selector(d)), LOGICAL_TP
    if isinstance(symbol, RepS):
        return child(d, Nat(0)), REP
    if isinstance(symbol, OmegaTildeS):
        try:
            q = canonical_index(d, symbol)
        except InvalidOmegaIndex as exc:
            raise InternalInconsistency(f"collapsing witness rejected ({exc.clause}): {exc.message}") from exc
        return child(d, Omega(q)), OMEGA_TILDE
    raise InternalInconsistency(f"red reached a derivation ending in {symbol}")


def reduce_step(d: Derivation) -> Tuple[Derivation, str]:
    """red(d) together with the name of the clause that fired"""
    require_gate(d)
    return _reduce(d, _OPAQUE.get())


def red(d: Derivation) -> Derivation:
    """
    One reduction step. The result has the same end-sequent, degree 0 and is
    proper; for Rep and Ω~ it is an immediate child of d, weakened to the
    end-sequent of d when the child lacks some of its formulas.
    """
    return reduce_step(d)[0]


# ---------------------------------------------------------------------------
# Cut-freeness and preparation
# ---------------------------------------------------------------------------

def strip_lazy(d: Derivation) -> Derivation:
    """Remove pointwise-reduction wrappers from every premise family"""
    if isinstance(d, Ax):
        return d
    if isinstance(d, OmI):
        family = d.family
        while isinstance(family, MapRed):
            family = family.inner
        if isinstance(family, Template):
            family = Template(family.param, strip_lazy(family.schema))
        else:
            family = Selector(strip_lazy(family.parent))
        return OmI(d.principal, family)
    updates = {name: strip_lazy(getattr(d, name)) for name in ("d0", "d1") if hasattr(d, name)}
    return replace(d, **updates)


def is_cut_free(d: Derivation) -> bool:
    """No Cut or R anywhere and red(d) = d up to renaming and lazy wrappers"""
    require_gate(d)
    if contains_cut(d):
        return False
    return alpha_equal(strip_lazy(red(d)), strip_lazy(d))


def prepare(d: Derivation) -> Derivation:
    """Wrap an operator-free derivation with Π¹ end-sequent in Ew so that red applies"""
    validate(d)
    offending = first_operator(d)
    if offending is not None:
        raise NotBIMinus("reduction operators or lazy families are not allowed in the input", offending)
    if not is_pi1_sequent(end_sequent(d)):
        raise NotPi1EndSequent(f"end-sequent {format_sequent(end_sequent(d))} has a second-order existential")
    prepared = Ew(d)
    require_gate(prepared)
    return prepared


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    index: int
    path: tuple
    clause: str
    label: str
    before: Derivation
    after: Derivation
    params: tuple = ()

    @property
    def sequent(self):
        return end_sequent(self.after)


@dataclass
class Trace:
    initial: Derivation
    steps: List[TraceStep] = field(default_factory=list)
    final: Optional[Derivation] = None
    budget_exhausted: bool = False
    lazy_families: int = 0

    def cut_free(self) -> bool:
        return not self.budget_exhausted and is_cut_free(self.final)

    def records(self, verdict=None) -> List[dict]:
        """One record per step; passed is filled in from an audit verdict when given"""
        by_step = verdict.by_step() if verdict is not None else {}
        records = []
        for step in self.steps:
            checks = by_step.get(step.index, [])
            records.append(
                {
                    "step": step.index,
                    "path": format_path(step.path),
                    "clause": step.clause,
                    "label": step.label,
                    "sequent": format_sequent(step.sequent),
                    "degree": degree(step.after),
                    "params": list(step.params),
                    "passed": all(check.passed for check in checks) if verdict is not None else None,
                }
            )
        return records


class _Normalizer:
    """Reduce at the root until a logical rule appears, then descend into its stored premises"""

    def __init__(self, max_steps):
        self.max_steps = max_steps
        self.steps: List[TraceStep] = []
        self.exhausted = False
        self.lazy_families = 0

    def run(self, d, path=()):
        while True:
            if isinstance(d, Weak):
                return Weak(d.side, self.run(d.d0, path))
            if isinstance(d, Ax):
                return d
            if isinstance(d, LOGICAL_RULES):
                return self.descend(d, path)
            if len(self.steps) >= self.max_steps:
                self.exhausted = True
                return d
            label = str(rule_of(d))
            after, clause = _reduce(d, _OPAQUE.get())
            logger.debug("step %d at %s: %s on %s", len(self.steps), format_path(path), clause, label)
            self.steps.append(TraceStep(len(self.steps), path, clause, label, d, after, tuple(sorted(_OPAQUE.get()))))
            d = after

    def descend(self, d, path):
        if isinstance(d, AndI):
            return AndI(d.principal, self.run(d.d0, path + (0,)), self.run(d.d1, path + (1,)))
        if isinstance(d, OmI):
            return OmI(d.principal, self.family(d.family, path))
        return replace(d, d0=self.run(d.d0, path + (0,)))

    def family(self, f, path):
        if not isinstance(f, Template):
            self.lazy_families += 1
            return f
        mark, exhausted = len(self.steps), self.exhausted
        try:
            with opaque_parameters(f.param):
                return Template(f.param, self.run(f.schema, path + ("ω",)))
        except ParameterSensitive as exc:
            logger.debug("template at %s left lazy: %s", format_path(path), exc)
            del self.steps[mark:]
            self.exhausted = exhausted
            self.lazy_families += 1
            return MapRed(f)


def normalize(d: Derivation, max_steps: int = None) -> Trace:
    """
    Iterate red, descending into finitely stored premises and template
    schemas, until only axioms and logical rules remain or the budget runs out.

    Args:
        d: Gate-eligible derivation
        max_steps: Reduction budget over all positions (settings default)

    Returns:
        Trace of every step taken
    """
    max_steps = get_settings().max_steps if max_steps is None else max_steps
    require_gate(d)
    logger.info("normalizing derivation ending in %s with budget %d", format_sequent(end_sequent(d)), max_steps)
    normalizer = _Normalizer(max_steps)
    final = normalizer.run(d)
    trace = Trace(d, normalizer.steps, final, normalizer.exhausted, normalizer.lazy_families)
    if trace.budget_exhausted:
        logger.warning("reduction budget of %d steps exhausted", max_steps)
    logger.info("normalization took %d steps, %d lazy families", len(trace.steps), trace.lazy_families)
    return trace


def clear_caches():
    """Drop the memo tables of the calculus, the notation and red"""
    clear_calculus_caches()
    clear_notation_caches()
    _reduce.cache_clear()

