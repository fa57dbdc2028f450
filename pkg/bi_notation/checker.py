"""
Audits
======

Executable versions of the local correctness properties of rule_of/child and
of the reduction step. Failures are collected as verdict entries, never raised.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .calculus import Derivation, alpha_equal, degree, end_sequent, is_proper, strip_weakening
from .config import get_settings
from .errors import CalculusError
from .lang import format_sequent, rank, sequent_free_vars
from .notation import (
    CutS,
    Nat,
    Omega,
    OmegaTildeS,
    RepS,
    canonical_index,
    child,
    eigenvariable,
    minor_formulas,
    opaque_parameters,
    principal_set,
    rule_of,
    sample_indices,
)
from .reduction import Trace, gate, red

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    where: str = "root"
    detail: str = ""
    step: Optional[int] = None

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        prefix = f"step {self.step} " if self.step is not None else ""
        suffix = f": {self.detail}" if self.detail else ""
        return f"[{status}] {prefix}{self.name} at {self.where}{suffix}"


@dataclass
class AuditVerdict:
    """Collected check results; overall holds when every check passed"""

    checks: List[CheckResult] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def by_step(self) -> Dict[int, List[CheckResult]]:
        grouped = defaultdict(list)
        for check in self.checks:
            if check.step is not None:
                grouped[check.step].append(check)
        return dict(grouped)

    def extend(self, other: "AuditVerdict", step=None):
        for check in other.checks:
            self.checks.append(CheckResult(check.name, check.passed, check.where, check.detail, step))
        return self

    def summary(self) -> str:
        verdict = "PASS" if self.overall else "FAIL"
        line = f"{verdict}: {len(self.checks) - len(self.failures())}/{len(self.checks)} checks passed"
        if self.budget_exhausted:
            line += " (reduction budget exhausted)"
        return "\n".join([line] + [str(check) for check in self.failures()])


class _Collector:
    def __init__(self):
        self.verdict = AuditVerdict()

    def record(self, name, where, test):
        """Run test() -> (passed, detail); errors count as failures"""
        try:
            passed, detail = test()
        except CalculusError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        self.verdict.checks.append(CheckResult(name, bool(passed), where, detail))
        if not passed:
            logger.debug("check %s failed at %s: %s", name, where, detail)


def default_samples(d: Derivation):
    settings = get_settings()
    return sample_indices(d, settings.omega_picks, settings.witness_budget)


def check_local(d: Derivation, samples=None) -> AuditVerdict:
    """
    Check the properties every premise returned by child must have.

    Args:
        d: Proper, validated derivation
        samples: Child indices to inspect (default_samples when omitted)

    Returns:
        AuditVerdict with one entry per check
    """
    collector = _Collector()
    gamma = end_sequent(d)
    symbol = rule_of(d)

    def principal():
        missing = principal_set(symbol) - gamma
        return not missing, f"missing {format_sequent(missing)}" if missing else ""

    collector.record("principal", "root", principal)

    if isinstance(symbol, CutS):

        def cut_rank():
            return rank(symbol.cut_formula) < degree(d), f"rank {rank(symbol.cut_formula)}, degree {degree(d)}"

        collector.record("cut-rank", "root", cut_rank)

    eigen = eigenvariable(symbol)
    if eigen is not None:
        collector.record("eigenvariable", "root", lambda: (eigen not in sequent_free_vars(gamma)[1], eigen))

    samples = default_samples(d) if samples is None else samples
    for index in samples:
        where = str(index)
        try:
            premise = child(d, index)
        except CalculusError as exc:
            collector.verdict.checks.append(CheckResult("child", False, where, f"{type(exc).__name__}: {exc}"))
            continue

        def sequent(premise=premise, index=index):
            extra = end_sequent(premise) - gamma - minor_formulas(symbol, index)
            return not extra, f"unexpected {format_sequent(extra)}" if extra else ""

        collector.record("child-sequent", where, sequent)
        collector.record("child-degree", where, lambda p=premise: (degree(p) <= degree(d), f"{degree(p)} > {degree(d)}"))
        collector.record("child-proper", where, lambda p=premise: (bool(is_proper(p)), str(is_proper(p))))
    return collector.verdict


def check_step(before: Derivation, after: Derivation) -> AuditVerdict:
    """Check that after is a faithful reduct of before with the same end-sequent"""
    collector = _Collector()

    def sequent():
        extra = end_sequent(after) - end_sequent(before)
        lost = end_sequent(before) - end_sequent(after)
        detail = ", ".join(
            f"{label} {format_sequent(formulas)}" for label, formulas in (("unexpected", extra), ("lost", lost)) if formulas
        )
        return not extra and not lost, detail

    collector.record("sequent", "root", sequent)
    collector.record("degree", "root", lambda: (degree(after) == 0, f"degree {degree(after)}"))
    collector.record("proper", "root", lambda: (bool(is_proper(after)), str(is_proper(after))))
    collector.record("gate", "root", lambda: (gate(after).eligible, str(gate(after))))
    collector.record("reduct", "root", lambda: (alpha_equal(red(before), after), "differs from red(before)"))

    def descends(index):
        return strip_weakening(child(before, index)) == strip_weakening(after)

    symbol = rule_of(before)
    if isinstance(symbol, RepS):
        collector.record("descent", "0", lambda: (descends(Nat(0)), "not the 0-th premise"))
    elif isinstance(symbol, OmegaTildeS):

        def descent():
            q = canonical_index(before, symbol)
            return descends(Omega(q)), "not the premise at the collapsing witness"

        collector.record("descent", "q", descent)
    return collector.verdict


def audit_trace(trace: Trace, samples=None) -> AuditVerdict:
    """check_step and check_local on every recorded step"""
    verdict = AuditVerdict(budget_exhausted=trace.budget_exhausted)
    for step in trace.steps:
        with opaque_parameters(*step.params):
            verdict.extend(check_step(step.before, step.after), step.index)
            verdict.extend(check_local(step.before, samples), step.index)
    logger.info("audited %d steps: %s", len(trace.steps), "pass" if verdict.overall else "fail")
    return verdict
