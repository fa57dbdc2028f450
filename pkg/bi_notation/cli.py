"""
Command Line Interface
======================

Commands wrapping the core operations: check, step, normalize, expand and
corpus. Derivations are read from files in the S-expression syntax.

Exit status is 0 on success, 1 when validation or an audit fails and 2 on
usage errors or unreadable files.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from .calculus import degree, end_sequent, is_bi_minus, is_proper
from .checker import audit_trace
from .config import configure_logging, get_settings, parse_int_list
from .corpus import SCENARIOS, check_scenario, sample_proofs, scenario
from .errors import CalculusError
from .lang import format_sequent
from .notation import expand, render_tree, rule_of
from .reduction import clear_caches, gate, normalize, prepare, reduce_step, require_gate
from .sexpr import parse_derivation, render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class Check:
    path: str


@dataclass(frozen=True)
class Step:
    path: str
    count: int = 1


@dataclass(frozen=True)
class Normalize:
    path: str
    max_steps: Optional[int] = None
    trace_out: Optional[str] = None
    pdf_out: Optional[str] = None


@dataclass(frozen=True)
class Expand:
    path: str
    depth: Optional[int] = None
    omega_picks: Optional[Tuple[int, ...]] = None
    witness_budget: Optional[int] = None
    records: bool = False


@dataclass(frozen=True)
class Corpus:
    name: Optional[str] = None
    export: Optional[str] = None
    list_only: bool = False


Command = Union[Check, Step, Normalize, Expand, Corpus]


class UsageError(Exception):
    """Bad command arguments detected after parsing"""


class CommandRunner:
    """Executes one command and prints its report"""

    def __init__(self):
        self.settings = get_settings()

    def load(self, path):
        text = Path(path).read_text(encoding="utf-8")
        return parse_derivation(text)

    def eligible(self, d):
        """d itself when red applies, else its Ew-prepared form"""
        report = gate(d)
        if report.eligible:
            return d
        if not is_bi_minus(d):
            require_gate(d)
        logger.warning("input is not eligible for reduction (%s); wrapping it in Ew", report)
        return prepare(d)

    def check(self, command: Check):
        d = self.load(command.path)
        print(f"✅ Valid derivation ending in {format_sequent(end_sequent(d))}")
        print(f"   last rule: {rule_of(d)}")
        print(f"   degree: {degree(d)}")
        properness = is_proper(d)
        if not properness:
            print(f"❌ Improper derivation: {properness}")
            return EXIT_FAILURE
        report = gate(d)
        status = "✅" if report.eligible else "⚠️"
        print(f"{status} gate: {report}")
        return EXIT_OK

    def step(self, command: Step):
        if command.count < 0:
            raise UsageError("--count must not be negative")
        d = self.eligible(self.load(command.path))
        for i in range(command.count):
            label = rule_of(d)
            d, clause = reduce_step(d)
            print(f"🔁 step {i}: {clause} on {label}  ⊢ {format_sequent(end_sequent(d))}")
        print(render(d, pretty=True))
        return EXIT_OK

    def normalize(self, command: Normalize):
        from shared_utilities.report_generator import TraceReportGenerator

        max_steps = self.settings.max_steps if command.max_steps is None else command.max_steps
        if max_steps < 0:
            raise UsageError("--max-steps must not be negative")
        d = self.eligible(self.load(command.path))
        trace = normalize(d, max_steps)
        verdict = audit_trace(trace)
        reports = TraceReportGenerator()
        if command.trace_out:
            reports.write_trace(trace, verdict, command.trace_out)
            print(f"📁 Trace written to {command.trace_out}")
        if command.pdf_out:
            reports.create_pdf_report(reports.trace_frame(trace, verdict), verdict.summary(), command.pdf_out)
            print(f"📋 Report written to {command.pdf_out}")
        print(f"🔁 {len(trace.steps)} steps, final end-sequent {format_sequent(end_sequent(trace.final))}")
        if trace.budget_exhausted:
            print(f"⚠️ Budget of {max_steps} steps exhausted")
        else:
            print(f"{'✅' if trace.cut_free() else '⚠️'} cut-free: {trace.cut_free()}")
        print(verdict.summary())
        return EXIT_OK if verdict.overall else EXIT_FAILURE

    def expand(self, command: Expand):
        from shared_utilities.report_generator import TraceReportGenerator

        depth = self.settings.depth if command.depth is None else command.depth
        picks = self.settings.omega_picks if command.omega_picks is None else command.omega_picks
        budget = self.settings.witness_budget if command.witness_budget is None else command.witness_budget
        if depth < 0 or budget < 0:
            raise UsageError("--depth and --witness-budget must not be negative")
        view = expand(self.load(command.path), depth, picks, budget)
        if command.records:
            frame = TraceReportGenerator().tree_frame(view)
            print(frame.to_json(orient="records", lines=True, force_ascii=False).rstrip("\n"))
        else:
            print(render_tree(view))
        return EXIT_OK

    def corpus(self, command: Corpus):
        proofs = sample_proofs()
        if command.list_only or command.name is None:
            print("📚 Scenarios:")
            for name in SCENARIOS:
                print(f"   {name}")
            print("📚 Sample proofs:")
            for name in proofs:
                print(f"   {name}")
            return EXIT_OK
        if command.name in SCENARIOS:
            s = scenario(command.name)
            term = s.input
            print(f"🔍 {s.name}: {s.description}")
            print(f"   expected tp: {s.expected_tp}")
            print(f"   expected red: {render(s.expected_red)}")
            verdict = check_scenario(s)
            print(verdict.summary())
            status = EXIT_OK if verdict.overall else EXIT_FAILURE
        elif command.name in proofs:
            term = proofs[command.name]
            print(f"📄 {command.name} ⊢ {format_sequent(end_sequent(term))}")
            print(render(term, pretty=True))
            status = EXIT_OK
        else:
            known = ", ".join(list(SCENARIOS) + list(proofs))
            raise UsageError(f"unknown corpus entry {command.name!r}; known: {known}")
        if command.export:
            Path(command.export).write_text(render(term, pretty=True) + "\n", encoding="utf-8")
            print(f"📁 Exported to {command.export}")
        return status

    def run(self, command: Command) -> int:
        handlers = {
            Check: self.check,
            Step: self.step,
            Normalize: self.normalize,
            Expand: self.expand,
            Corpus: self.corpus,
        }
        try:
            return handlers[type(command)](command)
        except UsageError as exc:
            print(f"❌ {exc}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"❌ {exc}", file=sys.stderr)
            return EXIT_USAGE
        except CalculusError as exc:
            print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_FAILURE
        except Exception:
            logger.exception("unexpected failure while running %s", type(command).__name__)
            return EXIT_FAILURE
        finally:
            clear_caches()


def run(command: Command) -> int:
    return CommandRunner().run(command)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bi_notation",
        description="Check, expand and normalize BI proof terms",
    )
    parser.add_argument("--log-level", default=None, help="logging level (default from BI_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="validate a derivation and report its gate")
    check.add_argument("path")

    step = commands.add_parser("step", help="apply red a number of times")
    step.add_argument("path")
    step.add_argument("--count", type=int, default=1)

    norm = commands.add_parser("normalize", help="reduce to cut-free form and audit the trace")
    norm.add_argument("path")
    norm.add_argument("--max-steps", type=int, default=None)
    norm.add_argument("--trace", dest="trace_out", default=None, help="write the trace as JSON lines")
    norm.add_argument("--pdf", dest="pdf_out", default=None, help="write a PDF audit report")

    exp = commands.add_parser("expand", help="unfold the denoted derivation tree")
    exp.add_argument("path")
    exp.add_argument("--depth", type=int, default=None)
    exp.add_argument("--omega", dest="omega_picks", type=parse_int_list, default=None)
    exp.add_argument("--witness-budget", type=int, default=None)
    exp.add_argument("--records", action="store_true", help="print node records as JSON lines")

    corpus = commands.add_parser("corpus", help="run a scenario or print a sample proof")
    corpus.add_argument("name", nargs="?")
    corpus.add_argument("--export", default=None, help="write the term to a file")
    corpus.add_argument("--list", dest="list_only", action="store_true")
    return parser


def to_command(args) -> Command:
    if args.command == "check":
        return Check(args.path)
    if args.command == "step":
        return Step(args.path, args.count)
    if args.command == "normalize":
        return Normalize(args.path, args.max_steps, args.trace_out, args.pdf_out)
    if args.command == "expand":
        return Expand(args.path, args.depth, args.omega_picks, args.witness_budget, args.records)
    return Corpus(args.name, args.export, args.list_only)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    configure_logging(args.log_level)
    return run(to_command(args))
