"""
S-expression Syntax
===================

Concrete syntax for formulas and derivation terms.

Terms:        0  3  n  (s t)
Formulas:     (eq t t) (lt t t) (le t t) (sv X t) (not F) (and F G) (or F G)
              (all x F) (ex x F) (ALL X F) (EX X F)
Abstractions: (abs x F)
Sequents:     (seq F ...)
Derivations:  (ax S) (andI F d d) (orI k F d) (omI F FAM) (exI t F d)
              (ALLI Y F d) (ORT (abs x F) G d) (cut F d d) (r F d d)
              (e d) (ew d) (col d) (sub X (abs x F) d) (weak S d)
Families:     (template n d) (select d) (mapred FAM)

Comments run from ';' to the end of the line.
"""

import logging
from dataclasses import dataclass
from typing import List, Union

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
    MapRed,
    OmI,
    OrI,
    OrSetI,
    R,
    Selector,
    Sub,
    Template,
    Weak,
    canonicalize,
    validate,
)
from .errors import IllFormed, ParseError
from .lang import (
    RELATIONS,
    Abstraction,
    And,
    ExistsNum,
    ExistsSet,
    ForallNum,
    ForallSet,
    Formula,
    NumVar,
    Or,
    RelLit,
    SetLit,
    Succ,
    Zero,
    fresh_name,
    free_vars,
    negate,
    numeral,
    term_value,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Reader
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    column: int


Node = Union[Atom, SList]


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, column

    def error(self, message, pos=None):
        return ParseError(message, *self.location(self.pos if pos is None else pos))

    def skip_whitespace(self):
        s = self.text
        while self.pos < len(s):
            if s[self.pos] == ";":
                while self.pos < len(s) and s[self.pos] != "\n":
                    self.pos += 1
            elif s[self.pos].isspace():
                self.pos += 1
            else:
                return

    def read(self) -> Node:
        self.skip_whitespace()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        if self.text[self.pos] == "(":
            return self.read_list()
        if self.text[self.pos] == ")":
            raise self.error("unbalanced parenthesis")
        return self.read_token()

    def read_list(self) -> SList:
        start = self.pos
        self.pos += 1
        items = []
        while True:
            self.skip_whitespace()
            if self.pos >= len(self.text):
                raise self.error("list not closed", start)
            if self.text[self.pos] == ")":
                self.pos += 1
                return SList(tuple(items), *self.location(start))
            items.append(self.read())

    def read_token(self) -> Atom:
        start = self.pos
        s = self.text
        while self.pos < len(s) and not s[self.pos].isspace() and s[self.pos] not in "();":
            self.pos += 1
        return Atom(s[start : self.pos], *self.location(start))


def read_sexpr(text: str) -> Node:
    """Read exactly one datum"""
    reader = _Reader(text)
    node = reader.read()
    reader.skip_whitespace()
    if reader.pos < len(text):
        raise reader.error("trailing input after the first expression")
    return node


# ---------------------------------------------------------------------------
# Builder
# ---------------------------------------------------------------------------

def _fail(node: Node, message: str):
    raise ParseError(message, node.line, node.column)


def _build(node, constructor, *args):
    try:
        return constructor(*args)
    except (IllFormed, TypeError, ValueError) as exc:
        _fail(node, str(exc))


def _form(node: Node, arities=None):
    """Split (head arg ...) and check the argument count"""
    if not isinstance(node, SList) or not node.items or not isinstance(node.items[0], Atom):
        _fail(node, "expected a parenthesized form with a head symbol")
    head, args = node.items[0].text, node.items[1:]
    if arities is not None and len(args) not in arities:
        expected = " or ".join(str(n) for n in arities)
        _fail(node, f"{head} takes {expected} arguments, got {len(args)}")
    return head, args


def _name(node: Node) -> str:
    if not isinstance(node, Atom) or node.text[0].isdigit():
        _fail(node, "expected a variable name")
    return node.text


def _natural(node: Node) -> int:
    if not isinstance(node, Atom) or not node.text.isdigit():
        _fail(node, "expected a natural number")
    return int(node.text)


def build_term(node: Node):
    if isinstance(node, Atom):
        if node.text.isdigit():
            return numeral(int(node.text))
        return NumVar(_name(node))
    head, args = _form(node)
    if head != "s" or len(args) != 1:
        _fail(node, f"unknown term form {head!r}")
    return Succ(build_term(args[0]))


_QUANTIFIERS = {"all": ForallNum, "ex": ExistsNum, "ALL": ForallSet, "EX": ExistsSet}


def build_formula(node: Node) -> Formula:
    head, args = _form(node)
    if head == "not":
        _form(node, (1,))
        return negate(build_formula(args[0]))
    if head in ("and", "or"):
        _form(node, (2,))
        return _build(node, And if head == "and" else Or, build_formula(args[0]), build_formula(args[1]))
    if head in _QUANTIFIERS:
        _form(node, (2,))
        return _build(node, _QUANTIFIERS[head], _name(args[0]), build_formula(args[1]))
    if head == "sv":
        _form(node, (2,))
        return SetLit(_name(args[0]), build_term(args[1]))
    if head in RELATIONS:
        return _build(node, RelLit, head, tuple(build_term(arg) for arg in args))
    _fail(node, f"unknown formula head {head!r}")


def build_abstraction(node: Node) -> Abstraction:
    head, args = _form(node, (2,))
    if head != "abs":
        _fail(node, f"expected (abs x F), got {head!r}")
    return _build(node, Abstraction, _name(args[0]), build_formula(args[1]))


def build_sequent(node: Node):
    head, args = _form(node)
    if head != "seq":
        _fail(node, f"expected (seq ...), got {head!r}")
    return frozenset(build_formula(arg) for arg in args)


def build_family(node: Node):
    head, args = _form(node)
    if head == "template":
        _form(node, (2,))
        return Template(_name(args[0]), build_derivation(args[1]))
    if head == "select":
        _form(node, (1,))
        return Selector(build_derivation(args[0]))
    if head == "mapred":
        _form(node, (1,))
        return MapRed(build_family(args[0]))
    _fail(node, f"unknown premise family {head!r}")


def build_derivation(node: Node) -> Derivation:
    head, args = _form(node)
    if head == "ax":
        _form(node, (1,))
        return Ax(build_sequent(args[0]))
    if head == "weak":
        _form(node, (2,))
        return Weak(build_sequent(args[0]), build_derivation(args[1]))
    if head == "andI":
        _form(node, (3,))
        return AndI(build_formula(args[0]), build_derivation(args[1]), build_derivation(args[2]))
    if head == "orI":
        _form(node, (3,))
        k = _natural(args[0])
        if k > 1:
            _fail(args[0], "disjunct index must be 0 or 1")
        return OrI(k, build_formula(args[1]), build_derivation(args[2]))
    if head == "omI":
        _form(node, (2,))
        return OmI(build_formula(args[0]), build_family(args[1]))
    if head == "exI":
        _form(node, (3,))
        return ExI(build_term(args[0]), build_formula(args[1]), build_derivation(args[2]))
    if head == "ALLI":
        _form(node, (3,))
        return AllSetI(_name(args[0]), build_formula(args[1]), build_derivation(args[2]))
    if head == "ORT":
        _form(node, (3,))
        return OrSetI(build_abstraction(args[0]), build_formula(args[1]), build_derivation(args[2]))
    if head in ("cut", "r"):
        _form(node, (3,))
        return (Cut if head == "cut" else R)(build_formula(args[0]), build_derivation(args[1]), build_derivation(args[2]))
    if head in ("e", "ew", "col"):
        _form(node, (1,))
        return {"e": E, "ew": Ew, "col": Col}[head](build_derivation(args[0]))
    if head == "sub":
        _form(node, (3,))
        return Sub(_name(args[0]), build_abstraction(args[1]), build_derivation(args[2]))
    _fail(node, f"unknown derivation head {head!r}")


def parse_term(text: str):
    return build_term(read_sexpr(text))


def parse_formula(text: str) -> Formula:
    return build_formula(read_sexpr(text))


def parse_derivation(text: str, check: bool = True) -> Derivation:
    """
    Parse a derivation term and, unless check is False, validate it.

    Args:
        text: S-expression source
        check: Run calculus.validate on the result

    Returns:
        The derivation term
    """
    d = build_derivation(read_sexpr(text))
    if check:
        validate(d)
    return d


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def render_term(term, env=None) -> str:
    value = term_value(term)
    if value is not None:
        return str(value)
    if isinstance(term, Succ):
        return f"(s {render_term(term.inner, env)})"
    if isinstance(term, Zero):
        return "0"
    return (env or {}).get(("n", term.name), term.name)


def render_formula(a: Formula) -> str:
    """Deterministic rendering; bound variables get the first free x0, x1, ... or X0, X1, ..."""
    nums, sets = free_vars(a)
    return _formula(a, {}, set(nums) | set(sets))


def _formula(a, env, avoid):
    if isinstance(a, RelLit):
        text = f"({a.relation} " + " ".join(render_term(t, env) for t in a.args) + ")"
    elif isinstance(a, SetLit):
        var = env.get(("s", a.var), a.var)
        text = f"(sv {var} {render_term(a.arg, env)})"
    elif isinstance(a, (And, Or)):
        head = "and" if isinstance(a, And) else "or"
        return f"({head} {_formula(a.left, env, avoid)} {_formula(a.right, env, avoid)})"
    else:
        head = {ForallNum: "all", ExistsNum: "ex", ForallSet: "ALL", ExistsSet: "EX"}[type(a)]
        kind = "n" if isinstance(a, (ForallNum, ExistsNum)) else "s"
        name = fresh_name("x" if kind == "n" else "X", avoid)
        body = _formula(a.body, {**env, (kind, a.binder): name}, avoid | {name})
        return f"({head} {name} {body})"
    return text if a.positive else f"(not {text})"


def render_sequent(formulas) -> str:
    return "(seq" + "".join(" " + item for item in sorted(render_formula(a) for a in formulas)) + ")"


def render_abstraction(t: Abstraction) -> str:
    nums, sets = t.free_vars()
    avoid = set(nums) | set(sets)
    name = fresh_name("x", avoid)
    body = _formula(t.body, {("n", t.binder): name}, avoid | {name})
    return f"(abs {name} {body})"


def _parts(d: Derivation):
    """(head, atom arguments, sub-terms)"""
    if isinstance(d, Ax):
        return "ax", [render_sequent(d.delta)], []
    if isinstance(d, Weak):
        return "weak", [render_sequent(d.side)], [d.d0]
    if isinstance(d, AndI):
        return "andI", [render_formula(d.principal)], [d.d0, d.d1]
    if isinstance(d, OrI):
        return "orI", [str(d.k), render_formula(d.principal)], [d.d0]
    if isinstance(d, OmI):
        return "omI", [render_formula(d.principal)], [d.family]
    if isinstance(d, ExI):
        return "exI", [render_term(d.k), render_formula(d.principal)], [d.d0]
    if isinstance(d, AllSetI):
        return "ALLI", [d.eigen, render_formula(d.principal)], [d.d0]
    if isinstance(d, OrSetI):
        return "ORT", [render_abstraction(d.t), render_formula(d.principal)], [d.d0]
    if isinstance(d, (Cut, R)):
        return ("cut" if isinstance(d, Cut) else "r"), [render_formula(d.cut_formula)], [d.d0, d.d1]
    if isinstance(d, (E, Ew, Col)):
        return {E: "e", Ew: "ew", Col: "col"}[type(d)], [], [d.d0]
    if isinstance(d, Sub):
        return "sub", [d.x, render_abstraction(d.t)], [d.d0]
    if isinstance(d, Template):
        return "template", [d.param], [d.schema]
    if isinstance(d, Selector):
        return "select", [], [d.parent]
    if isinstance(d, MapRed):
        return "mapred", [], [d.inner]
    raise IllFormed(f"cannot render {d!r}")


def _lines(d, level, indent) -> List[str]:
    head, args, subs = _parts(d)
    opening = " " * (level * indent) + "(" + " ".join([head] + args)
    if not subs:
        return [opening + ")"]
    lines = [opening]
    for sub in subs:
        lines += _lines(sub, level + 1, indent)
    lines[-1] += ")"
    return lines


def _inline(d) -> str:
    head, args, subs = _parts(d)
    return "(" + " ".join([head] + args + [_inline(sub) for sub in subs]) + ")"


def render(d: Derivation, pretty: bool = False, indent: int = 2, canonical: bool = True) -> str:
    """
    Text of a derivation with sorted sequents. With canonical set, derivation
    binders are renamed X0, X1, ... and n0, n1, ... and parse_derivation(render(d))
    is alpha-equal to d; without it the names are kept and the parse is identical.
    """
    if canonical:
        d = canonicalize(d)
    if pretty:
        return "\n".join(_lines(d, 0, indent))
    return _inline(d)
