"""
Error Hierarchy
===============

Every failure raised by the toolkit derives from CalculusError and carries the
path of the offending node (child positions from the root).
"""


def format_path(path):
    """Render a node path as 'root' or dotted child positions"""
    if not path:
        return "root"
    return ".".join(str(step) for step in path)


class CalculusError(Exception):
    """Base class for all toolkit errors"""

    def __init__(self, message, path=()):
        super().__init__(message)
        self.message = message
        self.path = tuple(path)

    def at(self, prefix):
        """Return the same error relocated under a parent path"""
        self.path = tuple(prefix) + self.path
        return self

    def __str__(self):
        if self.path:
            return f"{self.message} (at {format_path(self.path)})"
        return self.message


class IllFormed(CalculusError):
    """A term does not respect the grammar or the side conditions of its rule"""


class NotClosedLiteral(CalculusError):
    """A literal could not be evaluated because it is open or not relational"""


class AxiomNotTrue(CalculusError):
    """A one-formula axiom is not a true closed literal"""


class EigenvariableClash(CalculusError):
    """A set variable is reused as an eigenvariable on one path"""


class EigenvariableEscapes(CalculusError):
    """An eigenvariable occurs free below its inference"""


class ImproperDerivation(CalculusError):
    """A collapsing or substitution node violates its properness clause"""

    def __init__(self, message, path=(), clause=""):
        super().__init__(message, path)
        self.clause = clause


class IndexOutOfRange(CalculusError):
    """A child index is not in the index set of the last rule"""


class InvalidOmegaIndex(CalculusError):
    """A witness pair does not satisfy the conditions of an Omega index"""

    def __init__(self, message, path=(), clause=""):
        super().__init__(message, path)
        self.clause = clause


class GateFailed(CalculusError):
    """The reduction step was asked to run on a derivation outside its domain"""

    def __init__(self, report, path=()):
        super().__init__(f"derivation is not eligible for reduction: {report}", path)
        self.report = report


class InternalInconsistency(CalculusError):
    """A property that holds for every eligible derivation was violated"""


class NotPi1EndSequent(CalculusError):
    """The end-sequent contains a second-order existential formula"""


class NotBIMinus(CalculusError):
    """The derivation uses reduction operators and cannot be prepared"""


class ParameterSensitive(CalculusError):
    """A decision about a template schema depends on the value of its parameter"""


class ParseError(CalculusError):
    """Malformed concrete syntax"""

    def __init__(self, message, line=0, column=0):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
