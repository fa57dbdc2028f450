"""
BI Proof-Term Notation
======================

Finite proof terms for an infinitary sequent calculus of second-order
arithmetic with a lazy one-step cut-reduction and its auditing tools.
"""

from .calculus import alpha_equal, degree, end_sequent, is_proper, validate
from .checker import AuditVerdict, audit_trace, check_local, check_step
from .corpus import check_scenario, sample_proofs, scenario
from .errors import CalculusError
from .notation import child, expand, rule_of
from .reduction import gate, is_cut_free, normalize, prepare, red
from .sexpr import parse_derivation, render

__version__ = "0.1.0"
