"""
Shared Utilities
================

Derivation generation, trace reporting and plotting shared by the command
line and the explorer app.
"""

from .data_generator import DerivationGenerator
from .report_generator import TraceReportGenerator
from .visualization_utils import VisualizationUtils
