"""Counting labeled finite topologies under logical restrictions.

Subpackages: ``logic`` (formula language), ``counting`` (counting engine and
classical sequences) and ``seqanalysis`` (periodicity and recurrences).
"""
from .evaluator import CompiledFormula, Environment, evaluate
from .logic import builtin, parse_formula, render_formula
from .structures import (
    Preorder, StructureKind, Topology, alpha, alpha_prime, enumerate_structures,
    validate_topology,
)
from .translation import phi_sharp, psi_sharp

__version__ = "0.1.0"
