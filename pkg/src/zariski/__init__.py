"""Exact combinatorics, braided wiring diagrams and a torsion invariant of complex line arrangements."""

from __future__ import annotations

from .arrangement import Arrangement, builtin_arrangement, conjugate, intersection_lattice
from .character import Character, TriangleCycle, is_inner_cyclic
from .combinatorics import Combinatorics, automorphism_group, builtin_combinatorics
from .cyclotomic import CycNum, Embedding
from .invariant import InvariantValue, invariant, separation_report
from .kernels import BACKEND
from .wiring import WiringDiagram, compute_diagram

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Arrangement",
    "Character",
    "Combinatorics",
    "CycNum",
    "Embedding",
    "InvariantValue",
    "TriangleCycle",
    "WiringDiagram",
    "automorphism_group",
    "builtin_arrangement",
    "builtin_combinatorics",
    "compute_diagram",
    "conjugate",
    "intersection_lattice",
    "invariant",
    "is_inner_cyclic",
    "separation_report",
]
