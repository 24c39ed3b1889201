"""Gupta-Sidki groups on rooted trees: level permutations, conjugacy
certificates by cycle type, and Nielsen graphs of generating tuples."""

from .perm import Permutation, build_chain, compose, cycle_type, format_cycles, inverse, parse_cycles
from .tree import Convention, Node, Product, Word, decompose, evaluate, project

__all__ = [
    "Convention", "Node", "Permutation", "Product", "Word", "build_chain", "compose",
    "cycle_type", "decompose", "evaluate", "format_cycles", "inverse", "parse_cycles",
    "project",
]
