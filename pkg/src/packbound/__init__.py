"""Rigorous verification toolkit for sphere-packing score bounds.

Subpackages:
  interval       sound interval arithmetic and verified constants
  simplex        geometric functions on ordered simplices
  subdivision    branch-and-bound inequality prover over edge-square cells
  calculations   registry of all numbered verifications and lemma chains
  triangulation  enumeration and classification of sphere triangulations
  scoring        per-simplex score, star score, density bound, ledger replay
"""

from .interval import Interval, DomainError, constants

__all__ = ["Interval", "DomainError", "constants"]
__version__ = "0.1.0"
