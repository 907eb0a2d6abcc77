"""Pseudoperiodic surface maps of negative twist: generalized quotients and conjugacy invariants.

Modules: ``model`` (input data and validation), ``chains`` (integer chains),
``chorizo`` (the generalized quotient), ``graphs`` (partition graphs and the
periodic action), ``conjugacy`` (the invariant triple), ``catalog`` (examples),
``generate`` (random inputs, relabeling) and ``cli``.
"""
from .chains import SearchBounds, amph_chain, cone_chain, nonamph_chain
from .chorizo import build_generalized_quotient
from .conjugacy import conjugate, invariants
from .model import PseudoPeriodicData, Valency, from_json, load, validate

__version__ = "0.1.0"

__all__ = ["PseudoPeriodicData", "SearchBounds", "Valency", "amph_chain", "build_generalized_quotient",
           "cone_chain", "conjugate", "from_json", "invariants", "load", "nonamph_chain", "validate"]
