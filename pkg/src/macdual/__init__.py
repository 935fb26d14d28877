"""Exact Macaulay inverse systems, level Artinian algebras and admissible families."""
from .exactalg import Poly, SpanBasis, parse_poly
from .dpmodule import DualSubmodule, contract, submodule_closure
from .duality import Ideal, annihilator, ideal_contains, ideal_equal, inverse_system, pairing

__version__ = "0.1.0"
