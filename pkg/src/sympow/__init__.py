"""Exact commutative algebra for symbolic powers, multiplier-type ideals and
test ideals of SNC monomials."""

from .errors import (AxiomViolation, InexactSymbolicPower, NotIntegral, NotSquarefree, OrderError,
                     ParseError, ResourceLimit, RingMismatch, StabilizationFailure, SympowError, limits)
from .groebner import GroebnerBasis, buchberger, eliminate, kernel_of_map, membership, reduce
from .ideal import (Ideal, colon, contains, equals, ideal_power, ideal_product, ideal_sum, intersect,
                    radical_membership, saturate)
from .monomial import (MonomialIdeal, big_height, height, integral_closure, minimal_primes_squarefree,
                       multiplier_ideal_monomial, newton_polyhedron)
from .parser import parse_polynomial, parse_script
from .poly import GREVLEX, LEX, MonomialOrder, Polynomial, PolyRing
from .snc import MixedModel, SncMonomial, snc_test_ideal, verify_property
from .symbolic import check_main_theorem, symbolic_power_prime, symbolic_power_squarefree

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation", "GREVLEX", "GroebnerBasis", "Ideal", "InexactSymbolicPower", "LEX", "MixedModel",
    "MonomialIdeal", "MonomialOrder", "NotIntegral", "NotSquarefree", "OrderError", "ParseError",
    "PolyRing", "Polynomial", "ResourceLimit", "RingMismatch", "SncMonomial", "StabilizationFailure",
    "SympowError", "big_height", "buchberger", "check_main_theorem", "colon", "contains", "eliminate",
    "equals", "height", "ideal_power", "ideal_product", "ideal_sum", "integral_closure", "intersect",
    "kernel_of_map", "limits", "membership", "minimal_primes_squarefree", "multiplier_ideal_monomial",
    "newton_polyhedron", "parse_polynomial", "parse_script", "radical_membership", "reduce", "saturate",
    "snc_test_ideal", "symbolic_power_prime", "symbolic_power_squarefree", "verify_property",
]
