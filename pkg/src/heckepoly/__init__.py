"""Exact Hecke polynomials for split reductive groups.

Builds the degree-d polynomial attached to a minuscule coweight with
spherical Hecke coefficients (in Satake coordinates or double-coset
coordinates via the affine Hecke algebra) and verifies the
Cayley-Hamilton style relations it satisfies on parameter points, over
the formal ring Z[v, v^-1], the rationals with a fixed v, or a prime
field with a chosen square root of q.
"""

from .errors import ConsistencyError, ResourceLimitError, ValidationError
from .laurent import (FracScaled, LaurentHalf, PrimeFieldWithV, RationalWithV,
                      ScalarDomain, validate_sqrt)
from .root_data import BasedRootDatum, Coweight, WeylElement, build_standard
from .characters import (SymmetricFunction, WeightMultiset, decompose,
                         dimension, ext_power_character, minuscule_weights,
                         orbit_character, weyl_character)
from .satake import (FormalTorusDomain, FrobeniusMatrix, SatakeParameter,
                     SphericalElement, evaluate, frobenius_matrix,
                     resolve_twist, trace_of)
from .hecke import (ExcursionValue, HeckePolynomial, RelationReport,
                    cayley_hamilton_check, evaluate_coefficients,
                    excursion_values, hecke_polynomial,
                    inertia_relation_check, reduce_mod_ell)
from .iwahori import (AffineHeckeAlgebra, AffineHeckeElement,
                      SphericalCosetVector)

__all__ = [
    "AffineHeckeAlgebra", "AffineHeckeElement", "BasedRootDatum",
    "ConsistencyError", "Coweight", "ExcursionValue", "FormalTorusDomain",
    "FracScaled", "FrobeniusMatrix", "HeckePolynomial", "LaurentHalf",
    "PrimeFieldWithV", "RationalWithV", "RelationReport", "ResourceLimitError",
    "SatakeParameter", "ScalarDomain", "SphericalCosetVector",
    "SphericalElement", "SymmetricFunction", "ValidationError",
    "WeightMultiset", "WeylElement", "build_standard",
    "cayley_hamilton_check", "decompose", "dimension",
    "evaluate", "evaluate_coefficients", "ext_power_character",
    "excursion_values", "frobenius_matrix", "hecke_polynomial",
    "inertia_relation_check", "minuscule_weights", "orbit_character",
    "reduce_mod_ell", "resolve_twist", "trace_of", "validate_sqrt",
    "weyl_character",
]

__version__ = "0.1.0"
