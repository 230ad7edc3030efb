"""Exact arithmetic: coefficient domains and sparse Laurent polynomials."""

from .domains import GF, QQ, ZZ, Domain, PrimeField, domain_from_name, is_prime
from .gcd import (
    associates,
    canonical,
    divides,
    exact_divide,
    invert_variables,
    is_squarefree,
    monic,
    partial_derivative,
    poly_gcd,
    poly_gcd_many,
    primitive_integer,
    reduce_mod_p,
    resultant,
    squarefree_part,
    sylvester_matrix,
)
from .poly import Poly, PolyRing, poly_arith, ring_of
from .text import format_poly, parse_poly

__all__ = [
    "GF", "QQ", "ZZ", "Domain", "PrimeField", "domain_from_name", "is_prime",
    "associates", "canonical", "divides", "exact_divide", "invert_variables",
    "is_squarefree", "monic", "partial_derivative", "poly_gcd", "poly_gcd_many",
    "primitive_integer", "reduce_mod_p", "resultant", "squarefree_part",
    "sylvester_matrix", "Poly", "PolyRing", "poly_arith", "ring_of",
    "format_poly", "parse_poly",
]
