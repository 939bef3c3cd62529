"""Exact arithmetic kernel: finite fields, sparse polynomials, Groebner bases."""

from .field import (FieldElement, FieldError, FiniteField, embedding, field_create,
                    field_enumerate, format_code)
from .groebner import (GREVLEX, INFINITE, LEX, MonomialOrder, brute_local_dimension,
                       brute_quotient_dimension, frobenius_rational, groebner_basis,
                       ideal_membership, local_dimension, normal_form, quotient_dimension,
                       standard_monomials, variety_points)
from .linalg import nullspace, rank
from .poly import ParseError, PolyRing, Polynomial, PolynomialError, poly_parse, poly_print


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_pow(a, n):
    return a ** n


def poly_substitute(f, images):
    return f.substitute(images)


def poly_derivative(f, v):
    return f.derivative(v)


def weighted_degree_check(f, weights, d):
    if len(weights) != f.ring.nvars:
        raise ValueError("one weight per variable expected")
    return f.weighted_degrees(weights) <= {d}
