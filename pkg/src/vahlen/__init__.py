"""Exact Clifford algebras, Vahlen groups, and their Moebius actions."""

from .fields import PrimeField, Q, Rationals, Scalar, parse_field
from .quadratic import QuadraticSpace, Vector
from .clifford import CliffordElement

__all__ = [
    "PrimeField",
    "Q",
    "Rationals",
    "Scalar",
    "parse_field",
    "QuadraticSpace",
    "Vector",
    "CliffordElement",
]
