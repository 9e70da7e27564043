"""Twisted group algebras: Cayley-Dickson and Clifford algebras as sign functions on the XOR group."""

from .algebra import (
    AlgebraContext,
    Element,
    commutator,
    commutator_closed,
    conjugate,
    convolution,
    inner,
    inverse_cd,
    matrix_rep,
    mul,
    mul_via_inner,
    norm,
    square_identity_check,
)
from .dyadic import sob, triangular, xor_mul
from .groups import FiniteGroup, dyadic, from_table
from .twist import Kind, Twist, check_properties, clf, cyd, enumerate_twists, materialize, pointwise_product

__version__ = "0.1.0"
