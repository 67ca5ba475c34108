"""Tropical (min-plus) algebra and the cryptographic schemes built on it."""

from .semiring import EPS, TropicalOverflowError, t_add, t_div, t_mul, t_pow
from .matrix import (
    TropMatrix,
    UniPoly,
    m_add,
    m_is_invertible,
    m_mul,
    m_pow,
    m_scalar_mul,
    poly_eval_matrix,
)
from .polynomial import (
    MonomialCapError,
    TropPoly,
    TropRat,
    poly_add,
    poly_degree,
    poly_eval,
    poly_mul,
    rat_add,
    rat_equiv,
    rat_eval,
    rat_mul,
    rat_substitute,
)

__version__ = "0.1.0"
