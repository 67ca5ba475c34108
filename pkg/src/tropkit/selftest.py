"""Worked examples of the min-plus operations, re-checked bit for bit."""

from __future__ import annotations

from .matrix import TropMatrix, m_add, m_mul, m_scalar_mul
from .polynomial import TropPoly, poly_degree

A = TropMatrix([[1, 2], [5, -1]])
B = TropMatrix([[0, 3], [2, 8]])

# p(x, y, z) = 5 (x) x (x) y (x) z  (+)  x (x) x  (+)  2 (x) z  (+)  17
EXAMPLE_POLY = TropPoly.from_terms(3, [(5, (1, 1, 1)), (0, (2, 0, 0)), (2, (0, 0, 1)), (17, (0, 0, 0))])
# x (x) x (x) y (x) z (x) z
EXAMPLE_MONOMIAL = TropPoly.monomial(0, (2, 1, 2))


def _matrix_sum():
    return m_add(A, B) == TropMatrix([[0, 2], [2, -1]])


def _matrix_product():
    return m_mul(A, B) == TropMatrix([[1, 4], [1, 7]])


def _scalar_product():
    two_i = TropMatrix([[2, "inf"], ["inf", 2]])
    expected = TropMatrix([[3, 4], [7, 1]])
    return m_scalar_mul(2, A) == expected and m_mul(two_i, A) == expected


def _monomial_degree():
    return poly_degree(EXAMPLE_MONOMIAL) == 5


def _polynomial_degree():
    return poly_degree(EXAMPLE_POLY) == 3


CHECKS = [
    ("matrix sum [[1,2],[5,-1]] (+) [[0,3],[2,8]] = [[0,2],[2,-1]]", _matrix_sum),
    ("matrix product [[1,2],[5,-1]] (x) [[0,3],[2,8]] = [[1,4],[1,7]]", _matrix_product),
    ("scalar 2 (x) [[1,2],[5,-1]] = [[3,4],[7,1]]", _scalar_product),
    ("degree of x (x) x (x) y (x) z (x) z is 5", _monomial_degree),
    ("degree of 5xyz (+) x^2 (+) 2z (+) 17 is 3", _polynomial_degree),
]


def run_selftest() -> list[tuple[str, bool]]:
    results = []
    for name, check in CHECKS:
        try:
            ok = bool(check())
        except Exception:
            ok = False
        results.append((name, ok))
    return results
