"""Square matrices over the min-plus semiring and univariate tropical polynomials.

A :class:`TropMatrix` keeps its entries in an int64 array next to a boolean
mask of finite positions, so epsilon never shares a bit pattern with a
finite value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .semiring import (
    EPS,
    INT64_MAX,
    INT64_MIN,
    Scalar,
    TropicalOverflowError,
    check_int64,
    scalar,
    to_json_scalar,
)


class TropMatrix:
    """Immutable n x n tropical matrix.

    ``A + B`` is the entrywise minimum and ``A @ B`` the min-plus product.
    """

    __slots__ = ("values", "finite")

    def __init__(self, rows: Sequence[Sequence] | np.ndarray | None = None, *,
                 values: np.ndarray | None = None, finite: np.ndarray | None = None):
        if rows is not None:
            rows = [list(r) for r in rows]
            n = len(rows)
            if n == 0:
                raise ValueError("matrix dimension must be positive")
            if any(len(r) != n for r in rows):
                raise ValueError("tropical matrices must be square")
            entries = [[scalar(v) for v in r] for r in rows]
            finite = np.array([[v != EPS for v in r] for r in entries], dtype=bool)
            values = np.array([[0 if v == EPS else v for v in r] for r in entries],
                              dtype=np.int64)
        if values is None or finite is None:
            raise ValueError("need rows or values/finite arrays")
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] == 0:
            raise ValueError(f"expected a non-empty square array, got shape {values.shape}")
        values = np.where(finite, values, 0).astype(np.int64)
        values.flags.writeable = False
        finite = np.asarray(finite, dtype=bool).copy()
        finite.flags.writeable = False
        self.values = values
        self.finite = finite

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_arrays(cls, values: np.ndarray, finite: np.ndarray | None = None) -> "TropMatrix":
        values = np.asarray(values, dtype=np.int64)
        if finite is None:
            finite = np.ones(values.shape, dtype=bool)
        return cls(values=values, finite=finite)

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls.scalar_matrix(0, n)

    @classmethod
    def scalar_matrix(cls, lam: int, n: int) -> "TropMatrix":
        lam = check_int64(int(lam))
        return cls(values=np.full((n, n), lam, dtype=np.int64), finite=np.eye(n, dtype=bool))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "TropMatrix":
        n = len(diag)
        return cls(values=np.diag(np.array([check_int64(int(d)) for d in diag], dtype=np.int64)),
                   finite=np.eye(n, dtype=bool))

    @classmethod
    def epsilon(cls, n: int) -> "TropMatrix":
        return cls(values=np.zeros((n, n), dtype=np.int64), finite=np.zeros((n, n), dtype=bool))

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return int(self.values[i, j]) if self.finite[i, j] else EPS

    def tolist(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def to_json(self) -> list[list]:
        return [[to_json_scalar(v) for v in row] for row in self.tolist()]

    @classmethod
    def from_json(cls, data) -> "TropMatrix":
        return cls(data)

    def is_all_finite(self) -> bool:
        return bool(self.finite.all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.finite, other.finite)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.values.tobytes(), self.finite.tobytes()))

    def __repr__(self) -> str:
        return f"TropMatrix({self.tolist()!r})"

    def __add__(self, other: "TropMatrix") -> "TropMatrix":
        return m_add(self, other)

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return m_mul(self, other)

    def __pow__(self, k: int) -> "TropMatrix":
        return m_pow(self, k)


def _check_dims(A: TropMatrix, B: TropMatrix) -> None:
    if A.n != B.n:
        raise ValueError(f"dimension mismatch: {A.n} vs {B.n}")


def m_add(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    _check_dims(A, B)
    finite = A.finite | B.finite
    big = np.iinfo(np.int64).max
    a = np.where(A.finite, A.values, big)
    b = np.where(B.finite, B.values, big)
    return TropMatrix(values=np.minimum(a, b), finite=finite)


def _check_product_range(A: TropMatrix, B: TropMatrix) -> None:
    # Exact test: some finite a_ik + b_kj leaves int64 iff it does for the
    # extreme entries of column k of A and row k of B.
    lim = 2**61
    if all(-lim < M.values.min() and M.values.max() < lim for M in (A, B)):
        return
    amax = np.where(A.finite, A.values, np.iinfo(np.int64).min).max(axis=0)
    amin = np.where(A.finite, A.values, np.iinfo(np.int64).max).min(axis=0)
    bmax = np.where(B.finite, B.values, np.iinfo(np.int64).min).max(axis=1)
    bmin = np.where(B.finite, B.values, np.iinfo(np.int64).max).min(axis=1)
    has = A.finite.any(axis=0) & B.finite.any(axis=1)
    for k in np.flatnonzero(has):
        hi = int(amax[k]) + int(bmax[k])
        lo = int(amin[k]) + int(bmin[k])
        if hi > INT64_MAX or lo < INT64_MIN:
            raise TropicalOverflowError("min-plus product leaves the 64-bit range")


def m_mul(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    """Min-plus product: entry (i, j) is min over k of a_ik + b_kj."""
    _check_dims(A, B)
    _check_product_range(A, B)
    sums = A.values[:, :, None] + B.values[None, :, :]
    mask = A.finite[:, :, None] & B.finite[None, :, :]
    finite = mask.any(axis=1)
    values = np.where(mask, sums, np.iinfo(np.int64).max).min(axis=1)
    return TropMatrix(values=values, finite=finite)


def m_scalar_mul(lam: Scalar, A: TropMatrix) -> TropMatrix:
    """``lam (x) A``: adds ``lam`` to every finite entry."""
    if lam == EPS:
        raise ValueError("scalar multiplier must be finite")
    lam = check_int64(int(lam))
    if A.finite.any():
        f = A.values[A.finite]
        if int(f.max()) + lam > INT64_MAX or int(f.min()) + lam < INT64_MIN:
            raise TropicalOverflowError("scalar product leaves the 64-bit range")
    return TropMatrix(values=A.values + np.int64(lam), finite=A.finite)


def m_pow(A: TropMatrix, k: int) -> TropMatrix:
    if k < 0:
        raise ValueError("matrix powers need a nonnegative exponent")
    result = TropMatrix.identity(A.n)
    base = A
    while k:
        if k & 1:
            result = m_mul(result, base)
        k >>= 1
        if k:
            base = m_mul(base, base)
    return result


def m_is_invertible(A: TropMatrix) -> bool:
    """Generalized permutation test: one finite entry per row and per column."""
    return bool((A.finite.sum(axis=1) == 1).all() and (A.finite.sum(axis=0) == 1).all())


@dataclass(frozen=True)
class UniPoly:
    """Univariate tropical polynomial as sorted ``(degree, coefficient)`` pairs.

    Duplicated degrees collapse to the smaller coefficient.  Dominated
    monomials are kept; this is a formal object, not a function.
    """

    terms: tuple[tuple[int, int], ...]

    def __init__(self, terms: Iterable[tuple[int, int]]):
        merged: dict[int, int] = {}
        for d, c in terms:
            d = int(d)
            if d < 0:
                raise ValueError("univariate degrees must be nonnegative")
            c = scalar(c)
            if c == EPS:
                raise ValueError("coefficients must be finite")
            if d not in merged or c < merged[d]:
                merged[d] = c
        if not merged:
            raise ValueError("empty tropical polynomial")
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([(1, 0)])

    @classmethod
    def constant(cls, c: int) -> "UniPoly":
        return cls([(0, c)])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 0) -> "UniPoly":
        return cls([(degree, coeff)])

    @property
    def degree(self) -> int:
        return self.terms[-1][0]

    def __call__(self, A: TropMatrix) -> TropMatrix:
        return poly_eval_matrix(self, A)

    def to_json(self) -> list[dict]:
        return [{"degree": d, "coefficient": c} for d, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "UniPoly":
        return cls((rec["degree"], rec["coefficient"]) for rec in data)

    def __str__(self) -> str:
        parts = []
        for d, c in reversed(self.terms):
            if d == 0:
                parts.append(str(c))
            elif d == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{d}")
        return " (+) ".join(parts)


def poly_eval_matrix(p: UniPoly, A: TropMatrix) -> TropMatrix:
    """Evaluate ``p`` at ``A``; the constant term becomes the scalar matrix ``c (x) I``."""
    result = None
    power = TropMatrix.identity(A.n)
    k = 0
    for d, c in p.terms:
        while k < d:
            power = m_mul(power, A)
            k += 1
        term = m_scalar_mul(c, power)
        result = term if result is None else m_add(result, term)
    return result
