"""Public-key encryption with automorphisms of the tropical rational semifield.

The private key is an ordered chain of monomial and elementary triangular
automorphisms.  The first factor of a chain is applied to a point first.
The public key is the chain composed symbolically into ``n`` tropical
rational functions; encryption evaluates them, decryption undoes the
factors one by one on the numeric point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .polynomial import (
    MonomialCapError,
    TropPoly,
    TropRat,
    identity_args,
    poly_eval,
    poly_substitute,
    rat_eval,
    rat_substitute,
)
from .semiring import check_int64


def int_det(A: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def int_inverse(A: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Inverse of a unimodular integer matrix, exact."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix inverse is not integral")
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


@dataclass(frozen=True)
class MonomialAut:
    """``x_i -> b_i (x) prod_j x_j^A[i][j]``; on points ``s -> b + A s``."""

    b: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]
    A_inv: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b = tuple(int(v) for v in self.b)
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        n = len(b)
        if len(A) != n or any(len(row) != n for row in A):
            raise ValueError("exponent matrix must be n x n with n = len(b)")
        if abs(int_det(A)) != 1:
            raise ValueError("exponent matrix must be unimodular (det = +-1)")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "A_inv", int_inverse(A))

    @property
    def n(self) -> int:
        return len(self.b)

    def apply(self, s: Sequence[int]) -> tuple[int, ...]:
        return tuple(check_int64(bi + sum(a * x for a, x in zip(row, s)))
                     for bi, row in zip(self.b, self.A))

    def apply_inverse(self, t: Sequence[int]) -> tuple[int, ...]:
        d = [x - bi for x, bi in zip(t, self.b)]
        return tuple(check_int64(sum(a * x for a, x in zip(row, d))) for row in self.A_inv)

    def substitute(self, coords: list[TropRat]) -> list[TropRat]:
        return [rat_substitute(TropRat.from_poly(TropPoly.monomial(bi, row)), coords)
                for bi, row in zip(self.b, self.A)]

    def to_json(self) -> dict:
        return {"type": "monomial", "b": list(self.b), "A": [list(r) for r in self.A]}


@dataclass(frozen=True)
class ElemTriangularAut:
    """``x_j -> x_j (x) q(x_{j+1}, ..., x_n)``, other variables fixed.

    ``j`` is a 0-based variable index; ``q`` lives in all ``n`` variables but
    may only use those after ``j``.
    """

    j: int
    q: TropPoly

    def __post_init__(self):
        if not 0 <= self.j < self.q.nvars - 1:
            raise ValueError(f"index j={self.j} must lie in [0, n-1)")
        if any(i <= self.j for i in self.q.variables_used()):
            raise ValueError("q may only depend on variables after x_j")

    @property
    def n(self) -> int:
        return self.q.nvars

    def apply(self, s: Sequence[int]) -> tuple[int, ...]:
        out = list(s)
        out[self.j] = check_int64(out[self.j] + poly_eval(self.q, s))
        return tuple(out)

    def apply_inverse(self, t: Sequence[int]) -> tuple[int, ...]:
        out = list(t)
        out[self.j] = check_int64(out[self.j] - poly_eval(self.q, t))
        return tuple(out)

    def substitute(self, coords: list[TropRat]) -> list[TropRat]:
        image = TropPoly.variable(self.j, self.n) * self.q
        out = list(coords)
        out[self.j] = poly_substitute(image, coords)
        return out

    def to_json(self) -> dict:
        return {"type": "triangular", "j": self.j, "q": self.q.to_json()}


Factor = Union[MonomialAut, ElemTriangularAut]


def factor_from_json(rec: dict, n: int) -> Factor:
    if rec["type"] == "monomial":
        return MonomialAut(tuple(rec["b"]), tuple(tuple(r) for r in rec["A"]))
    if rec["type"] == "triangular":
        return ElemTriangularAut(int(rec["j"]), TropPoly.from_json(rec["q"], n))
    raise ValueError(f"unknown factor type {rec['type']!r}")


@dataclass(frozen=True)
class AutChain:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("an automorphism chain needs at least one factor")
        if len({f.n for f in factors}) != 1:
            raise ValueError("all factors must act on the same number of variables")
        object.__setattr__(self, "factors", factors)

    @property
    def n(self) -> int:
        return self.factors[0].n

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> "AutChain":
        n = int(data["n"])
        return cls(tuple(factor_from_json(rec, n) for rec in data["factors"]))


@dataclass(frozen=True)
class AutPublicKey:
    coords: tuple[TropRat, ...]

    @property
    def n(self) -> int:
        return len(self.coords)

    def size(self) -> int:
        return sum(c.size() for c in self.coords)

    def to_json(self) -> dict:
        return {"n": self.n, "coords": [c.to_json() for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "AutPublicKey":
        n = int(data["n"])
        return cls(tuple(TropRat.from_json(c, n) for c in data["coords"]))


def _check_point(point: Sequence[int], n: int) -> tuple[int, ...]:
    if len(point) != n:
        raise ValueError(f"point has {len(point)} coordinates, expected {n}")
    return tuple(check_int64(int(v)) for v in point)


def aut_apply_point(chain: AutChain, s: Sequence[int]) -> tuple[int, ...]:
    s = _check_point(s, chain.n)
    for f in chain.factors:
        s = f.apply(s)
    return s


def aut_apply_point_inverse(chain: AutChain, t: Sequence[int]) -> tuple[int, ...]:
    t = _check_point(t, chain.n)
    for f in reversed(chain.factors):
        t = f.apply_inverse(t)
    return t


def compose_public_key(chain: AutChain) -> AutPublicKey:
    coords = identity_args(chain.n)
    for f in chain.factors:
        coords = f.substitute(coords)
    return AutPublicKey(tuple(coords))


def encrypt(pk: AutPublicKey, s: Sequence[int]) -> tuple[int, ...]:
    s = _check_point(s, pk.n)
    return tuple(rat_eval(c, s) for c in pk.coords)


def decrypt(chain: AutChain, c: Sequence[int]) -> tuple[int, ...]:
    return aut_apply_point_inverse(chain, c)


def aut_apply_poly(chain: AutChain, u: TropPoly, pk: AutPublicKey | None = None) -> TropRat:
    """Image of a polynomial message under the automorphism (generally a quotient)."""
    if u.nvars != chain.n:
        raise ValueError(f"message has {u.nvars} variables, chain acts on {chain.n}")
    pk = compose_public_key(chain) if pk is None else pk
    return poly_substitute(u, pk.coords)


# -- key generation -----------------------------------------------------------

@dataclass(frozen=True)
class AutParams:
    """Key-generation parameters.

    ``q_shape`` selects how each q_j is drawn: ``"sparse"`` gives one
    degree-2 monomial plus a constant, ``"dense"`` keeps every monomial of
    degree <= 2 in the later variables with probability 1/2 (plus a forced
    degree-2 monomial and the constant).
    """

    n: int = 10
    n_triangular: int = 2
    coeff_range: tuple[int, int] = (-10, 10)
    q_degree: int = 2
    q_shape: str = "sparse"
    unimodular_ops: int | None = None
    swap_prob: float = 0.5
    seed: int = 0
    max_retries: int = 50

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("automorphism encryption needs n >= 2")
        if self.q_shape not in ("sparse", "dense"):
            raise ValueError(f"unknown q_shape {self.q_shape!r}")
        if self.q_degree < 1:
            raise ValueError("q_degree must be positive")

    def with_seed(self, seed: int) -> "AutParams":
        return AutParams(self.n, self.n_triangular, self.coeff_range, self.q_degree,
                         self.q_shape, self.unimodular_ops, self.swap_prob, seed,
                         self.max_retries)


STANDARD_AUT = AutParams(n=10)
TOY_AUT = AutParams(n=3)


def random_unimodular(rng: np.random.Generator, n: int, ops: int,
                      swap_prob: float = 0.5) -> tuple[tuple[int, ...], ...]:
    """Product of random row swaps and row additions of +-1 times another row."""
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
        if rng.random() < swap_prob:
            A[i], A[j] = A[j], A[i]
        else:
            sgn = 1 if rng.random() < 0.5 else -1
            A[i] = [a + sgn * c for a, c in zip(A[i], A[j])]
    return tuple(tuple(row) for row in A)


def _exps_of(vars_: Sequence[int], n: int) -> tuple[int, ...]:
    e = [0] * n
    for v in vars_:
        e[v] += 1
    return tuple(e)


def random_q(rng: np.random.Generator, j: int, n: int, params: AutParams) -> TropPoly:
    later = range(j + 1, n)
    lo, hi = params.coeff_range
    top = [_exps_of(c, n) for c in itertools.combinations_with_replacement(later, params.q_degree)]
    chosen: list[tuple[int, ...]] = []
    if params.q_shape == "dense":
        for d in range(1, params.q_degree + 1):
            for c in itertools.combinations_with_replacement(later, d):
                if rng.random() < 0.5:
                    chosen.append(_exps_of(c, n))
        if not any(sum(e) == params.q_degree for e in chosen):
            chosen.append(top[int(rng.integers(len(top)))])
    else:
        chosen.append(top[int(rng.integers(len(top)))])
    chosen.append((0,) * n)
    coeffs = rng.integers(lo, hi, size=len(chosen), endpoint=True)
    return TropPoly.from_terms(n, zip((int(c) for c in coeffs), chosen))


def random_monomial_aut(rng: np.random.Generator, params: AutParams) -> MonomialAut:
    n = params.n
    ops = 2 * n if params.unimodular_ops is None else params.unimodular_ops
    A = random_unimodular(rng, n, ops, params.swap_prob)
    lo, hi = params.coeff_range
    b = tuple(int(v) for v in rng.integers(lo, hi, size=n, endpoint=True))
    return MonomialAut(b, A)


def random_triangular(rng: np.random.Generator, params: AutParams) -> list[ElemTriangularAut]:
    """A triangular automorphism as its elementary factors for j = 0..n-2."""
    return [ElemTriangularAut(j, random_q(rng, j, params.n, params)) for j in range(params.n - 1)]


def random_chain(rng: np.random.Generator, params: AutParams) -> AutChain:
    """``mu_1, phi_1, mu_2, ..., phi_k, mu_{k+1}`` in application order."""
    factors: list[Factor] = [random_monomial_aut(rng, params)]
    for _ in range(params.n_triangular):
        factors.extend(random_triangular(rng, params))
        factors.append(random_monomial_aut(rng, params))
    return AutChain(tuple(factors))


def aut_keygen(params: AutParams) -> tuple[AutPublicKey, AutChain]:
    """Sample a private chain and compose it into the public key.

    Chains whose composition exceeds the monomial cap are discarded and
    redrawn from the same seeded stream.
    """
    rng = np.random.default_rng(params.seed)
    last: Exception | None = None
    for _ in range(params.max_retries):
        chain = random_chain(rng, params)
        try:
            return compose_public_key(chain), chain
        except MonomialCapError as exc:
            last = exc
    raise MonomialCapError(f"no key within the monomial cap after {params.max_retries} tries") from last


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj.to_json(), fh)


def load_public(path) -> AutPublicKey:
    with open(path) as fh:
        return AutPublicKey.from_json(json.load(fh))


def load_private(path) -> AutChain:
    with open(path) as fh:
        return AutChain.from_json(json.load(fh))
