"""Tropical Stickel key exchange over min-plus matrices.

Alice sends ``p1(A) (x) p2(B)``, Bob sends ``q1(A) (x) q2(B)`` and both
sandwich the received matrix between their own polynomials.  Polynomials
in the same matrix commute, so both sides land on the same key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matrix import TropMatrix, UniPoly, m_mul, poly_eval_matrix


@dataclass(frozen=True)
class KexParams:
    n: int
    entry_range: tuple[int, int]
    degree_range: tuple[int, int]
    coeff_range: tuple[int, int]
    seed: int = 0
    max_attempts: int = 100

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix dimension must be positive")
        for name in ("entry_range", "degree_range", "coeff_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")
        if self.degree_range[0] < 1:
            raise ValueError("polynomial degrees start at 1")

    def with_seed(self, seed: int) -> "KexParams":
        return KexParams(self.n, self.entry_range, self.degree_range, self.coeff_range,
                         seed, self.max_attempts)


STANDARD_KEX = KexParams(n=10, entry_range=(-10**10, 10**10), degree_range=(1, 10),
                      coeff_range=(-1000, 1000))
TOY_KEX = KexParams(n=3, entry_range=(-10, 10), degree_range=(1, 3), coeff_range=(-10, 10))


@dataclass(frozen=True)
class KexPublic:
    A: TropMatrix
    B: TropMatrix

    @property
    def n(self) -> int:
        return self.A.n

    def to_json(self) -> dict:
        return {"n": self.n, "A": self.A.to_json(), "B": self.B.to_json()}


@dataclass(frozen=True)
class KexPrivate:
    p1: UniPoly
    p2: UniPoly

    @classmethod
    def stickel(cls, n_exp: int, m_exp: int) -> "KexPrivate":
        """Single-monomial secrets ``x^n``, ``x^m``: the original exponent-only scheme."""
        return cls(UniPoly.monomial(n_exp), UniPoly.monomial(m_exp))

    def to_json(self) -> dict:
        return {"p1": self.p1.to_json(), "p2": self.p2.to_json()}


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _random_matrix(rng: np.random.Generator, n: int, lo: int, hi: int) -> TropMatrix:
    return TropMatrix.from_arrays(rng.integers(lo, hi, size=(n, n), endpoint=True, dtype=np.int64))


def kex_setup(params: KexParams, rng=None) -> KexPublic:
    """Sample non-commuting public matrices, all entries finite."""
    rng = _rng(params.seed if rng is None else rng)
    lo, hi = params.entry_range
    for _ in range(params.max_attempts):
        A = _random_matrix(rng, params.n, lo, hi)
        B = _random_matrix(rng, params.n, lo, hi)
        if m_mul(A, B) != m_mul(B, A):
            return KexPublic(A, B)
    raise RuntimeError(
        f"no non-commuting pair found in {params.max_attempts} attempts (n={params.n})")


def random_unipoly(rng: np.random.Generator, degree_range, coeff_range) -> UniPoly:
    """Dense polynomial: every degree 0..d carries a uniform coefficient."""
    d = int(rng.integers(degree_range[0], degree_range[1], endpoint=True))
    coeffs = rng.integers(coeff_range[0], coeff_range[1], size=d + 1, endpoint=True)
    return UniPoly(enumerate(int(c) for c in coeffs))


def random_private(params: KexParams, rng) -> KexPrivate:
    rng = _rng(rng)
    return KexPrivate(random_unipoly(rng, params.degree_range, params.coeff_range),
                      random_unipoly(rng, params.degree_range, params.coeff_range))


def kex_offer(pub: KexPublic, priv: KexPrivate) -> TropMatrix:
    return m_mul(poly_eval_matrix(priv.p1, pub.A), poly_eval_matrix(priv.p2, pub.B))


def kex_finish(pub: KexPublic, priv: KexPrivate, received: TropMatrix) -> TropMatrix:
    if received.n != pub.n:
        raise ValueError(f"received matrix has dimension {received.n}, expected {pub.n}")
    left = poly_eval_matrix(priv.p1, pub.A)
    right = poly_eval_matrix(priv.p2, pub.B)
    return m_mul(m_mul(left, received), right)


def key_space_log10(params: KexParams) -> float:
    """log10 of the number of private (p1, p2) pairs under dense sampling.

    One polynomial of degree d has ``C**(d+1)`` choices, C the coefficient
    range size; a private key is an independent pair.
    """
    c = params.coeff_range[1] - params.coeff_range[0] + 1
    lo, hi = params.degree_range
    one = sum(c ** (d + 1) for d in range(lo, hi + 1))
    return 2 * math.log10(one)


@dataclass
class Transcript:
    params: KexParams
    public: KexPublic
    alice: KexPrivate
    bob: KexPrivate
    u: TropMatrix
    v: TropMatrix
    key_alice: TropMatrix
    key_bob: TropMatrix
    notes: list[str] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return self.key_alice == self.key_bob

    def to_json(self) -> dict:
        p = self.params
        return {
            "params": {
                "n": p.n,
                "entry_range": list(p.entry_range),
                "degree_range": list(p.degree_range),
                "coeff_range": list(p.coeff_range),
                "seed": p.seed,
            },
            "public": self.public.to_json(),
            "alice": self.alice.to_json(),
            "bob": self.bob.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "K_A": self.key_alice.to_json(),
            "K_B": self.key_bob.to_json(),
            "agreement": self.agreement,
        }


def kex_run_demo(params: KexParams) -> Transcript:
    """Full two-party run; every random choice derives from ``params.seed``."""
    root = np.random.SeedSequence(params.seed)
    setup_ss, alice_ss, bob_ss = root.spawn(3)
    pub = kex_setup(params, np.random.default_rng(setup_ss))
    alice = random_private(params, np.random.default_rng(alice_ss))
    bob = random_private(params, np.random.default_rng(bob_ss))
    u = kex_offer(pub, alice)
    v = kex_offer(pub, bob)
    return Transcript(params, pub, alice, bob, u, v,
                      key_alice=kex_finish(pub, alice, v),
                      key_bob=kex_finish(pub, bob, u))
