"""Classical Stickel exchange over GL_k(F_p) and the linear-algebra attack on it.

The attacker never needs the secret exponents: any pair (x, y) with
``x a = a x``, ``y b = b y``, ``x u = y`` and x invertible gives
``x^-1 v y = a^r u b^s = K``.  Those conditions are 3k^2 homogeneous linear
equations in the 2k^2 entries of x and y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FpMatrix:
    """k x k matrix with entries reduced modulo the prime ``p``."""

    entries: np.ndarray
    p: int

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=np.int64) % self.p
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("FpMatrix must be square")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, k: int, p: int) -> "FpMatrix":
        return cls(np.eye(k, dtype=np.int64), p)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        # p stays small enough that k * p^2 fits comfortably in int64.
        return FpMatrix(self.entries @ other.entries, self.p)

    def __pow__(self, e: int) -> "FpMatrix":
        result, base = FpMatrix.identity(self.k, self.p), self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.tobytes()))

    def inverse(self) -> "FpMatrix | None":
        k, p = self.k, self.p
        aug = np.concatenate([self.entries, np.eye(k, dtype=np.int64)], axis=1)
        rref, pivots = _rref(aug, p)
        if pivots[:k] != list(range(k)):
            return None
        return FpMatrix(rref[:k, k:], p)

    def is_invertible(self) -> bool:
        return _rank(self.entries, self.p) == self.k

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def _rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns the matrix and pivot columns."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        factors = M[:, c].copy()
        factors[r] = 0
        M = (M - np.outer(factors, M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def _rank(M: np.ndarray, p: int) -> int:
    return len(_rref(M, p)[1])


@dataclass(frozen=True)
class FpSolution:
    """Solution set ``particular + span(basis)``; ``particular`` is None if inconsistent."""

    particular: np.ndarray | None
    basis: np.ndarray

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]


def fp_solve(coeffs, rhs=None, p: int = 101) -> FpSolution:
    """Solve ``coeffs @ x = rhs`` over F_p by Gaussian elimination.

    ``rhs=None`` means the homogeneous system.  The basis rows span the
    null space of ``coeffs``.
    """
    C = np.asarray(coeffs, dtype=np.int64) % p
    m, nvars = C.shape
    b = np.zeros(m, dtype=np.int64) if rhs is None else np.asarray(rhs, dtype=np.int64) % p
    R, pivots = _rref(np.concatenate([C, b[:, None]], axis=1), p)
    if nvars in pivots:
        particular = None
    else:
        particular = np.zeros(nvars, dtype=np.int64)
        for row, c in enumerate(pivots):
            particular[c] = R[row, nvars]
    pivots = [c for c in pivots if c < nvars]
    free = [c for c in range(nvars) if c not in pivots]
    basis = np.zeros((len(free), nvars), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, c in enumerate(pivots):
            basis[i, c] = (-R[row, f]) % p
    return FpSolution(particular, basis)


@dataclass(frozen=True)
class ClassicalInstance:
    a: FpMatrix
    b: FpMatrix
    n: int
    m: int
    r: int
    s: int
    u: FpMatrix
    v: FpMatrix
    key_alice: FpMatrix
    key_bob: FpMatrix

    @property
    def K(self) -> FpMatrix:
        return self.key_alice

    @property
    def agreement(self) -> bool:
        return self.key_alice == self.key_bob


def _random_invertible(rng: np.random.Generator, k: int, p: int, attempts: int) -> FpMatrix:
    for _ in range(attempts):
        M = FpMatrix(rng.integers(0, p, size=(k, k)), p)
        if M.is_invertible():
            return M
    raise RuntimeError("could not sample an invertible matrix")


def classical_run(k: int, p: int, seed, exponent_range=(1, 1000),
                  max_attempts: int = 100) -> ClassicalInstance:
    """Honest run of the exponent-based exchange with invertible a, b mod p."""
    if k < 2:
        raise ValueError("k must be at least 2: scalar matrices always commute")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_attempts):
        a = _random_invertible(rng, k, p, max_attempts)
        b = _random_invertible(rng, k, p, max_attempts)
        if a @ b != b @ a:
            break
    else:
        raise RuntimeError("could not sample non-commuting a, b")
    lo, hi = exponent_range
    n, m, r, s = (int(x) for x in rng.integers(lo, hi, size=4, endpoint=True))
    u = (a ** n) @ (b ** m)
    v = (a ** r) @ (b ** s)
    return ClassicalInstance(a, b, n, m, r, s, u, v,
                             key_alice=(a ** n) @ v @ (b ** m),
                             key_bob=(a ** r) @ u @ (b ** s))


def attack_system(a: FpMatrix, b: FpMatrix, u: FpMatrix) -> np.ndarray:
    """Coefficient matrix of ``xa - ax = 0, yb - by = 0, xu - y = 0``.

    Unknowns are vec(x) followed by vec(y), row-major.
    """
    k, p = a.k, a.p
    I = np.eye(k, dtype=np.int64)
    # Row-major vec: vec(X M) = (I kron M^T) vec(X), vec(M X) = (M kron I) vec(X).
    def right(M):
        return np.kron(I, M.entries.T)

    def left(M):
        return np.kron(M.entries, I)

    zero = np.zeros((k * k, k * k), dtype=np.int64)
    eye = np.eye(k * k, dtype=np.int64)
    rows = [
        np.concatenate([right(a) - left(a), zero], axis=1),
        np.concatenate([zero, right(b) - left(b)], axis=1),
        np.concatenate([right(u), -eye], axis=1),
    ]
    return np.concatenate(rows, axis=0) % p


def classical_attack(a: FpMatrix, b: FpMatrix, u: FpMatrix, v: FpMatrix,
                     rng=None, combinations: int = 50) -> FpMatrix | None:
    """Recover the shared key from public data only, or return None on failure."""
    if a @ b == b @ a:
        raise ValueError("a and b commute; the exchange is not set up correctly")
    k, p = a.k, a.p
    rng = np.random.default_rng(0) if rng is None else rng
    basis = fp_solve(attack_system(a, b, u), p=p).basis
    if basis.shape[0] == 0:
        return None
    for attempt in range(combinations):
        if attempt < basis.shape[0]:
            vec = basis[attempt]
        else:
            vec = (rng.integers(0, p, size=basis.shape[0]) @ basis) % p
        x = FpMatrix(vec[:k * k].reshape(k, k), p)
        x_inv = x.inverse()
        if x_inv is None:
            continue
        y = FpMatrix(vec[k * k:].reshape(k, k), p)
        return x_inv @ v @ y
    return None


@dataclass(frozen=True)
class AttackStats:
    trials: int
    recovered: int
    failures: int
    wrong: int

    @property
    def success_rate(self) -> float:
        return self.recovered / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {"trials": self.trials, "recovered": self.recovered,
                "failures": self.failures, "wrong": self.wrong,
                "success_rate": self.success_rate}


def attack_trials(k: int, p: int, trials: int, seed: int) -> AttackStats:
    """Run honest exchanges and attack each; count exact key recoveries."""
    streams = np.random.SeedSequence(seed).spawn(trials)
    recovered = failures = wrong = 0
    for ss in streams:
        run_rng, attack_rng = (np.random.default_rng(s) for s in ss.spawn(2))
        inst = classical_run(k, p, run_rng)
        key = classical_attack(inst.a, inst.b, inst.u, inst.v, rng=attack_rng)
        if key is None:
            failures += 1
        elif key == inst.K:
            recovered += 1
        else:
            wrong += 1
    return AttackStats(trials, recovered, failures, wrong)
