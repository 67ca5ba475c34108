import numpy as np
import pytest

from tropkit.kex import (
    STANDARD_KEX,
    TOY_KEX,
    KexParams,
    KexPrivate,
    KexPublic,
    kex_finish,
    kex_offer,
    kex_run_demo,
    kex_setup,
    key_space_log10,
)
from tropkit.matrix import TropMatrix, UniPoly, m_mul, m_pow, m_scalar_mul

from helpers import minplus_oracle

A = TropMatrix([[1, 2], [5, -1]])
B = TropMatrix([[0, 3], [2, 8]])
PUB = KexPublic(A, B)
X = KexPrivate(UniPoly.x(), UniPoly.x())
ZERO = KexPrivate(UniPoly.constant(0), UniPoly.constant(0))


def test_standard_preset_values():
    assert STANDARD_KEX.n == 10
    assert STANDARD_KEX.entry_range == (-10**10, 10**10)
    assert STANDARD_KEX.degree_range == (1, 10)
    assert STANDARD_KEX.coeff_range == (-1000, 1000)


def test_params_validation():
    with pytest.raises(ValueError):
        KexParams(2, (1, 0), (1, 2), (0, 1))
    with pytest.raises(ValueError):
        KexParams(2, (0, 1), (0, 2), (0, 1))


def test_setup_standard_scale():
    pub = kex_setup(STANDARD_KEX.with_seed(11))
    assert pub.n == 10
    assert pub.A.is_all_finite() and pub.B.is_all_finite()
    assert m_mul(pub.A, pub.B) != m_mul(pub.B, pub.A)
    lo, hi = STANDARD_KEX.entry_range
    assert lo <= pub.A.values.min() and pub.A.values.max() <= hi


def test_setup_one_by_one_fails():
    with pytest.raises(RuntimeError):
        kex_setup(KexParams(1, (-5, 5), (1, 2), (-5, 5), seed=0, max_attempts=5))


def test_setup_deterministic():
    assert kex_setup(TOY_KEX.with_seed(4)) == kex_setup(TOY_KEX.with_seed(4))


def test_offer_examples():
    assert kex_offer(PUB, X) == TropMatrix([[1, 4], [1, 7]])
    assert kex_offer(PUB, ZERO) == TropMatrix.identity(2)
    mixed = KexPrivate(UniPoly.x(), UniPoly.constant(17))
    assert kex_offer(PUB, mixed) == m_scalar_mul(17, A)


def test_finish_examples():
    a2 = minplus_oracle(A.tolist(), A.tolist())
    b2 = minplus_oracle(B.tolist(), B.tolist())
    oracle = minplus_oracle(a2, b2)
    assert oracle == [[2, 5], [0, 3]]
    u = kex_offer(PUB, X)
    v = kex_offer(PUB, X)
    assert kex_finish(PUB, X, v) == kex_finish(PUB, X, u) == TropMatrix(oracle)
    assert kex_finish(PUB, ZERO, TropMatrix.identity(2)) == TropMatrix.identity(2)
    with pytest.raises(ValueError):
        kex_finish(PUB, X, TropMatrix.identity(3))


def test_agreement_toy_many():
    for seed in range(1000):
        tr = kex_run_demo(TOY_KEX.with_seed(seed))
        assert tr.key_alice == tr.key_bob


def test_stickel_degenerate_mode():
    rng = np.random.default_rng(3)
    for _ in range(50):
        pub = kex_setup(TOY_KEX, rng)
        n, m, r, s = (int(v) for v in rng.integers(1, 8, size=4))
        alice, bob = KexPrivate.stickel(n, m), KexPrivate.stickel(r, s)
        u = kex_offer(pub, alice)
        assert u == m_mul(m_pow(pub.A, n), m_pow(pub.B, m))
        ka = kex_finish(pub, alice, kex_offer(pub, bob))
        kb = kex_finish(pub, bob, u)
        assert ka == kb == m_mul(m_pow(pub.A, n + r), m_pow(pub.B, m + s))


def test_transcript_contents():
    tr = kex_run_demo(TOY_KEX.with_seed(1))
    assert tr.agreement
    data = tr.to_json()
    assert data["agreement"] is True
    for key in ("u", "v", "K_A", "K_B"):
        assert all(v != "inf" for row in data[key] for v in row)


def test_different_seeds_differ():
    assert kex_run_demo(STANDARD_KEX.with_seed(1)).public != kex_run_demo(STANDARD_KEX.with_seed(2)).public


def test_key_space():
    assert key_space_log10(STANDARD_KEX) >= 30
    # one coefficient range of size 2 and degrees 1..1: 2^2 choices per polynomial
    tiny = KexParams(2, (0, 1), (1, 1), (0, 1))
    assert key_space_log10(tiny) == pytest.approx(2 * np.log10(4))
