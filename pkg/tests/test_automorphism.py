import numpy as np
import pytest

from tropkit.automorphism import (
    STANDARD_AUT,
    TOY_AUT,
    AutChain,
    AutParams,
    AutPublicKey,
    ElemTriangularAut,
    MonomialAut,
    aut_apply_point,
    aut_apply_point_inverse,
    aut_apply_poly,
    aut_keygen,
    compose_public_key,
    decrypt,
    dump_json,
    encrypt,
    int_det,
    int_inverse,
    load_private,
    load_public,
    random_chain,
    random_unimodular,
)
from tropkit.polynomial import TropPoly, TropRat, identity_args, rat_equiv, rat_eval

from helpers import random_point, random_poly

MU = MonomialAut((1, -2), ((1, 1), (0, 1)))
TAU = ElemTriangularAut(0, TropPoly.monomial(3, (0, 1)))


def identity_chain(n):
    return AutChain((MonomialAut((0,) * n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n))),))


def test_monomial_example():
    chain = AutChain((MU,))
    assert aut_apply_point(chain, (3, 4)) == (8, 2)
    assert aut_apply_point_inverse(chain, (8, 2)) == (3, 4)
    assert MU.A_inv == ((1, -1), (0, 1))


def test_triangular_example():
    chain = AutChain((TAU,))
    assert aut_apply_point(chain, (5, 7)) == (15, 7)
    assert aut_apply_point_inverse(chain, (15, 7)) == (5, 7)


def test_identity_chain():
    chain = identity_chain(3)
    pk = compose_public_key(chain)
    for c, ref in zip(pk.coords, identity_args(3)):
        assert rat_equiv(c, ref)
    assert aut_apply_point(chain, (4, -1, 9)) == (4, -1, 9)
    assert encrypt(compose_public_key(identity_chain(2)), (4, -1)) == (4, -1)


def test_single_tau_public_key():
    chain = AutChain((TAU,))
    pk = compose_public_key(chain)
    x1_3x2 = TropRat.from_poly(TropPoly.monomial(3, (1, 1)))
    x2 = TropRat.from_poly(TropPoly.variable(1, 2))
    assert rat_equiv(pk.coords[0], x1_3x2)
    assert rat_equiv(pk.coords[1], x2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        s = random_point(rng, 2)
        assert encrypt(pk, s) == aut_apply_point(chain, s)
    assert encrypt(pk, (5, 7)) == (15, 7)


def test_order_convention():
    # mu first, then tau: (3, 4) -> (8, 2) -> (8 + 3 + 2, 2)
    chain = AutChain((MU, TAU))
    assert aut_apply_point(chain, (3, 4)) == (13, 2)
    assert encrypt(compose_public_key(chain), (3, 4)) == (13, 2)
    assert aut_apply_point(AutChain((TAU, MU)), (3, 4)) == (1 + 10 + 4, 2)


def test_non_unimodular_rejected():
    with pytest.raises(ValueError):
        MonomialAut((0, 0), ((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        MonomialAut((0, 0), ((1, 1), (1, 1)))


def test_triangular_rejects_bad_q():
    with pytest.raises(ValueError):
        ElemTriangularAut(1, TropPoly.monomial(0, (1, 0, 1)))
    with pytest.raises(ValueError):
        ElemTriangularAut(2, TropPoly.constant(0, 3))


def test_chain_validation():
    with pytest.raises(ValueError):
        AutChain(())
    with pytest.raises(ValueError):
        AutChain((MU, identity_chain(3).factors[0]))
    with pytest.raises(ValueError):
        aut_apply_point(AutChain((MU,)), (1, 2, 3))


def test_int_det_and_inverse():
    rng = np.random.default_rng(4)
    for _ in range(50):
        A = random_unimodular(rng, 5, 10)
        assert abs(int_det(A)) == 1
        inv = np.array(int_inverse(A))
        assert (np.array(A) @ inv == np.eye(5, dtype=int)).all()
    assert int_det([[2, 1], [7, 4]]) == 1
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0


def test_generated_chain_invariants():
    rng = np.random.default_rng(9)
    for params in (STANDARD_AUT, TOY_AUT):
        chain = random_chain(rng, params)
        mus = [f for f in chain.factors if isinstance(f, MonomialAut)]
        taus = [f for f in chain.factors if isinstance(f, ElemTriangularAut)]
        assert len(mus) == 3
        assert len(taus) == 2 * (params.n - 1)
        assert isinstance(chain.factors[0], MonomialAut) and isinstance(chain.factors[-1], MonomialAut)
        for m in mus:
            assert abs(int_det(m.A)) == 1
            assert all(-10 <= b <= 10 for b in m.b)
        for t in taus:
            assert all(i > t.j for i in t.q.variables_used())
            assert t.q.degree == 2
            assert all(-10 <= c <= 10 for c, _ in t.q.monomials)


def test_toy_round_trips():
    rng = np.random.default_rng(21)
    done = 0
    for seed in range(100):
        pk, chain = aut_keygen(TOY_AUT.with_seed(seed))
        for _ in range(10):
            s = random_point(rng, 3, -1000, 1000)
            c = encrypt(pk, s)
            assert c == aut_apply_point(chain, s)
            assert decrypt(chain, c) == s
            done += 1
    assert done == 1000


def test_inverse_of_forward_on_random_chains():
    rng = np.random.default_rng(3)
    params = AutParams(n=4, q_shape="dense")
    for _ in range(10):
        chain = random_chain(rng, params)
        for _ in range(100):
            s = random_point(rng, 4, -10**4, 10**4)
            assert aut_apply_point_inverse(chain, aut_apply_point(chain, s)) == s


def test_dense_q_keys():
    params = AutParams(n=3, q_shape="dense")
    rng = np.random.default_rng(12)
    for seed in range(20):
        pk, chain = aut_keygen(params.with_seed(seed))
        for t in chain.factors:
            if isinstance(t, ElemTriangularAut):
                assert t.q.degree == 2 and all(i > t.j for i in t.q.variables_used())
        for _ in range(10):
            s = random_point(rng, 3, -1000, 1000)
            assert encrypt(pk, s) == aut_apply_point(chain, s)
            assert decrypt(chain, encrypt(pk, s)) == s


def test_standard_preset_key():
    pk, chain = aut_keygen(STANDARD_AUT.with_seed(5))
    assert pk.n == 10
    assert encrypt(pk, (0,) * 10) == aut_apply_point(chain, (0,) * 10)
    assert decrypt(chain, encrypt(pk, (0,) * 10)) == (0,) * 10
    rng = np.random.default_rng(5)
    for _ in range(100):
        s = random_point(rng, 10, -10**6, 10**6)
        assert decrypt(chain, encrypt(pk, s)) == s


def test_decrypt_is_total():
    pk, chain = aut_keygen(TOY_AUT.with_seed(2))
    rng = np.random.default_rng(2)
    for _ in range(100):
        c = random_point(rng, 3, -10**5, 10**5)
        s = decrypt(chain, c)
        assert encrypt(pk, s) == c


def test_keygen_deterministic():
    a = aut_keygen(TOY_AUT.with_seed(8))
    b = aut_keygen(TOY_AUT.with_seed(8))
    assert a[1] == b[1]
    assert a[0].to_json() == b[0].to_json()


def test_apply_poly():
    pk, chain = aut_keygen(TOY_AUT.with_seed(3))
    x1 = TropPoly.variable(0, 3)
    assert rat_equiv(aut_apply_poly(chain, x1, pk), pk.coords[0])
    with pytest.raises(ValueError):
        aut_apply_poly(chain, TropPoly.variable(0, 2), pk)


def test_homomorphism_sampled():
    rng = np.random.default_rng(17)
    for seed in range(10):
        pk, chain = aut_keygen(TOY_AUT.with_seed(seed))
        u1 = random_poly(rng, 3, terms=4, max_exp=1)
        u2 = random_poly(rng, 3, terms=4, max_exp=1)
        a1, a2 = aut_apply_poly(chain, u1, pk), aut_apply_poly(chain, u2, pk)
        add, mul = aut_apply_poly(chain, u1 + u2, pk), aut_apply_poly(chain, u1 * u2, pk)
        for _ in range(20):
            s = random_point(rng, 3)
            assert rat_eval(add, s) == min(rat_eval(a1, s), rat_eval(a2, s))
            assert rat_eval(mul, s) == rat_eval(a1, s) + rat_eval(a2, s)
            # alpha(u) evaluated at s is u evaluated at the ciphertext of s
            assert rat_eval(a1, s) == rat_eval(TropRat.from_poly(u1), encrypt(pk, s))


def test_key_files_round_trip(tmp_path):
    pk, chain = aut_keygen(TOY_AUT.with_seed(6))
    dump_json(pk, tmp_path / "pk.json")
    dump_json(chain, tmp_path / "sk.json")
    pk2, chain2 = load_public(tmp_path / "pk.json"), load_private(tmp_path / "sk.json")
    assert chain2 == chain
    assert isinstance(pk2, AutPublicKey)
    s = (3, -7, 11)
    assert encrypt(pk2, s) == encrypt(pk, s)
    assert decrypt(chain2, encrypt(pk2, s)) == s
    data = chain.to_json()
    assert data["n"] == 3
    assert {f["type"] for f in data["factors"]} == {"monomial", "triangular"}
