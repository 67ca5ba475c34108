"""Shared generators and brute-force oracles for the test suite."""

import numpy as np
from hypothesis import strategies as st

from tropkit.matrix import TropMatrix, UniPoly
from tropkit.polynomial import TropPoly, TropRat
from tropkit.semiring import EPS

finite = st.integers(min_value=-10**6, max_value=10**6)
scalars = st.one_of(finite, finite, finite, st.just(EPS))


def minplus_oracle(a, b):
    """Textbook triple loop on nested lists, epsilon as math.inf."""
    n = len(a)
    out = [[EPS] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            best = EPS
            for k in range(n):
                if a[i][k] != EPS and b[k][j] != EPS:
                    best = min(best, a[i][k] + b[k][j])
            out[i][j] = best
    return out


@st.composite
def matrices(draw, n=None, lo=-1000, hi=1000, eps_prob=True):
    n = draw(st.integers(1, 4)) if n is None else n
    entry = st.integers(lo, hi)
    if eps_prob:
        entry = st.one_of(entry, entry, entry, st.just(EPS))
    rows = draw(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n))
    return TropMatrix(rows)


@st.composite
def unipolys(draw, max_degree=5):
    terms = draw(st.lists(st.tuples(st.integers(0, max_degree), st.integers(-50, 50)),
                          min_size=1, max_size=max_degree + 1))
    return UniPoly(terms)


def random_matrix(rng, n, lo, hi):
    return TropMatrix.from_arrays(rng.integers(lo, hi, size=(n, n), endpoint=True))


def random_unipoly(rng, max_degree=10, coeff=1000):
    d = int(rng.integers(1, max_degree, endpoint=True))
    return UniPoly(enumerate(int(c) for c in rng.integers(-coeff, coeff, size=d + 1, endpoint=True)))


def random_poly(rng, nvars, terms=4, max_exp=2, coeff=20, negative=False):
    lo = -max_exp if negative else 0
    k = int(rng.integers(1, terms, endpoint=True))
    exps = rng.integers(lo, max_exp, size=(k, nvars), endpoint=True)
    cs = rng.integers(-coeff, coeff, size=k, endpoint=True)
    return TropPoly.from_terms(nvars, [(int(c), tuple(int(v) for v in e)) for c, e in zip(cs, exps)])


def random_rat(rng, nvars, **kw):
    return TropRat(random_poly(rng, nvars, **kw), random_poly(rng, nvars, **kw))


def random_point(rng, nvars, lo=-50, hi=50):
    return tuple(int(v) for v in rng.integers(lo, hi, size=nvars, endpoint=True))


@st.composite
def polys(draw, nvars=2, max_terms=4, negative=True):
    lo = -2 if negative else 0
    mon = st.tuples(st.integers(-20, 20), st.tuples(*[st.integers(lo, 2)] * nvars))
    return TropPoly.from_terms(nvars, draw(st.lists(mon, min_size=1, max_size=max_terms)))


@st.composite
def rats(draw, nvars=2, max_terms=3):
    return TropRat(draw(polys(nvars, max_terms)), draw(polys(nvars, max_terms)))


points2 = st.tuples(st.integers(-100, 100), st.integers(-100, 100))
