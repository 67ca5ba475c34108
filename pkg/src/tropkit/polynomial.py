"""Multivariate tropical (Laurent) polynomials and formal quotients of them.

A :class:`TropPoly` is a formal set of monomials ``c (x) x1^a1 (x) ... (x) xn^an``
with at most one monomial per exponent vector; merging keeps the smaller
coefficient.  Dominated monomials are never removed.  A :class:`TropRat` is
an unreduced pair ``num (/) den``.

Exponent vectors are packed into a single Python int (64 signed bits per
variable) so that multiplying monomials is one integer addition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .semiring import INT64_MAX, INT64_MIN, TropicalOverflowError, check_int64, t_div

DEFAULT_MONOMIAL_CAP = 100_000

_W = 64
_MASK = (1 << _W) - 1
_HALF = 1 << (_W - 1)


class MonomialCapError(RuntimeError):
    """A symbolic operation produced more monomials than the configured cap."""


def monomial_cap() -> int:
    return int(os.environ.get("TROPKIT_MONOMIAL_CAP", DEFAULT_MONOMIAL_CAP))


def _encode(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        key += int(e) << (_W * i)
    return key


def _decode(key: int, nvars: int) -> tuple[int, ...]:
    out = []
    for _ in range(nvars):
        d = key & _MASK
        if d >= _HALF:
            d -= 1 << _W
        out.append(d)
        key = (key - d) >> _W
    return tuple(out)


def _deglex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class TropPoly:
    """Canonical tropical polynomial in ``nvars`` variables (negative exponents allowed)."""

    __slots__ = ("nvars", "_terms", "_mons", "_arrays", "_hash")

    def __init__(self, nvars: int, terms: dict[int, int]):
        # Internal constructor: ``terms`` maps packed exponent keys to coefficients.
        if not terms:
            raise ValueError("tropical polynomials must have at least one monomial")
        self.nvars = nvars
        self._terms = terms
        self._mons = None
        self._arrays = None
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[int, Sequence[int]]]) -> "TropPoly":
        """Build from ``(coeff, exponent_vector)`` pairs, merging duplicates by min."""
        d: dict[int, int] = {}
        for coeff, exps in terms:
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps!r} does not have {nvars} entries")
            c = check_int64(int(coeff))
            k = _encode(exps)
            old = d.get(k)
            if old is None or c < old:
                d[k] = c
        return cls(nvars, d)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "TropPoly":
        return cls(nvars, {0: check_int64(int(c))})

    @classmethod
    def monomial(cls, coeff: int, exps: Sequence[int]) -> "TropPoly":
        return cls.from_terms(len(exps), [(coeff, exps)])

    @classmethod
    def variable(cls, i: int, nvars: int, coeff: int = 0) -> "TropPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(coeff, exps)

    # -- views --------------------------------------------------------------

    @property
    def monomials(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """``(coeff, exps)`` pairs in descending deglex order."""
        if self._mons is None:
            mons = [(c, _decode(k, self.nvars)) for k, c in self._terms.items()]
            mons.sort(key=lambda m: _deglex_key(m[1]), reverse=True)
            self._mons = tuple(mons)
        return self._mons

    def _as_arrays(self):
        if self._arrays is None:
            mons = self.monomials
            coeffs = np.array([c for c, _ in mons], dtype=np.int64)
            exps = np.array([e for _, e in mons], dtype=np.int64).reshape(len(mons), self.nvars)
            self._arrays = (coeffs, exps)
        return self._arrays

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return poly_degree(self)

    def is_constant(self) -> bool:
        return len(self._terms) == 1 and 0 in self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables_used(self) -> set[int]:
        return {i for _, e in self.monomials for i, a in enumerate(e) if a}

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "TropPoly") -> "TropPoly":
        return poly_add(self, other)

    def __mul__(self, other: "TropPoly") -> "TropPoly":
        return poly_mul(self, other)

    def __call__(self, point: Sequence[int]) -> int:
        return poly_eval(self, point)

    def __repr__(self) -> str:
        return f"TropPoly({self.nvars}, {self.to_str()!r})"

    def to_str(self, names: Sequence[str] | None = None, op_add: str = " (+) ") -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for c, exps in self.monomials:
            factors = []
            for name, a in zip(names, exps):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 0:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return op_add.join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "exps": list(e)} for c, e in self.monomials]

    @classmethod
    def from_json(cls, data, nvars: int | None = None) -> "TropPoly":
        if nvars is None:
            nvars = len(data[0]["exps"])
        return cls.from_terms(nvars, ((rec["coeff"], rec["exps"]) for rec in data))


def _same_vars(p: TropPoly, q: TropPoly) -> None:
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")


def poly_add(p: TropPoly, q: TropPoly) -> TropPoly:
    _same_vars(p, q)
    if len(p) < len(q):
        p, q = q, p
    d = dict(p._terms)
    get = d.get
    for k, c in q._terms.items():
        old = get(k)
        if old is None or c < old:
            d[k] = c
    if len(d) > monomial_cap():
        raise MonomialCapError(f"{len(d)} monomials exceed the cap")
    return TropPoly(p.nvars, d)


def _coeff_bounds(p: TropPoly) -> tuple[int, int]:
    vals = p._terms.values()
    return min(vals), max(vals)


def poly_mul(p: TropPoly, q: TropPoly) -> TropPoly:
    """All pairwise monomial products, merged by minimum coefficient."""
    _same_vars(p, q)
    plo, phi = _coeff_bounds(p)
    qlo, qhi = _coeff_bounds(q)
    if phi + qhi > INT64_MAX or plo + qlo < INT64_MIN:
        raise TropicalOverflowError("polynomial product coefficient leaves the 64-bit range")
    if len(p) < len(q):
        p, q = q, p
    if len(q) == 1:
        ((k2, c2),) = q._terms.items()
        return TropPoly(p.nvars, {k + k2: c + c2 for k, c in p._terms.items()})
    cap = monomial_cap()
    out: dict[int, int] = {}
    get = out.get
    qitems = list(q._terms.items())
    for k1, c1 in p._terms.items():
        for k2, c2 in qitems:
            k = k1 + k2
            c = c1 + c2
            old = get(k)
            if old is None or c < old:
                out[k] = c
        if len(out) > cap:
            raise MonomialCapError(f"product exceeds {cap} monomials")
    return TropPoly(p.nvars, out)


def poly_pow(p: TropPoly, k: int) -> TropPoly:
    if k < 0:
        raise ValueError("use a rational function for negative powers")
    result = TropPoly.constant(0, p.nvars)
    for _ in range(k):
        result = poly_mul(result, p)
    return result


def poly_eval(p: TropPoly, point: Sequence[int]) -> int:
    """Minimum over monomials of ``coeff + <exps, point>``."""
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    if len(p) <= 16:
        vals = [c + sum(a * s for a, s in zip(e, point)) for c, e in p.monomials]
        lo, hi = min(vals), max(vals)
        if lo < INT64_MIN or hi > INT64_MAX:
            raise TropicalOverflowError("monomial value leaves the 64-bit range")
        return lo
    coeffs, exps = p._as_arrays()
    s = [int(v) for v in point]
    bound = int(np.abs(coeffs).max()) + sum(int(np.abs(exps[:, i]).max()) * abs(v)
                                           for i, v in enumerate(s))
    if bound <= INT64_MAX:
        return int((coeffs + exps @ np.array(s, dtype=np.int64)).min())
    vals = [c + sum(a * v for a, v in zip(e, s)) for c, e in p.monomials]
    if min(vals) < INT64_MIN or max(vals) > INT64_MAX:
        raise TropicalOverflowError("monomial value leaves the 64-bit range")
    return min(vals)


def poly_degree(p: TropPoly) -> int:
    """Tropical degree: the largest exponent sum over the monomials."""
    return max(sum(e) for _, e in p.monomials)


@dataclass(frozen=True)
class TropRat:
    """Formal quotient ``num (/) den``, stored unreduced."""

    num: TropPoly
    den: TropPoly

    def __post_init__(self):
        _same_vars(self.num, self.den)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: TropPoly) -> "TropRat":
        return cls(p, TropPoly.constant(0, p.nvars))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "TropRat":
        return cls.from_poly(TropPoly.variable(i, nvars))

    @classmethod
    def constant(cls, c: int, nvars: int) -> "TropRat":
        return cls.from_poly(TropPoly.constant(c, nvars))

    def size(self) -> int:
        return len(self.num) + len(self.den)

    def __call__(self, point: Sequence[int]) -> int:
        return rat_eval(self, point)

    def __add__(self, other: "TropRat") -> "TropRat":
        return rat_add(self, other)

    def __mul__(self, other: "TropRat") -> "TropRat":
        return rat_mul(self, other)

    def __truediv__(self, other: "TropRat") -> "TropRat":
        return rat_div(self, other)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data, nvars: int | None = None) -> "TropRat":
        return cls(TropPoly.from_json(data["num"], nvars), TropPoly.from_json(data["den"], nvars))

    def to_str(self, names=None) -> str:
        if self.den.is_constant() and self.den.monomials[0][0] == 0:
            return self.num.to_str(names)
        return f"({self.num.to_str(names)}) (/) ({self.den.to_str(names)})"


def rat_mul(r: TropRat, s: TropRat) -> TropRat:
    return TropRat(poly_mul(r.num, s.num), poly_mul(r.den, s.den))


def rat_add(r: TropRat, s: TropRat) -> TropRat:
    num = poly_add(poly_mul(r.num, s.den), poly_mul(r.den, s.num))
    return TropRat(num, poly_mul(r.den, s.den))


def rat_div(r: TropRat, s: TropRat) -> TropRat:
    return TropRat(poly_mul(r.num, s.den), poly_mul(r.den, s.num))


def rat_equiv(r: TropRat, s: TropRat) -> bool:
    """Formal equivalence: ``num(r) (x) den(s)`` and ``den(r) (x) num(s)`` are identical."""
    return poly_mul(r.num, s.den) == poly_mul(r.den, s.num)


def rat_eval(r: TropRat, point: Sequence[int]) -> int:
    return t_div(poly_eval(r.num, point), poly_eval(r.den, point))


def rat_normalize(r: TropRat) -> TropRat:
    """Fold a single-monomial denominator into the numerator.

    ``p (/) m`` and ``(p (x) m^-1) (/) 0`` are equivalent; the second keeps
    later sums free of extra denominator factors.
    """
    if not r.den.is_monomial() or r.den.is_constant() and r.den._terms[0] == 0:
        return r
    ((k, c),) = r.den._terms.items()
    if all(INT64_MIN <= v - c <= INT64_MAX for v in (min(r.num._terms.values()),
                                                       max(r.num._terms.values()))):
        num = TropPoly(r.nvars, {kk - k: v - c for kk, v in r.num._terms.items()})
        return TropRat(num, TropPoly.constant(0, r.nvars))
    raise TropicalOverflowError("normalizing denominator leaves the 64-bit range")


def _product(factors: list[TropPoly], start: TropPoly) -> TropPoly:
    # Smallest factors first keeps the intermediate products small.
    acc = start
    for f in sorted(factors, key=len):
        acc = poly_mul(acc, f)
    return acc


class _Substituter:
    """Maps monomials of one polynomial through a tuple of rational functions."""

    def __init__(self, args: Sequence[TropRat]):
        self.args = list(args)
        self.m = args[0].nvars
        if any(a.nvars != self.m for a in args):
            raise ValueError("substituted functions must share a variable count")
        self._powers: dict[tuple[int, int, str], TropPoly] = {}
        self.one = TropPoly.constant(0, self.m)

    def _pow(self, i: int, k: int, part: str) -> TropPoly:
        """``num_i^k`` or ``den_i^k`` for ``k >= 0``, cached."""
        key = (i, k, part)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        base = getattr(self.args[i], part)
        if k == 0 or base.is_constant() and base._terms.get(0) == 0:
            res = self.one
        else:
            res = poly_mul(self._pow(i, k - 1, part), base)
        self._powers[key] = res
        return res

    def poly_image(self, p: TropPoly) -> TropRat:
        # Common denominator prod_i den_i^P_i (x) num_i^N_i, where P_i and N_i
        # are the largest positive and negative exponents of x_i in p.  A
        # monomial with exponent a in x_i then contributes
        # num_i^(N_i + a) (x) den_i^(P_i - a) to the numerator.
        mons = p.monomials
        used = [i for i in range(p.nvars) if any(e[i] for _, e in mons)]
        hi = {i: max(0, max(e[i] for _, e in mons)) for i in used}
        lo = {i: max(0, -min(e[i] for _, e in mons)) for i in used}
        den = _product([self._pow(i, hi[i], "den") for i in used]
                       + [self._pow(i, lo[i], "num") for i in used], self.one)
        num = None
        for coeff, exps in mons:
            factors = []
            for i in used:
                factors.append(self._pow(i, lo[i] + exps[i], "num"))
                factors.append(self._pow(i, hi[i] - exps[i], "den"))
            term = _product(factors, TropPoly.constant(coeff, self.m))
            num = term if num is None else poly_add(num, term)
        return rat_normalize(TropRat(num, den))


def rat_substitute(r: TropRat, args: Sequence[TropRat]) -> TropRat:
    """Replace each variable ``x_i`` of ``r`` by ``args[i]``.

    Negative exponents swap numerator and denominator of the argument.  The
    result is equivalent to combining monomial images with :func:`rat_add`,
    but every monomial is brought over one shared denominator instead of
    cross-multiplying denominators pairwise.
    """
    if len(args) != r.nvars:
        raise ValueError(f"need {r.nvars} substitutions, got {len(args)}")
    sub = _Substituter(args)
    top = sub.poly_image(r.num)
    if r.den.is_constant():
        bottom = TropRat.constant(r.den.monomials[0][0], sub.m)
    else:
        bottom = sub.poly_image(r.den)
    return rat_normalize(rat_div(top, bottom))


def poly_substitute(p: TropPoly, args: Sequence[TropRat]) -> TropRat:
    return rat_substitute(TropRat.from_poly(p), args)


def identity_args(nvars: int) -> list[TropRat]:
    return [TropRat.variable(i, nvars) for i in range(nvars)]
