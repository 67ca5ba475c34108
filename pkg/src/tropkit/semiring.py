"""Scalar min-plus semiring over the integers extended by the epsilon element.

Finite scalars are plain Python ints restricted to the signed 64-bit range;
epsilon (the additive neutral, "infinity") is ``math.inf``.  Every operation
that can leave the 64-bit range raises :class:`TropicalOverflowError`
instead of silently growing or wrapping.
"""

from __future__ import annotations

import math
from typing import Union

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

EPS = math.inf

Scalar = Union[int, float]


class TropicalOverflowError(OverflowError):
    """A finite tropical value left the signed 64-bit range."""


def is_eps(a: Scalar) -> bool:
    return a == EPS


def check_int64(v: int) -> int:
    if v < INT64_MIN or v > INT64_MAX:
        raise TropicalOverflowError(f"{v} outside signed 64-bit range")
    return v


def scalar(v) -> Scalar:
    """Coerce ``v`` into a canonical scalar.

    Accepts ints, ``math.inf`` and the strings ``"inf"`` / decimal integers.
    Finite floats are accepted only if they are integral.
    """
    if isinstance(v, str):
        s = v.strip()
        if s in ("inf", "+inf", "ε", "eps"):
            return EPS
        return check_int64(int(s))
    if isinstance(v, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(v, float):
        if v == math.inf:
            return EPS
        if not v.is_integer():
            raise ValueError(f"non-integer tropical scalar {v!r}")
        return check_int64(int(v))
    if hasattr(v, "__index__"):
        return check_int64(int(v))
    raise TypeError(f"cannot interpret {v!r} as a tropical scalar")


def t_add(a: Scalar, b: Scalar) -> Scalar:
    """Tropical sum: the minimum, epsilon acting as +infinity."""
    return a if a <= b else b


def t_mul(a: Scalar, b: Scalar) -> Scalar:
    """Tropical product: classical sum, absorbing epsilon."""
    if a == EPS or b == EPS:
        return EPS
    return check_int64(a + b)


def t_div(a: Scalar, b: Scalar) -> Scalar:
    """The unique ``z`` with ``b (x) z == a``.

    Raises ZeroDivisionError when ``b`` is epsilon (nothing satisfies it).
    """
    if b == EPS:
        raise ZeroDivisionError("tropical division by epsilon")
    if a == EPS:
        return EPS
    return check_int64(a - b)


def t_pow(a: Scalar, k: int) -> Scalar:
    """Tropical power ``a^(x)k``; negative ``k`` goes through division."""
    if a == EPS:
        if k <= 0:
            raise ValueError("epsilon has no tropical power for exponent <= 0")
        return EPS
    return check_int64(k * a)


def t_sum(values) -> Scalar:
    """Tropical sum of an iterable; epsilon for an empty one."""
    return min(values, default=EPS)


def format_scalar(a: Scalar) -> str:
    return "inf" if a == EPS else str(int(a))


def to_json_scalar(a: Scalar):
    """JSON-safe encoding: ints stay ints, epsilon becomes ``"inf"``."""
    return "inf" if a == EPS else int(a)
