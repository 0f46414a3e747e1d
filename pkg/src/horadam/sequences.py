"""Scalar Horadam sequences ``w_n(w0, w1; p, q)``.

``w_n = p*w_{n-1} + q*w_{n-2}``. The (p,q)-Fibonacci sequence ``u_n`` starts
from ``(0, 1)`` and the (p,q)-Lucas sequence ``v_n`` from ``(2, p)``.

Two evaluators are provided. :func:`term_naive` walks the recurrence one
step at a time (forwards, or backwards through ``w_{n-2} = (w_n - p w_{n-1})/q``)
and serves as the oracle. :func:`term_fast` reads the term off a power of the
companion matrix ``A = [[p, q], [1, 0]]`` in ``O(log |n|)`` multiplications.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Rational, as_rational
from .errors import NegativeIndexWithZeroQ

__all__ = [
    "HoradamParams",
    "SequenceKind",
    "params_for",
    "term_naive",
    "term_fast",
    "term_pair",
    "u_term",
    "v_term",
    "binomial",
    "companion_power",
    "inverse_companion_power",
]

INDEX_MIN = -(2**63)
INDEX_MAX = 2**63 - 1


def _check_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if hasattr(value, "__index__") and not isinstance(value, bool):
            return int(value.__index__())
        raise TypeError(f"{name} must be an integer, got {value!r}")
    return value


def _check_index(n) -> int:
    n = _check_int("index", n)
    if not INDEX_MIN <= n <= INDEX_MAX:
        raise ValueError(f"index {n} does not fit in a signed 64-bit integer")
    return n


@dataclass(frozen=True)
class HoradamParams:
    """Initial values ``w0, w1`` and recurrence coefficients ``p, q``.

    ``q == 0`` is accepted; it only rules out negative indices.
    """

    w0: int
    w1: int
    p: int
    q: int

    def __post_init__(self):
        for name in ("w0", "w1", "p", "q"):
            object.__setattr__(self, name, _check_int(name, getattr(self, name)))

    @property
    def d(self) -> int:
        return self.p * self.p + 4 * self.q

    @property
    def delta(self) -> int:
        """``w1^2 - p w0 w1 - q w0^2``, the characteristic constant of the sequence."""
        return self.w1 * self.w1 - self.p * self.w0 * self.w1 - self.q * self.w0 * self.w0

    @classmethod
    def pq_fibonacci(cls, p: int, q: int) -> "HoradamParams":
        return cls(0, 1, p, q)

    @classmethod
    def pq_lucas(cls, p: int, q: int) -> "HoradamParams":
        return cls(2, p, p, q)

    @classmethod
    def fibonacci(cls) -> "HoradamParams":
        return cls(0, 1, 1, 1)

    @classmethod
    def lucas(cls) -> "HoradamParams":
        return cls(2, 1, 1, 1)

    def same_pq(self, other: "HoradamParams") -> bool:
        return self.p == other.p and self.q == other.q

    def to_json(self) -> dict[str, str]:
        return {"w0": str(self.w0), "w1": str(self.w1), "p": str(self.p), "q": str(self.q)}


class SequenceKind(enum.Enum):
    GENERAL = "general"
    PQ_FIBONACCI = "pq-fib"
    PQ_LUCAS = "pq-lucas"


def params_for(kind: SequenceKind | str, p: int, q: int, w0: int | None = None, w1: int | None = None) -> HoradamParams:
    kind = SequenceKind(kind)
    if kind is SequenceKind.PQ_FIBONACCI:
        return HoradamParams.pq_fibonacci(p, q)
    if kind is SequenceKind.PQ_LUCAS:
        return HoradamParams.pq_lucas(p, q)
    if w0 is None or w1 is None:
        raise ValueError("a general Horadam sequence needs w0 and w1")
    return HoradamParams(w0, w1, p, q)


def term_naive(params: HoradamParams, n: int) -> Rational:
    """``w_n`` by stepping the recurrence ``|n|`` times."""
    n = _check_index(n)
    p, q = params.p, params.q
    if n >= 0:
        a, b = params.w0, params.w1
        for _ in range(n):
            a, b = b, p * b + q * a
        return a
    if q == 0:
        raise NegativeIndexWithZeroQ(f"w_{n} needs q != 0")
    # walk (w_{k-1}, w_k) down to (w_{n}, w_{n+1})
    lo, hi = Fraction(params.w0), Fraction(params.w1)
    for _ in range(-n):
        lo, hi = (hi - p * lo) / q, lo
    return as_rational(lo)


def companion_power(p: int, q: int, n: int) -> tuple[int, int]:
    """Return ``(u_{n+1}, u_n)`` for ``n >= 0``.

    Together with ``q u_{n-1} = u_{n+1} - p u_n`` this determines
    ``A^n = [[u_{n+1}, q u_n], [u_n, q u_{n-1}]]``. Powers of ``A`` live in
    the commutative algebra spanned by ``I`` and ``A``, so squaring needs
    only three big multiplications (fast doubling).
    """
    if n < 0:
        raise ValueError("companion_power needs n >= 0; use inverse_companion_power")
    a, b = 0, 1  # (u_k, u_{k+1}) with k = 0
    for bit in bin(n)[2:]:
        aa = a * a
        a, b = a * (2 * b - p * a), b * b + q * aa
        if bit == "1":
            a, b = b, p * b + q * a
    return b, a


def inverse_companion_power(p: int, q: int, m: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Integer matrix ``[[0, q], [1, -p]]^m``, so that ``A^{-m}`` is it divided by ``q^m``."""
    if m < 0:
        raise ValueError("exponent must be non-negative")
    r00, r01, r10, r11 = 1, 0, 0, 1
    b00, b01, b10, b11 = 0, q, 1, -p
    while m:
        if m & 1:
            r00, r01, r10, r11 = (
                r00 * b00 + r01 * b10,
                r00 * b01 + r01 * b11,
                r10 * b00 + r11 * b10,
                r10 * b01 + r11 * b11,
            )
        b00, b01, b10, b11 = (
            b00 * b00 + b01 * b10,
            b00 * b01 + b01 * b11,
            b10 * b00 + b11 * b10,
            b10 * b01 + b11 * b11,
        )
        m >>= 1
    return (r00, r01), (r10, r11)


def term_pair(params: HoradamParams, n: int) -> tuple[Rational, Rational]:
    """``(w_{n+1}, w_n)``, i.e. ``A^n`` applied to the column ``(w1, w0)``."""
    n = _check_index(n)
    p, q, w0, w1 = params.p, params.q, params.w0, params.w1
    if n >= 0:
        u_next, u_n = companion_power(p, q, n)
        q_u_prev = u_next - p * u_n  # q*u_{n-1}, valid for q == 0 too
        return u_next * w1 + q * u_n * w0, u_n * w1 + q_u_prev * w0
    if q == 0:
        raise NegativeIndexWithZeroQ(f"w_{n} needs q != 0")
    m = -n
    (c00, c01), (c10, c11) = inverse_companion_power(p, q, m)
    scale = q**m
    return (
        as_rational(Fraction(c00 * w1 + c01 * w0, scale)),
        as_rational(Fraction(c10 * w1 + c11 * w0, scale)),
    )


def term_fast(params: HoradamParams, n: int) -> Rational:
    """``w_n`` from a companion-matrix power; agrees with :func:`term_naive`."""
    return term_pair(params, n)[1]


def u_term(p: int, q: int, n: int) -> Rational:
    return term_fast(HoradamParams.pq_fibonacci(p, q), n)


def v_term(p: int, q: int, n: int) -> Rational:
    return term_fast(HoradamParams.pq_lucas(p, q), n)


def binomial(n: int, j: int) -> int:
    n = _check_int("n", n)
    j = _check_int("j", j)
    if n < 0 or not 0 <= j <= n:
        raise ValueError(f"binomial({n}, {j}) needs 0 <= j <= n")
    return math.comb(n, j)
