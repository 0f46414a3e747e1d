"""Horadam quaternions ``W_n = w_n + w_{n+1} i + w_{n+2} j + w_{n+3} k``.

All four components come from a single companion-matrix power: the column
``(w_{n+1}, w_n)`` is computed once and the remaining two components follow
from two steps of the recurrence. This holds for negative ``n`` as well.
"""

from __future__ import annotations

from .algebra import Quaternion, as_rational
from .sequences import HoradamParams, term_pair

__all__ = ["W", "W_range", "U", "V", "Q", "K", "fibonacci_quaternion", "lucas_quaternion"]


def W(params: HoradamParams, n: int) -> Quaternion:
    w_next, w_n = term_pair(params, n)
    p, q = params.p, params.q
    w2 = p * w_next + q * w_n
    w3 = p * w2 + q * w_next
    return Quaternion(w_n, w_next, w2, w3)


def W_range(params: HoradamParams, lo: int, hi: int) -> list[Quaternion]:
    """``[W_lo, ..., W_hi]``, anchored by one matrix power at ``lo``."""
    if hi < lo:
        return []
    w_next, w_n = term_pair(params, lo)
    p, q = params.p, params.q
    terms = [w_n, w_next]
    for _ in range(hi - lo + 2):
        terms.append(p * terms[-1] + q * terms[-2])
    terms = [as_rational(t) for t in terms]
    return [Quaternion._raw(*terms[i : i + 4]) for i in range(hi - lo + 1)]


def U(p: int, q: int, n: int) -> Quaternion:
    """(p,q)-Fibonacci quaternion."""
    return W(HoradamParams.pq_fibonacci(p, q), n)


def V(p: int, q: int, n: int) -> Quaternion:
    """(p,q)-Lucas quaternion."""
    return W(HoradamParams.pq_lucas(p, q), n)


def fibonacci_quaternion(n: int) -> Quaternion:
    return W(HoradamParams.fibonacci(), n)


def lucas_quaternion(n: int) -> Quaternion:
    return W(HoradamParams.lucas(), n)


Q = fibonacci_quaternion
K = lucas_quaternion
