"""2x2 matrices over the quaternions.

Matrix products keep the left/right order of every entry product, so the
algebra stays correct for non-commuting entries. Two determinants are
provided, one per expansion row, with the entry of the expansion row always
taken as the left factor:

    det_row1 = m00*m11 - m01*m10
    det_row2 = m11*m00 - m10*m01

They agree whenever the entries commute.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ONE, ZERO, Quaternion, as_rational, embed
from .errors import NegativeIndexWithZeroQ, NegativePowerUnsupported, UnknownMatrix
from .qsequences import U, V, W
from .sequences import HoradamParams, companion_power, inverse_companion_power, u_term, v_term

__all__ = [
    "Mat2",
    "IDENTITY",
    "ZERO_MATRIX",
    "mat_mul",
    "mat_pow",
    "det_row1",
    "det_row2",
    "build_named",
    "companion",
    "apply_column",
    "apply_row",
    "b_power_factored",
    "kb_power_factored",
    "NAMED_MATRICES",
]


def _entry(x) -> Quaternion:
    return x if isinstance(x, Quaternion) else embed(x)


@dataclass(frozen=True)
class Mat2:
    m00: Quaternion
    m01: Quaternion
    m10: Quaternion
    m11: Quaternion

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, _entry(getattr(self, name)))

    @classmethod
    def scalar(cls, c) -> "Mat2":
        return cls(c, 0, 0, c)

    @property
    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.m00, self.m01, self.m10, self.m11)

    @property
    def is_real(self) -> bool:
        return all(e.is_real for e in self.entries)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        a, b = self, other
        return Mat2(
            a.m00 * b.m00 + a.m01 * b.m10,
            a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10,
            a.m10 * b.m01 + a.m11 * b.m11,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat2":
        return Mat2(*(-x for x in self.entries))

    def __mul__(self, c) -> "Mat2":
        """Right multiplication of every entry by a scalar or quaternion."""
        if isinstance(c, Mat2):
            return NotImplemented
        if not isinstance(c, Quaternion):
            c = as_rational(c)
        return Mat2(*(x * c for x in self.entries))

    def __rmul__(self, c) -> "Mat2":
        if not isinstance(c, Quaternion):
            c = as_rational(c)
        return Mat2(*(c * x for x in self.entries))

    def __repr__(self):
        return "Mat2([[{!r}, {!r}], [{!r}, {!r}]])".format(*self.entries)

    def to_json(self) -> list[dict[str, str]]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, obj: list) -> "Mat2":
        return cls(*(Quaternion.from_json(e) for e in obj))


IDENTITY = Mat2(ONE, ZERO, ZERO, ONE)
ZERO_MATRIX = Mat2(ZERO, ZERO, ZERO, ZERO)


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return x @ y


def companion(p: int, q: int) -> Mat2:
    return Mat2(p, q, 1, 0)


def _companion_coefficients(x: Mat2) -> tuple[int, int] | None:
    if not x.is_real or x.m10.a0 != 1 or x.m11.a0 != 0:
        return None
    p, q = x.m00.a0, x.m01.a0
    if isinstance(p, int) and isinstance(q, int):
        return p, q
    return None


def _binary_pow(x: Mat2, n: int) -> Mat2:
    result, base = IDENTITY, x
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def mat_pow(x: Mat2, n: int, *, fast: bool = True) -> Mat2:
    """``x^n`` by repeated squaring.

    Negative ``n`` is supported only for a companion matrix ``[[p, q], [1, 0]]``
    with ``q != 0``, through ``A^{-m} = q^{-m} [[0, q], [1, -p]]^m``. With
    ``fast`` set, non-negative powers of a companion matrix go through the
    scalar fast-doubling kernel; the result is identical.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("exponent must be an integer")
    pq = _companion_coefficients(x)
    if n < 0:
        if pq is None:
            raise NegativePowerUnsupported("negative powers are only defined for the companion matrix")
        p, q = pq
        if q == 0:
            raise NegativeIndexWithZeroQ("the companion matrix is singular when q == 0")
        m = -n
        (c00, c01), (c10, c11) = inverse_companion_power(p, q, m)
        scale = Fraction(1, q**m)
        return Mat2(*(as_rational(c * scale) for c in (c00, c01, c10, c11)))
    if n == 0:
        return IDENTITY
    if pq is not None and fast:
        p, q = pq
        u_next, u_n = companion_power(p, q, n)
        return Mat2(u_next, q * u_n, u_n, u_next - p * u_n)
    return _binary_pow(x, n)


def det_row1(x: Mat2) -> Quaternion:
    return x.m00 * x.m11 - x.m01 * x.m10


def det_row2(x: Mat2) -> Quaternion:
    return x.m11 * x.m00 - x.m10 * x.m01


def apply_column(x: Mat2, col: tuple) -> tuple[Quaternion, Quaternion]:
    """``x`` times a column vector, entries multiplied with the matrix on the left."""
    a, b = (_entry(c) for c in col)
    return (x.m00 * a + x.m01 * b, x.m10 * a + x.m11 * b)


def apply_row(row: tuple, x: Mat2) -> tuple[Quaternion, Quaternion]:
    """A row vector times ``x``, entries multiplied with the vector on the left."""
    a, b = (_entry(c) for c in row)
    return (a * x.m00 + b * x.m10, a * x.m01 + b * x.m11)


def _build(name: str, params: HoradamParams, r: int | None) -> Mat2:
    p, q, d = params.p, params.q, params.d
    if name == "A":
        return companion(p, q)
    if name == "T":
        w0, w1 = params.w0, params.w1
        w2 = p * w1 + q * w0
        return Mat2(w2, q * w1, w1, q * w0)
    if name == "U":
        return Mat2(U(p, q, 2), q * U(p, q, 1), U(p, q, 1), q * U(p, q, 0))
    if name == "W":
        W0, W1, W2 = (W(params, i) for i in (0, 1, 2))
        return Mat2(W2, q * W1, W1, q * W0)
    if name == "K":
        U1, V1 = U(p, q, 1), V(p, q, 1)
        return Mat2(V1, d * U1, U1, V1)
    if name == "B":
        return Mat2(p, d, 1, p)
    if name == "Asc":
        return Mat2(p, 1, q, 0)
    if name == "Desc":
        return Mat2(0, -1, -q, p)
    if name in ("Shift", "Mirror"):
        if r is None:
            raise ValueError(f"{name} needs the offset r")
        u_r, u_prev = u_term(p, q, r), u_term(p, q, r - 1)
        if name == "Shift":
            return Mat2(u_r, 0, q * u_prev, 1)
        return Mat2(1, 0, -q * u_prev, u_r)
    raise UnknownMatrix(name)


NAMED_MATRICES = ("A", "T", "U", "W", "K", "B", "Asc", "Desc", "Shift", "Mirror")

_CALL_FORM = re.compile(r"^(Shift|Mirror)\((-?\d+)\)$")


def build_named(name: str, params: HoradamParams, r: int | None = None) -> Mat2:
    """Build one of the named matrices; ``"Shift(3)"`` is accepted for ``Shift`` with ``r=3``.

    Shift is ``[[u_r, 0], [q u_{r-1}, 1]]`` and Mirror ``[[1, 0], [-q u_{r-1}, u_r]]``;
    their product is ``u_r I``.
    """
    m = _CALL_FORM.match(name)
    if m:
        name, r = m.group(1), int(m.group(2))
    if name not in NAMED_MATRICES:
        raise UnknownMatrix(name)
    return _build(name, params, r)


def b_power_factored(p: int, q: int, n: int) -> tuple[int, Mat2]:
    """``(2^{n-1}, [[v_n, d u_n], [u_n, v_n]])``, whose product is ``B^n`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("the factored form of B^n needs n >= 1")
    d = p * p + 4 * q
    u_n, v_n = u_term(p, q, n), v_term(p, q, n)
    return 2 ** (n - 1), Mat2(v_n, d * u_n, u_n, v_n)


def kb_power_factored(p: int, q: int, n: int) -> tuple[int, Mat2]:
    """``(2^{n-1}, [[V_n, d U_n], [U_n, V_n]])``, whose product is ``K B^{n-1}`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("the factored form of K B^(n-1) needs n >= 1")
    d = p * p + 4 * q
    U_n, V_n = U(p, q, n), V(p, q, n)
    return 2 ** (n - 1), Mat2(V_n, d * U_n, U_n, V_n)
