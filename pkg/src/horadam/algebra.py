"""Exact scalars and the real quaternion algebra.

Scalars are Python ``int`` or :class:`fractions.Fraction`. Both are canonical
representations of a rational number (a ``Fraction`` is always reduced with a
positive denominator), so value equality is structural equality. Floats are
rejected at every entry point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

__all__ = [
    "Rational",
    "Quaternion",
    "as_rational",
    "format_rational",
    "parse_rational",
    "q_add",
    "q_mul",
    "q_conj",
    "q_norm",
    "q_scale",
    "embed",
    "ZERO",
    "ONE",
    "I",
    "J",
    "K",
]


def as_rational(x) -> Rational:
    """Coerce ``x`` to an exact rational, collapsing integral fractions to ``int``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    # numpy integers and other exact integral types
    if hasattr(x, "__index__"):
        return int(x.__index__())
    raise TypeError(f"not an exact rational: {x!r} ({type(x).__name__})")


def parse_rational(text: str) -> Rational:
    """Parse ``"n"`` or ``"n/d"`` with arbitrary-size decimal integers."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        d = int(den)
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return as_rational(Fraction(int(num), d))
    return int(s)


def format_rational(x: Rational) -> str:
    x = as_rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class Quaternion:
    """``a0 + a1 i + a2 j + a3 k`` with exact rational coefficients.

    Instances are immutable. ``*`` is the Hamilton product when both operands
    are quaternions and componentwise scaling when one side is a scalar.
    """

    __slots__ = ("a0", "a1", "a2", "a3")

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        object.__setattr__(self, "a0", as_rational(a0))
        object.__setattr__(self, "a1", as_rational(a1))
        object.__setattr__(self, "a2", as_rational(a2))
        object.__setattr__(self, "a3", as_rational(a3))

    @classmethod
    def _raw(cls, a0, a1, a2, a3) -> "Quaternion":
        # trusted constructor for results of exact arithmetic
        q = object.__new__(cls)
        object.__setattr__(q, "a0", a0)
        object.__setattr__(q, "a1", a1)
        object.__setattr__(q, "a2", a2)
        object.__setattr__(q, "a3", a3)
        return q

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    def __delattr__(self, name):
        raise AttributeError("Quaternion is immutable")

    def __reduce__(self):
        return (Quaternion, self.components)

    @property
    def components(self) -> tuple[Rational, Rational, Rational, Rational]:
        return (self.a0, self.a1, self.a2, self.a3)

    def __iter__(self):
        return iter(self.components)

    @property
    def is_real(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return (
                self.a0 == other.a0
                and self.a1 == other.a1
                and self.a2 == other.a2
                and self.a3 == other.a3
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_real and self.a0 == other
        return NotImplemented

    def __hash__(self):
        if self.is_real:
            return hash(self.a0)
        return hash(self.components)

    def __repr__(self):
        return "Quaternion({})".format(", ".join(format_rational(c) for c in self.components))

    def __str__(self):
        return self.format_human()

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion._raw(
                self.a0 + other.a0, self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3
            )
        if isinstance(other, (int, Fraction)):
            return Quaternion._raw(self.a0 + other, self.a1, self.a2, self.a3)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quaternion._raw(-self.a0, -self.a1, -self.a2, -self.a3)

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion._raw(
                self.a0 - other.a0, self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3
            )
        if isinstance(other, (int, Fraction)):
            return Quaternion._raw(self.a0 - other, self.a1, self.a2, self.a3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quaternion._raw(other - self.a0, -self.a1, -self.a2, -self.a3)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a0, a1, a2, a3 = self.a0, self.a1, self.a2, self.a3
            b0, b1, b2, b3 = other.a0, other.a1, other.a2, other.a3
            return Quaternion._raw(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
                a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Quaternion._raw(self.a0 * other, self.a1 * other, self.a2 * other, self.a3 * other)
        return NotImplemented

    def __rmul__(self, other):
        # scalars are central, so c*x == x*c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Quaternion._raw(other * self.a0, other * self.a1, other * self.a2, other * self.a3)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Quaternion":
        return Quaternion._raw(self.a0, -self.a1, -self.a2, -self.a3)

    def norm(self) -> Rational:
        return as_rational(self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3)

    def canonical(self) -> "Quaternion":
        """Copy with integral ``Fraction`` components collapsed to ``int``."""
        return Quaternion(*self.components)

    def to_json(self) -> dict[str, str]:
        return {f"a{i}": format_rational(c) for i, c in enumerate(self.components)}

    @classmethod
    def from_json(cls, obj: dict) -> "Quaternion":
        return cls(*(parse_rational(str(obj[f"a{i}"])) for i in range(4)))

    def format_human(self) -> str:
        """Render as ``a0 + a1 i + a2 j + a3 k`` with explicit signs."""
        parts = [format_rational(self.a0)]
        for c, unit in zip((self.a1, self.a2, self.a3), "ijk"):
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {format_rational(abs(c))} {unit}")
        return " ".join(parts)


ZERO = Quaternion(0, 0, 0, 0)
ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


def embed(c) -> Quaternion:
    """Real scalar as a quaternion with zero vector part."""
    return Quaternion(c, 0, 0, 0)


def q_add(x: Quaternion, y: Quaternion) -> Quaternion:
    return x + y


def q_mul(x: Quaternion, y: Quaternion) -> Quaternion:
    """Hamilton product ``x y``; the order of the factors matters."""
    if not (isinstance(x, Quaternion) and isinstance(y, Quaternion)):
        raise TypeError("q_mul expects two quaternions")
    return x * y


def q_conj(x: Quaternion) -> Quaternion:
    return x.conj()


def q_norm(x: Quaternion) -> Rational:
    return x.norm()


def q_scale(c, x: Quaternion) -> Quaternion:
    return as_rational(c) * x
