"""Vectorised evaluation of identity expressions.

Every identity is written once as a function of an *evaluator* ``ev`` that
hands out sequence values (``ev.W(n)``, ``ev.u(r)``, ...), powers and
binomials. Index arguments are integer numpy arrays, so one call evaluates a
whole block of grid points. Three evaluators share that interface:

``ExactEval``
    numpy object arrays holding Python ints and Fractions. Always correct.
``ModEval``
    int64 residues modulo a prime below 2**30. Each value carries a bound
    on its magnitude and is reduced only when an operation could overflow.
``BoundEval``
    a single non-negative integer per expression that bounds the absolute
    value of every component over the block.

A block is accepted as exactly equal when both sides agree modulo a set of
primes whose product exceeds twice the bound; any residue mismatch is a real
inequality, and those points are re-evaluated exactly for reporting. Blocks
touching fractions (negative indices or powers) go straight to ``ExactEval``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from ..qsequences import W_range
from ..sequences import HoradamParams

__all__ = ["NeedsExact", "Arr", "Mag", "Family", "ExactEval", "ModEval", "BoundEval", "PRIMES", "primes_for_bound"]


class NeedsExact(Exception):
    """The fast path cannot represent this block; evaluate it exactly."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    found = []
    n = limit - 1
    while len(found) < count:
        if _is_prime(n):
            found.append(n)
        n -= 1
    return tuple(found)


PRIMES = _primes_below(2**30, 24)
_RED_BITS = 30  # reduced residues are below 2**30
_MAX_BITS = 63  # int64 holds magnitudes below 2**63


def primes_for_bound(bound: int) -> tuple[int, ...] | None:
    """Smallest prefix of :data:`PRIMES` whose product exceeds ``2 * bound``."""
    target = 2 * bound
    prod_ = 1
    for i, p in enumerate(PRIMES):
        prod_ *= p
        if prod_ > target:
            return PRIMES[: i + 1]
    return None


# ---------------------------------------------------------------------------
# values


class Arr:
    """A block of scalars (one component) or quaternions (four components).

    Components are numpy arrays or plain numbers, broadcast lazily. ``mod``
    is ``None`` for exact arithmetic, otherwise the prime modulus. In modular
    mode ``bits`` bounds every component by ``2**bits`` in absolute value;
    residues are reduced only when the next operation could overflow int64.
    """

    __slots__ = ("c", "mod", "bits")
    __array_ufunc__ = None  # make numpy defer to our reflected operators

    def __init__(self, comps, mod, bits: int = _RED_BITS):
        self.c = tuple(comps)
        self.mod = mod
        self.bits = bits

    @property
    def dim(self) -> int:
        return len(self.c)

    def reduced(self) -> "Arr":
        if self.mod is None or self.bits <= _RED_BITS:
            return self
        return Arr((a % self.mod for a in self.c), self.mod)

    def _fit(self, o: "Arr", extra: int) -> tuple["Arr", "Arr"]:
        # reduce the wider operand until a product stays below 2**63
        a = self
        if a.mod is None:
            return a, o
        while a.bits + o.bits + extra > _MAX_BITS:
            if a.bits >= o.bits and a.bits > _RED_BITS:
                a = a.reduced()
            else:
                o = o.reduced()
        return a, o

    def _lift(self, other) -> "Arr":
        if isinstance(other, Arr):
            return other
        if isinstance(other, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(other, (int, np.integer)):
            v = int(other)
            return Arr((v if self.mod is None else v % self.mod,), self.mod)
        if isinstance(other, Fraction):
            if self.mod is not None:
                raise NeedsExact("fraction in modular evaluation")
            return Arr((other,), None)
        return NotImplemented

    def as_quaternion(self) -> "Arr":
        if self.dim == 4:
            return self
        return Arr((self.c[0], 0, 0, 0), self.mod, self.bits)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a = self
        if a.mod is not None:
            if a.bits >= _MAX_BITS:
                a = a.reduced()
            if o.bits >= _MAX_BITS:
                o = o.reduced()
        bits = max(a.bits, o.bits) + 1
        if a.dim == o.dim:
            return Arr((x + y for x, y in zip(a.c, o.c)), a.mod, bits)
        q, s = (a, o) if a.dim == 4 else (o, a)
        return Arr((q.c[0] + s.c[0],) + q.c[1:], a.mod, bits)

    __radd__ = __add__

    def __neg__(self):
        return Arr((-a for a in self.c), self.mod, self.bits)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.dim == 4 and o.dim == 4:
            a, o = self._fit(o, 2)
            a0, a1, a2, a3 = a.c
            b0, b1, b2, b3 = o.c
            return Arr(
                (
                    a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                    a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                    a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
                    a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
                ),
                a.mod,
                a.bits + o.bits + 2,
            )
        a, o = self._fit(o, 0)
        bits = a.bits + o.bits
        if o.dim == 1:
            s = o.c[0]
            return Arr((x * s for x in a.c), a.mod, bits)
        s = a.c[0]
        return Arr((s * y for y in o.c), a.mod, bits)

    def __rmul__(self, other):
        # only scalars reach here, and scalars are central
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self

    def equal(self, other: "Arr", shape) -> np.ndarray:
        a, b = self.reduced().as_quaternion(), other.reduced().as_quaternion()
        ok = np.ones(shape, dtype=bool)
        for x, y in zip(a.c, b.c):
            ok &= np.broadcast_to(np.asarray(x == y, dtype=bool), shape)
        return ok


class Mag:
    """Upper bound on the absolute value of every component of a block."""

    __slots__ = ("m", "dim")
    __array_ufunc__ = None

    def __init__(self, m: int, dim: int):
        self.m = m
        self.dim = dim

    @staticmethod
    def _lift(other) -> "Mag":
        if isinstance(other, Mag):
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return Mag(abs(int(other)), 1)
        if isinstance(other, Fraction):
            raise NeedsExact("fraction in bound evaluation")
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Mag(self.m + o.m, max(self.dim, o.dim))

    __radd__ = __add__

    def __sub__(self, other):
        return self.__add__(other)

    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.dim == 4 and o.dim == 4:
            return Mag(4 * self.m * o.m, 4)
        return Mag(self.m * o.m, max(self.dim, o.dim))

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# sequence tables


class Family:
    """Horadam quaternions for a list of parameter rows, tabulated on demand.

    ``rows`` index into ``params``; it is an integer array aligned with the
    block (or ``0`` for a single-row family).
    """

    def __init__(self, params: list[HoradamParams], rows):
        self.params = params
        self.rows = rows
        self.lo = 0
        self.hi = -1
        self.exact: tuple[np.ndarray, ...] = ()
        self._residues: dict[int, tuple[np.ndarray, ...]] = {}
        self._colmax: list[int] | None = None
        self._integral = True

    def ensure(self, lo: int, hi: int) -> None:
        if self.lo <= lo and hi <= self.hi:
            return
        # tables always start at or below 0 and grow in steps of 8, so a
        # block's later index expressions rarely force a rebuild
        lo = min(lo, self.lo, 0) if self.hi >= self.lo else min(lo, 0)
        hi = max(hi, self.hi)
        hi = -(-hi // 8) * 8
        width = hi - lo + 1
        comps = [np.empty((len(self.params), width), dtype=object) for _ in range(4)]
        integral = True
        for r, prm in enumerate(self.params):
            for col, quat in enumerate(W_range(prm, lo, hi)):
                for c in range(4):
                    v = quat.components[c]
                    comps[c][r, col] = v
                    if integral and not isinstance(v, int):
                        integral = False
        self.lo, self.hi = lo, hi
        self.exact = tuple(comps)
        self._integral = integral
        self._residues.clear()
        self._colmax = None

    def _span(self, idx) -> tuple[int, int]:
        a = np.asarray(idx)
        lo, hi = int(a.min()), int(a.max())
        self.ensure(lo, hi)
        return lo, hi

    def gather(self, idx, mod: int | None, ncomp: int = 4):
        self._span(idx)
        col = np.asarray(idx) - self.lo
        if mod is None:
            data = self.exact
        else:
            data = self._residues.get(mod)
            if data is None:
                if not self._integral:
                    raise NeedsExact("fractional sequence values")
                data = tuple(np.array([[v % mod for v in row] for row in comp], dtype=np.int64) for comp in self.exact)
                self._residues[mod] = data
        return tuple(data[c][self.rows, col] for c in range(ncomp))

    def bound(self, idx) -> int:
        lo, hi = self._span(idx)
        if not self._integral:
            raise NeedsExact("fractional sequence values")
        if self._colmax is None:
            self._colmax = [
                max(abs(int(comp[r, col])) for comp in self.exact for r in range(len(self.params)))
                for col in range(self.hi - self.lo + 1)
            ]
        return max(self._colmax[lo - self.lo : hi - self.lo + 1])


# ---------------------------------------------------------------------------
# evaluators


class _Eval:
    def __init__(self, p: int, q: int, families: dict[str, Family]):
        self.p = p
        self.q = q
        self.d = p * p + 4 * q
        self._fam = families

    # quaternion sequences
    def W(self, n):
        return self._seq("W", n, 4)

    def Z(self, n):
        return self._seq("Z", n, 4)

    def U(self, n):
        return self._seq("U", n, 4)

    def V(self, n):
        return self._seq("V", n, 4)

    # scalar sequences
    def w(self, n):
        return self._seq("W", n, 1)

    def z(self, n):
        return self._seq("Z", n, 1)

    def u(self, n):
        return self._seq("U", n, 1)

    def v(self, n):
        return self._seq("V", n, 1)


class ExactEval(_Eval):
    mod: int | None = None

    def _seq(self, name, n, ncomp):
        return Arr(self._fam[name].gather(n, self.mod, ncomp), self.mod)

    def _scalar(self, x):
        return Arr((x,), self.mod)

    def _power_table(self, base: int, lo: int, hi: int):
        vals = []
        for e in range(lo, hi + 1):
            if e >= 0:
                vals.append(base**e)
            else:
                vals.append(Fraction(1, base ** (-e)))
        return np.array(vals, dtype=object)

    def pow(self, base: int, e):
        if isinstance(e, (int, np.integer)):
            e = int(e)
            return self._scalar(base**e if e >= 0 else Fraction(1, base ** (-e)))
        e = np.asarray(e)
        lo, hi = int(e.min()), int(e.max())
        return self._scalar(self._power_table(base, lo, hi)[e - lo])

    def binom(self, n, j: int):
        n = np.asarray(n)
        lo, hi = int(n.min()), int(n.max())
        table = np.array([math.comb(x, j) for x in range(lo, hi + 1)], dtype=object)
        return self._scalar(table[n - lo])

    def quat(self, a0, a1, a2, a3):
        return Arr((a0, a1, a2, a3), None)

    def select(self, cond, a: Arr, b: Arr) -> Arr:
        if a.dim != b.dim:
            a, b = a.as_quaternion(), b.as_quaternion()
        return Arr((np.where(cond, x, y) for x, y in zip(a.c, b.c)), a.mod, max(a.bits, b.bits))


class ModEval(ExactEval):
    def __init__(self, p, q, families, mod: int):
        super().__init__(p, q, families)
        self.mod = mod

    def pow(self, base: int, e):
        m = self.mod
        if isinstance(e, (int, np.integer)):
            if e < 0:
                raise NeedsExact("negative power")
            return self._scalar(pow(base, int(e), m))
        e = np.asarray(e)
        if int(e.min()) < 0:
            raise NeedsExact("negative power")
        hi = int(e.max())
        table = np.array([pow(base, x, m) for x in range(hi + 1)], dtype=np.int64)
        return self._scalar(table[e])

    def binom(self, n, j: int):
        n = np.asarray(n)
        lo, hi = int(n.min()), int(n.max())
        table = np.array([math.comb(x, j) % self.mod for x in range(lo, hi + 1)], dtype=np.int64)
        return self._scalar(table[n - lo])

    def quat(self, a0, a1, a2, a3):
        return Arr((x % self.mod for x in (a0, a1, a2, a3)), self.mod)


class BoundEval(_Eval):
    def _seq(self, name, n, ncomp):
        return Mag(self._fam[name].bound(n), ncomp)

    def pow(self, base: int, e):
        e = np.asarray(e)
        if int(e.min()) < 0:
            raise NeedsExact("negative power")
        # max(1, .) covers base 0, where 0**0 = 1 exceeds 0**e for e > 0
        return Mag(max(1, abs(base) ** int(e.max())), 1)

    def binom(self, n, j: int):
        hi = int(np.asarray(n).max())
        return Mag(math.comb(hi, j) if hi >= 0 else 0, 1)

    def quat(self, a0, a1, a2, a3):
        return Mag(max(abs(a0), abs(a1), abs(a2), abs(a3)), 4)

    def select(self, cond, a: Mag, b: Mag) -> Mag:
        return Mag(max(a.m, b.m), max(a.dim, b.dim))


def param_rows(p: int, q: int, first: tuple[int, ...], second: tuple[int, ...]) -> list[HoradamParams]:
    return [HoradamParams(a, b, p, q) for a, b in product(first, second)]
