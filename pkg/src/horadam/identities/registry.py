"""Executable form of every identity checked by the verifier.

Each entry evaluates its left and right sides independently from sequence
values handed out by an evaluator (see :mod:`.engine`). Nothing on one side
is reused on the other.

Two identities have a second, "as written" variant whose statement disagrees
with the matrix product it is read off from. Both variants are registered;
the verifier reports which one holds instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import UnknownIdentity

__all__ = ["Identity", "REGISTRY", "get", "all_ids", "derivation_backed_ids", "disputed_pairs"]


def _always(ix) -> bool:
    return True


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    formula: str
    fn: Callable
    vars: tuple[str, ...] = ()
    families: tuple[str, ...] = ()  # subset of ("z", "w"), in axis order
    minimum: dict = field(default_factory=dict)
    parity: tuple[str, int] | None = None
    # given the index arrays, which points need q != 0 (negative index or power)
    needs_q: Callable | None = None
    fixed_pq: tuple[int, int] | None = None
    variant: str | None = None  # "as_written" or "derived" for disputed pairs
    dispute: str | None = None

    @property
    def disputed(self) -> bool:
        return self.variant == "as_written"

    @property
    def uses_w(self) -> bool:
        return "w" in self.families

    @property
    def uses_z(self) -> bool:
        return "z" in self.families


REGISTRY: dict[str, Identity] = {}


def _register(id, title, formula, vars=(), families=(), **kw):
    def deco(fn):
        REGISTRY[id] = Identity(id, title, formula, fn, tuple(vars), tuple(families), **kw)
        return fn

    return deco


def get(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None


def all_ids() -> list[str]:
    return sorted(REGISTRY)


def derivation_backed_ids() -> list[str]:
    return sorted(k for k, v in REGISTRY.items() if not v.disputed)


def disputed_pairs() -> dict[str, dict[str, str]]:
    pairs: dict[str, dict[str, str]] = {}
    for ident in REGISTRY.values():
        if ident.dispute:
            pairs.setdefault(ident.dispute, {})[ident.variant] = ident.id
    return pairs


def _clip0(x):
    return np.maximum(x, 0)


def _binomial_sum(ev, n, coef, term):
    """``sum_{j=0}^{n} C(n, j) coef(j) term(j)`` for an array of ``n``.

    Terms with ``j > n`` vanish through the binomial coefficient.
    """
    total = None
    for j in range(int(np.max(n)) + 1):
        t = ev.binom(n, j) * coef(j) * term(j)
        total = t if total is None else total + t
    return total


def _char_const(ev, seq):
    """``s_1^2 - p s_0 s_1 - q s_0^2`` for a scalar sequence accessor."""
    return seq(1) * seq(1) - ev.p * seq(0) * seq(1) - ev.q * seq(0) * seq(0)


def _alternating(q: int) -> int:
    return -1 + q - q * q + q**3


# -- Cassini forms -------------------------------------------------------------

_CASSINI = dict(vars=("n",), families=("w",), minimum={"n": 0}, needs_q=_always)


@_register(
    "cassini_star",
    "Cassini identity, first-row expansion",
    "W_{n+1} W_{n-1} - W_n^2 = (-q)^{n-1} (W_2 W_0 - W_1^2)",
    **_CASSINI,
)
def _cassini_star(ev, n):
    W = ev.W
    lhs = W(n + 1) * W(n - 1) - W(n) * W(n)
    rhs = ev.pow(-ev.q, n - 1) * (W(2) * W(0) - W(1) * W(1))
    return lhs, rhs


@_register(
    "cassini_dstar",
    "Cassini identity, second-row expansion",
    "W_{n-1} W_{n+1} - W_n^2 = (-q)^{n-1} (W_0 W_2 - W_1^2)",
    **_CASSINI,
)
def _cassini_dstar(ev, n):
    W = ev.W
    lhs = W(n - 1) * W(n + 1) - W(n) * W(n)
    rhs = ev.pow(-ev.q, n - 1) * (W(0) * W(2) - W(1) * W(1))
    return lhs, rhs


@_register(
    "cassini_3",
    "Cassini identity through (p,q)-Fibonacci quaternions, first row",
    "W_{n+1} W_{n-1} - W_n^2 = (-q)^{n-1} (U_2 U_0 - U_1^2)(w_1^2 - p w_1 w_0 - q w_0^2)",
    **_CASSINI,
)
def _cassini_3(ev, n):
    W, U = ev.W, ev.U
    lhs = W(n + 1) * W(n - 1) - W(n) * W(n)
    rhs = ev.pow(-ev.q, n - 1) * (U(2) * U(0) - U(1) * U(1)) * _char_const(ev, ev.w)
    return lhs, rhs


@_register(
    "cassini_4",
    "Cassini identity through (p,q)-Fibonacci quaternions, second row",
    "W_{n-1} W_{n+1} - W_n^2 = (-q)^{n-1} (U_0 U_2 - U_1^2)(w_1^2 - p w_1 w_0 - q w_0^2)",
    **_CASSINI,
)
def _cassini_4(ev, n):
    W, U = ev.W, ev.U
    lhs = W(n - 1) * W(n + 1) - W(n) * W(n)
    rhs = ev.pow(-ev.q, n - 1) * (U(0) * U(2) - U(1) * U(1)) * _char_const(ev, ev.w)
    return lhs, rhs


@_register(
    "remark_u2u0_a",
    "closed form of U_2 U_0 - U_1^2",
    "U_2 U_0 - U_1^2 = -((-1 + q - q^2 + q^3) + V_0 - p q (q i + p j - k))",
)
def _remark_a(ev):
    U, p, q = ev.U, ev.p, ev.q
    lhs = U(2) * U(0) - U(1) * U(1)
    rhs = -(_alternating(q) + ev.V(0) - p * q * ev.quat(0, q, p, -1))
    return lhs, rhs


@_register(
    "remark_u2u0_b",
    "closed form of U_0 U_2 - U_1^2",
    "U_0 U_2 - U_1^2 = -((-1 + q - q^2 + q^3) + V_0 + p q (q i + p j - k))",
)
def _remark_b(ev):
    U, p, q = ev.U, ev.p, ev.q
    lhs = U(0) * U(2) - U(1) * U(1)
    rhs = -(_alternating(q) + ev.V(0) + p * q * ev.quat(0, q, p, -1))
    return lhs, rhs


# -- index-addition formulas ---------------------------------------------------

_MN = dict(vars=("m", "n"), minimum={"m": 1, "n": 1})


@_register("t21", "addition formula, Horadam numbers with (p,q)-Fibonacci quaternions",
           "w_n U_{m+1} + q w_{n-1} U_m = W_{n+m}", families=("w",), **_MN)
def _t21(ev, m, n):
    lhs = ev.w(n) * ev.U(m + 1) + ev.q * ev.w(n - 1) * ev.U(m)
    return lhs, ev.W(n + m)


@_register("t22", "addition formula, (p,q)-Fibonacci numbers with Horadam quaternions",
           "u_n W_{m+1} + q u_{n-1} W_m = W_{n+m}", families=("w",), **_MN)
def _t22(ev, m, n):
    lhs = ev.u(n) * ev.W(m + 1) + ev.q * ev.u(n - 1) * ev.W(m)
    return lhs, ev.W(n + m)


@_register("t23", "mixed product formula for Horadam and (p,q)-Fibonacci quaternions",
           "W_{m+1} U_{n+1} + q W_m U_n = U_2 W_{m+n} + q U_1 W_{m+n-1}", families=("w",), **_MN)
def _t23(ev, m, n):
    W, U, q = ev.W, ev.U, ev.q
    lhs = W(m + 1) * U(n + 1) + q * W(m) * U(n)
    rhs = U(2) * W(m + n) + q * U(1) * W(m + n - 1)
    return lhs, rhs


@_register("t24", "product formula for Horadam quaternions",
           "W_{m+1} W_{n+1} + q W_m W_n = W_2 W_{m+n} + q W_1 W_{m+n-1}", families=("w",), **_MN)
def _t24(ev, m, n):
    W, q = ev.W, ev.q
    lhs = W(m + 1) * W(n + 1) + q * W(m) * W(n)
    rhs = W(2) * W(m + n) + q * W(1) * W(m + n - 1)
    return lhs, rhs


@_register("sq_sum", "sum of squares", "W_{n+1}^2 + q W_n^2 = W_1 W_{2n+1} + q W_0 W_{2n}",
           vars=("n",), families=("w",), minimum={"n": 1})
def _sq_sum(ev, n):
    W, q = ev.W, ev.q
    lhs = W(n + 1) * W(n + 1) + q * W(n) * W(n)
    rhs = W(1) * W(2 * n + 1) + q * W(0) * W(2 * n)
    return lhs, rhs


@_register("sq_diff", "difference of squares", "W_{n+1}^2 - q^2 W_{n-1}^2 = p (W_1 W_{2n} + q W_0 W_{2n-1})",
           vars=("n",), families=("w",), minimum={"n": 1})
def _sq_diff(ev, n):
    W, p, q = ev.W, ev.p, ev.q
    lhs = W(n + 1) * W(n + 1) - q * q * W(n - 1) * W(n - 1)
    rhs = p * (W(1) * W(2 * n) + q * W(0) * W(2 * n - 1))
    return lhs, rhs


# -- Catalan-type identities -----------------------------------------------------

_NRS = dict(vars=("n", "r", "s"), minimum={"n": 1, "r": 1, "s": 1})


def _catalan(ev, X, Y, n, r, s):
    lhs = X(n + r) * Y(n + s) - X(n) * Y(n + r + s)
    rhs = ev.pow(-ev.q, n) * ev.u(r) * (X(1) * Y(s) - X(0) * Y(s + 1))
    return lhs, rhs


@_register("thm100", "Catalan identity for two Horadam quaternion families",
           "Z_{n+r} W_{n+s} - Z_n W_{n+r+s} = (-q)^n u_r (Z_1 W_s - Z_0 W_{s+1})",
           families=("z", "w"), **_NRS)
def _thm100(ev, n, r, s):
    return _catalan(ev, ev.Z, ev.W, n, r, s)


@_register("cor1_a", "Catalan identity, U with U",
           "U_{n+r} U_{n+s} - U_n U_{n+r+s} = (-q)^n u_r (U_1 U_s - U_0 U_{s+1})", **_NRS)
def _cor1_a(ev, n, r, s):
    return _catalan(ev, ev.U, ev.U, n, r, s)


@_register("cor1_b", "Catalan identity, U with W",
           "U_{n+r} W_{n+s} - U_n W_{n+r+s} = (-q)^n u_r (U_1 W_s - U_0 W_{s+1})", families=("w",), **_NRS)
def _cor1_b(ev, n, r, s):
    return _catalan(ev, ev.U, ev.W, n, r, s)


@_register("cor1_c", "Catalan identity, W with U",
           "W_{n+r} U_{n+s} - W_n U_{n+r+s} = (-q)^n u_r (W_1 U_s - W_0 U_{s+1})", families=("w",), **_NRS)
def _cor1_c(ev, n, r, s):
    return _catalan(ev, ev.W, ev.U, n, r, s)


@_register("cor1_d", "Catalan identity, W with W",
           "W_{n+r} W_{n+s} - W_n W_{n+r+s} = (-q)^n u_r (W_1 W_s - W_0 W_{s+1})", families=("w",), **_NRS)
def _cor1_d(ev, n, r, s):
    return _catalan(ev, ev.W, ev.W, n, r, s)


@_register("cor2", "Catalan identity via the commutator bracket and Delta",
           "Z_{n+r} W_{n+s} - Z_n W_{n+r+s} = (-q)^n u_r (q u_{s-1} [Z,W]_0 + u_s Delta(Z,W))",
           families=("z", "w"), **_NRS)
def _cor2(ev, n, r, s):
    Z, W, p, q = ev.Z, ev.W, ev.p, ev.q
    lhs = Z(n + r) * W(n + s) - Z(n) * W(n + r + s)
    bracket = Z(1) * W(0) - Z(0) * W(1)
    delta = Z(1) * W(1) - p * Z(0) * W(1) - q * Z(0) * W(0)
    rhs = ev.pow(-q, n) * ev.u(r) * (q * ev.u(s - 1) * bracket + ev.u(s) * delta)
    return lhs, rhs


@_register("waddill", "scalar Catalan identity for Horadam numbers",
           "w_{n+r} w_{n+s} - w_n w_{n+r+s} = (-q)^n u_r u_s (w_1^2 - p w_0 w_1 - q w_0^2)",
           families=("w",), **_NRS)
def _waddill(ev, n, r, s):
    w = ev.w
    lhs = w(n + r) * w(n + s) - w(n) * w(n + r + s)
    rhs = ev.pow(-ev.q, n) * ev.u(r) * ev.u(s) * _char_const(ev, w)
    return lhs, rhs


@_register("thm101", "Catalan identity through (p,q)-Fibonacci quaternions",
           "W_{n+r} W_{n+s} - W_n W_{n+r+s} = (-q)^n u_r (U_1 U_s - U_0 U_{s+1}) Delta(w,w)",
           families=("w",), **_NRS)
def _thm101(ev, n, r, s):
    W, U = ev.W, ev.U
    lhs = W(n + r) * W(n + s) - W(n) * W(n + r + s)
    rhs = ev.pow(-ev.q, n) * ev.u(r) * (U(1) * U(s) - U(0) * U(s + 1)) * _char_const(ev, ev.w)
    return lhs, rhs


# -- (p,q)-Fibonacci and (p,q)-Lucas quaternions ---------------------------------


@_register("t41", "Cassini-type identity for (p,q)-Lucas and (p,q)-Fibonacci quaternions",
           "V_n^2 - d U_n^2 = (-q)^{n-1} (V_1^2 - d U_1^2)", vars=("n",), minimum={"n": 1})
def _t41(ev, n):
    U, V, d = ev.U, ev.V, ev.d
    lhs = V(n) * V(n) - d * U(n) * U(n)
    rhs = ev.pow(-ev.q, n - 1) * (V(1) * V(1) - d * U(1) * U(1))
    return lhs, rhs


@_register("t41_expanded", "closed form of V_n^2 - d U_n^2",
           "V_n^2 - d U_n^2 = 4 (-q)^n (V_0 + (-1 + q - q^2 + q^3))", vars=("n",), minimum={"n": 1})
def _t41_expanded(ev, n):
    U, V, d = ev.U, ev.V, ev.d
    lhs = V(n) * V(n) - d * U(n) * U(n)
    rhs = 4 * ev.pow(-ev.q, n) * (V(0) + _alternating(ev.q))
    return lhs, rhs


@_register("t42", "Lucas addition formula", "v_m V_n + d u_m U_n = 2 V_{m+n}", **_MN)
def _t42(ev, m, n):
    lhs = ev.v(m) * ev.V(n) + ev.d * ev.u(m) * ev.U(n)
    return lhs, 2 * ev.V(m + n)


@_register("t43_as_written", "Fibonacci addition formula, variant carrying a factor d",
           "u_m V_n + d v_m U_n = 2 U_{m+n}", variant="as_written", dispute="t43", **_MN)
def _t43_as_written(ev, m, n):
    lhs = ev.u(m) * ev.V(n) + ev.d * ev.v(m) * ev.U(n)
    return lhs, 2 * ev.U(m + n)


@_register("t43_derived", "Fibonacci addition formula read off K B^(m+n-1) = (K B^(n-1)) B^m",
           "u_m V_n + v_m U_n = 2 U_{m+n}", variant="derived", dispute="t43", **_MN)
def _t43_derived(ev, m, n):
    lhs = ev.u(m) * ev.V(n) + ev.v(m) * ev.U(n)
    return lhs, 2 * ev.U(m + n)


@_register("t44", "product formula for (p,q)-Lucas quaternions",
           "V_m V_n + d U_m U_n = V_1 V_{m+n-1} + d U_1 U_{m+n-1}", **_MN)
def _t44(ev, m, n):
    U, V, d = ev.U, ev.V, ev.d
    lhs = V(m) * V(n) + d * U(m) * U(n)
    rhs = V(1) * V(m + n - 1) + d * U(1) * U(m + n - 1)
    return lhs, rhs


@_register("t45", "mixed product formula for (p,q)-Fibonacci and (p,q)-Lucas quaternions",
           "U_m V_n + V_m U_n = U_1 V_{m+n-1} + V_1 U_{m+n-1}", **_MN)
def _t45(ev, m, n):
    U, V = ev.U, ev.V
    lhs = U(m) * V(n) + V(m) * U(n)
    rhs = U(1) * V(m + n - 1) + V(1) * U(m + n - 1)
    return lhs, rhs


@_register("hamilton_remark", "Fibonacci and Lucas quaternions",
           "K_n^2 - 5 Q_n^2 = 4 (-1)^n (2 + i + 3j + 4k)", vars=("n",), minimum={"n": 0}, fixed_pq=(1, 1))
def _hamilton(ev, n):
    Q, K = ev.U, ev.V  # p = q = 1
    lhs = K(n) * K(n) - 5 * Q(n) * Q(n)
    rhs = 4 * ev.pow(-1, n) * ev.quat(2, 1, 3, 4)
    return lhs, rhs


@_register("lucas_bridge", "(p,q)-Lucas quaternions from (p,q)-Fibonacci quaternions",
           "U_{n+1} + q U_{n-1} = V_n", vars=("n",), minimum={"n": 1})
def _lucas_bridge(ev, n):
    return ev.U(n + 1) + ev.q * ev.U(n - 1), ev.V(n)


# -- binomial sums -----------------------------------------------------------------

_NK = dict(vars=("n", "k"), minimum={"n": 0, "k": 0})


@_register("thm3_1", "binomial sum from A^2 = pA + qI",
           "sum_j C(n,j) p^j q^(n-j) W_{j+k} = W_{2n+k}", families=("w",), **_NK)
def _thm3_1(ev, n, k):
    p, q = ev.p, ev.q
    lhs = _binomial_sum(ev, n, lambda j: ev.pow(p, j) * ev.pow(q, _clip0(n - j)), lambda j: ev.W(j + k))
    return lhs, ev.W(2 * n + k)


@_register("thm3_2", "binomial sum from pI - A = -q A^(-1)",
           "sum_j C(n,j) (-1)^j p^(n-j) W_{j+k} = (-q)^n W_{k-n}", families=("w",),
           needs_q=lambda ix: ix["k"] - ix["n"] < 0, **_NK)
def _thm3_2(ev, n, k):
    p, q = ev.p, ev.q
    lhs = _binomial_sum(ev, n, lambda j: (-1) ** j * ev.pow(p, _clip0(n - j)), lambda j: ev.W(j + k))
    return lhs, ev.pow(-q, n) * ev.W(k - n)


def _even_odd_sum(ev, n, k, seq):
    q = ev.q
    return _binomial_sum(ev, n, lambda j: ev.pow(q, _clip0(n - j)), lambda j: seq(2 * j + k))


@_register("thm3_3_even", "binomial sum from (A^2 + qI)^2 = d A^2, n even",
           "sum_j C(n,j) q^(n-j) W_{2j+k} = d^(n/2) W_{n+k}", families=("w",), parity=("n", 0), **_NK)
def _thm3_3_even(ev, n, k):
    lhs = _even_odd_sum(ev, n, k, ev.W)
    return lhs, ev.pow(ev.d, n // 2) * ev.W(n + k)


@_register("thm3_3_odd_as_written", "binomial sum from (A^2 + qI)^2 = d A^2, n odd, variant with W_{n-k-1}",
           "sum_j C(n,j) q^(n-j) W_{2j+k} = d^((n-1)/2) (W_{n+k+1} + q W_{n-k-1})", families=("w",),
           parity=("n", 1), needs_q=lambda ix: ix["n"] - ix["k"] - 1 < 0,
           variant="as_written", dispute="thm3_3_odd", **_NK)
def _thm3_3_odd_as_written(ev, n, k):
    lhs = _even_odd_sum(ev, n, k, ev.W)
    rhs = ev.pow(ev.d, (n - 1) // 2) * (ev.W(n + k + 1) + ev.q * ev.W(n - k - 1))
    return lhs, rhs


@_register("thm3_3_odd_derived", "binomial sum from (A^2 + qI)^2 = d A^2, n odd, from the matrix power",
           "sum_j C(n,j) q^(n-j) W_{2j+k} = d^((n-1)/2) (W_{n+k+1} + q W_{n+k-1})", families=("w",),
           parity=("n", 1), variant="derived", dispute="thm3_3_odd", **_NK)
def _thm3_3_odd_derived(ev, n, k):
    lhs = _even_odd_sum(ev, n, k, ev.W)
    rhs = ev.pow(ev.d, (n - 1) // 2) * (ev.W(n + k + 1) + ev.q * ev.W(n + k - 1))
    return lhs, rhs


@_register("cor3_1", "binomial sum of (p,q)-Fibonacci quaternions",
           "sum_j C(n,j) q^(n-j) U_{2j+k} = d^(n/2) U_{n+k} (n even), d^((n-1)/2) V_{n+k} (n odd)", **_NK)
def _cor3_1(ev, n, k):
    lhs = _even_odd_sum(ev, n, k, ev.U)
    even = ev.pow(ev.d, n // 2) * ev.U(n + k)
    odd = ev.pow(ev.d, _clip0(n - 1) // 2) * ev.V(n + k)
    return lhs, ev.select(n % 2 == 0, even, odd)


@_register("thm3_4", "binomial sum from qI - A^2 = -pA",
           "sum_j C(n,j) (-1)^j q^(n-j) W_{2j+k} = (-p)^n W_{n+k}", families=("w",), **_NK)
def _thm3_4(ev, n, k):
    q = ev.q
    lhs = _binomial_sum(ev, n, lambda j: (-1) ** j * ev.pow(q, _clip0(n - j)), lambda j: ev.W(2 * j + k))
    return lhs, ev.pow(-ev.p, n) * ev.W(n + k)
