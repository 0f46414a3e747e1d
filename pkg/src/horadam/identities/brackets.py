"""The commutator bracket ``[Z, W]_0`` and the form ``Delta(Z, W)``."""

from __future__ import annotations

from ..algebra import Quaternion, embed
from ..errors import MismatchedPQ
from ..qsequences import W
from ..sequences import HoradamParams, term_fast

__all__ = ["commutator0", "delta"]


def _first_two(params: HoradamParams, scalar: bool):
    if scalar:
        return embed(term_fast(params, 0)), embed(term_fast(params, 1))
    return W(params, 0), W(params, 1)


def commutator0(z: HoradamParams, w: HoradamParams, *, scalar: bool = False) -> Quaternion:
    """``Z_1 W_0 - Z_0 W_1``.

    With ``scalar`` set the scalar sequences ``z_n, w_n`` are used, embedded
    as real quaternions, and the bracket always vanishes.
    """
    z0, z1 = _first_two(z, scalar)
    w0, w1 = _first_two(w, scalar)
    return z1 * w0 - z0 * w1


def delta(z: HoradamParams, w: HoradamParams, *, scalar: bool = False) -> Quaternion:
    """``Z_1 W_1 - p Z_0 W_1 - q Z_0 W_0`` for two families sharing ``(p, q)``."""
    if not z.same_pq(w):
        raise MismatchedPQ(f"(p, q) differ: ({z.p}, {z.q}) vs ({w.p}, {w.q})")
    p, q = w.p, w.q
    z0, z1 = _first_two(z, scalar)
    w0, w1 = _first_two(w, scalar)
    return z1 * w1 - p * (z0 * w1) - q * (z0 * w0)
