from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from horadam.algebra import ONE, I, J, K, Quaternion
from horadam.errors import NegativeIndexWithZeroQ, NegativePowerUnsupported, UnknownMatrix
from horadam.matrices import (
    IDENTITY,
    ZERO_MATRIX,
    Mat2,
    apply_column,
    b_power_factored,
    build_named,
    companion,
    det_row1,
    det_row2,
    kb_power_factored,
    mat_mul,
    mat_pow,
)
from horadam.qsequences import U, V, W
from horadam.sequences import HoradamParams, term_fast, u_term, v_term

from .oracles import sym_mul

PQ_GRID = [(p, q) for p, q in product(range(-3, 4), repeat=2) if q != 0]
W_PARAMS = [(0, 1), (2, -1), (-2, 2), (1, 1)]

ints = st.integers(-20, 20)
quaternions = st.builds(Quaternion, ints, ints, ints, ints)
matrices = st.builds(Mat2, quaternions, quaternions, quaternions, quaternions)


def scalar_mat(a, b, c, d):
    return Mat2(a, b, c, d)


class TestProduct:
    def test_identity(self):
        x = Mat2(I, J, K, ONE)
        assert mat_mul(x, IDENTITY) == x == mat_mul(IDENTITY, x)
        assert mat_mul(x, ZERO_MATRIX) == ZERO_MATRIX

    def test_brute_force_square(self):
        x = Mat2(I, J, K, ONE)
        a, b, c, d = x.entries
        expected = Mat2(
            sym_mul(a, a) + sym_mul(b, c),
            sym_mul(a, b) + sym_mul(b, d),
            sym_mul(c, a) + sym_mul(d, c),
            sym_mul(c, b) + sym_mul(d, d),
        )
        assert x @ x == expected
        assert x @ x == Mat2(Quaternion(-1, 1, 0, 0), Quaternion(0, 0, 1, 1), Quaternion(0, 0, 1, 1), Quaternion(1, -1, 0, 0))

    def test_kernel_asc_desc(self):
        for p, q in product(range(-3, 4), repeat=2):
            assert Mat2(p, 1, q, 0) @ Mat2(0, -1, -q, p) == Mat2.scalar(-q)

    @given(matrices, matrices, matrices)
    def test_associative(self, x, y, z):
        assert (x @ y) @ z == x @ (y @ z)

    def test_not_commutative(self):
        x, y = Mat2(I, 0, 0, 1), Mat2(J, 0, 0, 1)
        assert x @ y != y @ x

    def test_json_round_trip(self):
        x = Mat2(I, Quaternion(Fraction(1, 3), 0, 0, 0), K, 5)
        obj = x.to_json()
        assert len(obj) == 4 and obj[1] == {"a0": "1/3", "a1": "0", "a2": "0", "a3": "0"}
        assert Mat2.from_json(obj) == x


class TestPowers:
    def test_example(self):
        assert mat_pow(companion(1, 1), 5) == scalar_mat(8, 5, 5, 3)
        assert mat_pow(Mat2(I, J, K, ONE), 0) == IDENTITY

    @pytest.mark.parametrize("p,q", list(product(range(-3, 4), repeat=2)))
    def test_closed_form(self, p, q):
        a = companion(p, q)
        for n in range(1, 101):
            u_next, u_n = u_term(p, q, n + 1), u_term(p, q, n)
            q_u_prev = q * u_term(p, q, n - 1) if q else u_next - p * u_n
            expected = scalar_mat(u_next, q * u_n, u_n, q_u_prev)
            assert mat_pow(a, n) == expected
            if n <= 25:
                assert mat_pow(a, n, fast=False) == expected

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_negative_powers(self, p, q):
        a = companion(p, q)
        assert mat_pow(a, -1) == Mat2(0, 1, Fraction(1, q), Fraction(-p, q))
        for m in range(1, 12):
            assert mat_pow(a, -m) @ mat_pow(a, m) == IDENTITY
            col = apply_column(mat_pow(a, -m), (1, 0))  # A^{-m} (u_1; u_0)
            assert col == (U(p, q, -m).a1, U(p, q, -m).a0)

    def test_negative_power_errors(self):
        with pytest.raises(NegativeIndexWithZeroQ):
            mat_pow(companion(2, 0), -1)
        with pytest.raises(NegativePowerUnsupported):
            mat_pow(Mat2(I, 0, 0, 1), -1)

    def test_self_consistency_large(self):
        a = companion(1, 1)
        half = mat_pow(a, 5000)
        assert mat_pow(a, 10000) == half @ half


class TestClosedForms:
    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_t_matrix(self, p, q):
        for w0, w1 in W_PARAMS:
            prm = HoradamParams(w0, w1, p, q)
            t = build_named("T", prm)
            w = lambda n: term_fast(prm, n)  # noqa: E731
            for n in range(1, 26):
                assert t @ mat_pow(companion(p, q), n - 1) == scalar_mat(w(n + 1), q * w(n), w(n), q * w(n - 1))

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_commutation_with_u_matrix(self, p, q):
        uu = build_named("U", HoradamParams(0, 0, p, q))
        for w0, w1 in W_PARAMS:
            prm = HoradamParams(w0, w1, p, q)
            t = build_named("T", prm)
            for n in range(1, 26):
                ta = t @ mat_pow(companion(p, q), n - 1)
                expected = Mat2(W(prm, n + 2), q * W(prm, n + 1), W(prm, n + 1), q * W(prm, n))
                assert ta @ uu == expected == uu @ ta

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_commutation_with_w_matrix(self, p, q):
        a = companion(p, q)
        for w0, w1 in W_PARAMS:
            prm = HoradamParams(w0, w1, p, q)
            ww = build_named("W", prm)
            for n in range(1, 26):
                an = mat_pow(a, n)
                expected = Mat2(W(prm, n + 2), q * W(prm, n + 1), W(prm, n + 1), q * W(prm, n))
                assert an @ ww == expected == ww @ an

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_b_powers(self, p, q):
        prm = HoradamParams(0, 1, p, q)
        b, kk = build_named("B", prm), build_named("K", prm)
        d = p * p + 4 * q
        for n in range(1, 26):
            scale, core = b_power_factored(p, q, n)
            assert scale == 2 ** (n - 1)
            assert core == scalar_mat(v_term(p, q, n), d * u_term(p, q, n), u_term(p, q, n), v_term(p, q, n))
            assert mat_pow(b, n) == scale * core
            kscale, kcore = kb_power_factored(p, q, n)
            assert kcore == Mat2(V(p, q, n), d * U(p, q, n), U(p, q, n), V(p, q, n))
            assert kk @ mat_pow(b, n - 1) == kscale * kcore

    @pytest.mark.parametrize("p,q", list(product(range(-3, 4), repeat=2)))
    def test_cayley_hamilton(self, p, q):
        a = companion(p, q)
        a2 = a @ a
        assert a2 - p * a - Mat2.scalar(q) == ZERO_MATRIX
        lhs = (a2 + Mat2.scalar(q)) @ (a2 + Mat2.scalar(q))
        assert lhs == (p * p + 4 * q) * a2
        for n in range(1, 26):
            an = mat_pow(a, n)
            assert mat_pow(a, n + 2) == p * mat_pow(a, n + 1) + q * an

    def test_named_examples(self):
        fib = HoradamParams.fibonacci()
        assert build_named("A", fib) == scalar_mat(1, 1, 1, 0)
        assert build_named("K", fib) == Mat2(Quaternion(1, 3, 4, 7), 5 * Quaternion(1, 1, 2, 3), Quaternion(1, 1, 2, 3), Quaternion(1, 3, 4, 7))
        assert build_named("Shift(1)", fib) == IDENTITY
        with pytest.raises(UnknownMatrix):
            build_named("Z", fib)
        with pytest.raises(ValueError):
            build_named("Shift", fib)


class TestProofKernels:
    @pytest.mark.parametrize("p,q", list(product(range(-3, 4), repeat=2)))
    def test_shift_mirror(self, p, q):
        prm = HoradamParams(0, 1, p, q)
        for r in range(1, 15):
            assert build_named("Shift", prm, r) @ build_named("Mirror", prm, r) == Mat2.scalar(u_term(p, q, r))
            assert build_named(f"Shift({r})", prm) == build_named("Shift", prm, r)

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_descending_walk(self, p, q):
        for w0, w1 in W_PARAMS:
            prm = HoradamParams(w0, w1, p, q)
            desc = build_named("Desc", prm)
            for n in range(0, 20):
                col = apply_column(mat_pow(desc, n), (W(prm, 0), -W(prm, 1)))
                assert col == (W(prm, n), -W(prm, n + 1))


class TestDeterminants:
    def test_examples(self):
        for p, q in product(range(-3, 4), repeat=2):
            a = companion(p, q)
            assert det_row1(a) == -q
            for n in range(0, 12):
                assert det_row1(mat_pow(a, n)) == (-q) ** n

    def test_expansions_differ(self):
        x = Mat2(I, J, K, ONE)
        assert det_row1(x) == Quaternion(0, 0, 0, 0)
        assert det_row2(x) == Quaternion(0, 2, 0, 0)

    @given(st.builds(Mat2, ints, ints, ints, ints))
    def test_real_entries_agree(self, x):
        assert det_row1(x) == det_row2(x)

    @pytest.mark.parametrize("p,q", PQ_GRID)
    def test_cassini_through_determinants(self, p, q):
        # the row-entry-left convention turns det(W A^(n-1)) = (-q)^(n-1) det(W)
        # into the two Cassini forms, one per expansion row
        a = companion(p, q)
        for w0, w1 in W_PARAMS:
            prm = HoradamParams(w0, w1, p, q)
            ww = build_named("W", prm)
            for n in range(1, 15):
                m = ww @ mat_pow(a, n - 1)
                assert det_row1(m) == (-q) ** (n - 1) * det_row1(ww)
                assert det_row2(m) == (-q) ** (n - 1) * det_row2(ww)
                Wn = lambda i: W(prm, i)  # noqa: E731
                assert det_row1(m) == q * (Wn(n + 1) * Wn(n - 1) - Wn(n) * Wn(n))
                assert det_row2(m) == q * (Wn(n - 1) * Wn(n + 1) - Wn(n) * Wn(n))
