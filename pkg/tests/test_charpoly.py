import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interlacing.charpoly import (
    as_real_matrix,
    bivariate_det,
    cauchy_binet_check,
    char_poly,
    elementary_symmetric,
    gram_outer,
    kappa,
    newton_interpolate,
    stable_rank,
    stable_rank4,
    symmetric_matrix,
)
from interlacing.instances import rational_instance
from interlacing.oracle import charpoly_by_minors
from interlacing.poly import Polynomial, X

small_int = st.integers(-4, 4)


def exact(rows):
    return as_real_matrix([[Fraction(v) for v in r] for r in rows])


class TestMatrices:
    def test_exact_detection(self):
        assert as_real_matrix([[1, "1/2"]]).dtype == object
        assert as_real_matrix([[1.5, 2]]).dtype == float

    @pytest.mark.parametrize("bad", [[], [[]], [[1.0, math.nan]], [1, 2]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            as_real_matrix(bad)

    def test_symmetrised(self):
        S = symmetric_matrix(np.array([[1.0, 2.0], [2.0 + 1e-14, 3.0]]))
        assert S[0, 1] == S[1, 0]

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            symmetric_matrix(np.array([[1.0, 2.0], [0.0, 3.0]]))

    def test_gram_outer_repeats(self):
        B = exact([[1, 2], [0, 1]])
        np.testing.assert_array_equal(gram_outer(B, [1, 1]), 2 * np.outer(B[:, 1], B[:, 1]))


class TestCharPoly:
    @pytest.mark.parametrize("A, expected", [
        (np.eye(2), X**2 - 2 * X + 1),
        (np.diag([1.0, 2.0]), X**2 - 3 * X + 2),
        (np.zeros((3, 3)), X**3),
    ])
    def test_examples(self, A, expected):
        assert char_poly(A).allclose(expected)

    def test_vanishes_at_eigenvalues(self):
        A = np.diag([1.0, -2.0, 0.5, 4.0])
        p = char_poly(A)
        for ev in np.diag(A):
            assert abs(p(ev)) <= 1e-8

    @settings(max_examples=40)
    @given(st.integers(1, 4).flatmap(lambda d: st.lists(st.lists(small_int, min_size=d, max_size=d),
                                                          min_size=d, max_size=d)))
    def test_exact_against_minor_expansion(self, rows):
        A = exact(rows)
        A = A + A.T
        assert char_poly(A) == charpoly_by_minors(A)

    def test_float_against_numpy(self):
        rng = np.random.default_rng(0)
        G = rng.standard_normal((5, 5))
        A = G + G.T
        np.testing.assert_allclose(char_poly(A).coeffs[::-1], np.poly(A), rtol=1e-9, atol=1e-9)


class TestElementarySymmetric:
    def test_diag(self):
        assert elementary_symmetric(exact([[1, 0, 0], [0, 2, 0], [0, 0, 3]])) == [1, 6, 11, 6]

    @pytest.mark.parametrize("d", [1, 3, 5])
    def test_identity(self, d):
        assert elementary_symmetric(as_real_matrix(np.eye(d).astype(int).tolist())) == [math.comb(d, i) for i in range(d + 1)]

    def test_rank_one(self):
        u = np.array([[1], [Fraction(1, 2)], [3]], dtype=object)
        e = elementary_symmetric(u @ u.T)
        assert e[1] == 1 + Fraction(1, 4) + 9
        assert e[2] == 0 and e[3] == 0


class TestCauchyBinet:
    @pytest.mark.parametrize("ell, expected", [(1, 2), (2, 1)])
    def test_identity(self, ell, expected):
        assert cauchy_binet_check(exact([[1, 0], [0, 1]]), ell) == (expected, expected)

    @pytest.mark.parametrize("seed", range(3))
    def test_rational_2x4(self, seed):
        lhs, rhs = cauchy_binet_check(rational_instance(2, 4, seed), 2)
        assert lhs == rhs

    @pytest.mark.parametrize("seed", range(5))
    def test_float_3x5(self, seed):
        B = np.random.default_rng(seed).standard_normal((3, 5))
        for ell in range(4):
            lhs, rhs = cauchy_binet_check(B, ell)
            assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-12)

    def test_cap(self):
        with pytest.raises(ValueError):
            cauchy_binet_check(np.ones((2, 30)), 2, cap=10)

    def test_ell_range(self):
        with pytest.raises(ValueError):
            cauchy_binet_check(np.ones((2, 3)), 3)


class TestInterpolation:
    def test_recovers_cubic(self):
        p = Polynomial((Fraction(1, 3), -2, 0, 5))
        nodes = [0, 1, 2, 3]
        assert newton_interpolate(nodes, [p(t) for t in nodes]) == p


class TestBivariate:
    def test_zero_and_identity(self):
        b = bivariate_det(np.zeros((2, 2)), np.eye(2))
        T = Polynomial((0, 1))
        assert b.coeffs[2].allclose(Polynomial((1,)))
        assert b.coeffs[1].allclose(2 * T)
        assert b.coeffs[0].allclose(T * T)

    def test_scalar(self):
        b = bivariate_det(exact([[1]]), exact([[2]]))
        assert b.coeffs == (Polynomial((-1, 2)), Polynomial((1,)))

    @pytest.mark.parametrize("seed", range(5))
    def test_two_by_two_by_hand(self, seed):
        rng = np.random.default_rng(seed)
        G, H = rng.standard_normal((2, 2, 2))
        C, M = symmetric_matrix(G + G.T), symmetric_matrix(H + H.T)
        b = bivariate_det(C, M)
        for x, t in rng.uniform(-2, 2, size=(6, 2)):
            a = x - C[0, 0] + t * M[0, 0]
            dd = x - C[1, 1] + t * M[1, 1]
            off = -C[0, 1] + t * M[0, 1]
            assert b.at_t(t)(x) == pytest.approx(a * dd - off * off, rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    def test_specialisation(self, d):
        rng = np.random.default_rng(d)
        G = rng.standard_normal((d, d + 3))
        C, M = G[:, :2] @ G[:, :2].T, G @ G.T / (d + 3)
        b = bivariate_det(C, M)
        for t in rng.uniform(-3, 3, size=10):
            assert b.at_t(t).allclose(char_poly(C - t * M), rtol=1e-8, atol=1e-8)

    def test_t_degree_structure(self):
        B = rational_instance(3, 5, 1)
        b = bivariate_det(gram_outer(B, [0]), gram_outer(B) / 5)
        assert b.dim == 3
        assert b.coeffs[3] == Polynomial((1,))
        for p in range(4):
            assert b.coeffs[p].degree <= 3 - p

    def test_exact_mode(self):
        B = rational_instance(2, 3, 0)
        b = bivariate_det(gram_outer(B, [1]), gram_outer(B) / 3)
        t = Fraction(2, 7)
        assert b.at_t(t) == char_poly(gram_outer(B, [1]) - gram_outer(B) / 3 * t)


class TestRanks:
    @pytest.mark.parametrize("d", [1, 3, 6])
    def test_identity(self, d):
        assert stable_rank(np.eye(d)) == pytest.approx(d)
        assert stable_rank4(np.eye(d)) == pytest.approx(d)

    def test_singular_values_2_1(self):
        assert stable_rank(np.diag([2.0, 1.0])) == pytest.approx(1.25)

    def test_rank_one(self):
        u = np.array([[1.0], [2.0], [-1.0]])
        assert stable_rank(u @ np.array([[1.0, 3.0, 0.5]])) == pytest.approx(1.0)

    def test_srank4_211(self):
        assert stable_rank4(np.diag([2.0, 1.0, 1.0])) == pytest.approx(2.0)

    def test_kappa(self):
        assert kappa(exact([[2, 0, 0], [0, 1, 0], [0, 0, 1]])) == Fraction(16, 6)
        assert kappa(np.eye(4)) == pytest.approx(4)

    def test_kappa_is_srank4(self):
        B = np.random.default_rng(1).standard_normal((3, 7))
        assert kappa(B @ B.T) == pytest.approx(stable_rank4(B))

    @pytest.mark.parametrize("seed", range(10))
    def test_srank4_dominates(self, seed):
        rng = np.random.default_rng(seed)
        B = rng.standard_normal((4, 6)) * rng.uniform(0.1, 3, size=6)
        assert stable_rank4(B) >= stable_rank(B) - 1e-9

    def test_zero_matrix(self):
        with pytest.raises(ValueError):
            stable_rank(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            stable_rank4(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            kappa(np.zeros((2, 2)))
