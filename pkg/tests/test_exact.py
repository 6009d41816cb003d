from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegrpd.exact import (
    GaussianRational,
    Matrix,
    ModeError,
    NumericError,
    charpoly_exact,
    charpoly_exact_roots,
    det_exact,
    eigenvalues_numeric,
    format_scalar,
    gaussian,
    gaussian_rational_roots,
    lagrange_interpolate,
    matrix_exp_numeric,
    matrix_inverse,
    numeric_rank,
    parse_scalar,
    poly_eval,
    rank_kernel,
    rref,
    scalar_key,
    solve_exact,
    sturm_root_count,
)

rationals = st.builds(Q, st.integers(-6, 6), st.integers(1, 4))


def rational_matrix(n):
    return st.lists(
        st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(Matrix)


class TestScalars:
    def test_gaussian_collapses_to_fraction(self):
        assert gaussian(1, 0) == Q(1)
        assert isinstance(gaussian(1, 0), Q)
        z = gaussian(Q(1, 2), Q(-3, 4))
        assert isinstance(z, GaussianRational)

    def test_arithmetic(self):
        i = gaussian(0, 1)
        assert i * i == Q(-1)
        assert (1 + i) * (1 - i) == Q(2)
        assert (2 + i) / (1 - i) == gaussian(Q(1, 2), Q(3, 2))
        assert 1 / i == -i

    def test_parse_format_round_trip(self):
        for text in ["7", "-3/4", "1/2+3/4i", "i", "-i", "2i", "1/2-3/4i", "0"]:
            z = parse_scalar(text)
            assert parse_scalar(format_scalar(z)) == z

    def test_parse_with_space(self):
        assert parse_scalar("1/2+3/4 i") == gaussian(Q(1, 2), Q(3, 4))


class TestElimination:
    def test_rank_kernel_dependent_rows(self):
        # [[1,2],[2,4]]: rank 1, kernel spanned by (-2, 1)
        rank, kernel = rank_kernel(Matrix([[1, 2], [2, 4]]))
        assert rank == 1
        assert kernel == [(Q(-2), Q(1))]

    def test_rank_full(self):
        rank, kernel = rank_kernel(Matrix([[1, 0], [1, 1]]))
        assert rank == 2 and kernel == []

    def test_mode_error_on_float(self):
        with pytest.raises(ModeError):
            rank_kernel(Matrix([[1.0, 2.0], [2.0, 4.0]]))

    def test_mixed_entries_rejected(self):
        with pytest.raises(ModeError):
            Matrix([[1, 2.0]])

    @settings(max_examples=60)
    @given(rational_matrix(3))
    def test_rank_nullity_and_kernel_annihilated(self, m):
        rank, kernel = rank_kernel(m)
        assert rank + len(kernel) == 3
        for v in kernel:
            assert m.apply(v) == (Q(0),) * 3
        # kernel vectors are independent: each has a 1 where others are 0
        if kernel:
            stacked = Matrix(kernel)
            r2, _ = rank_kernel(stacked)
            assert r2 == len(kernel)

    def test_rref_idempotent(self):
        red, piv = rref([[Q(2), Q(4)], [Q(1), Q(3)]])
        red2, piv2 = rref(red)
        assert red == list(red2) and piv == piv2

    def test_det_and_inverse(self):
        m = Matrix([[1, 2], [3, 4]])
        assert det_exact(m) == Q(-2)
        assert matrix_inverse(m) @ m == Matrix.identity(2)

    def test_solve(self):
        m = Matrix([[1, 1], [0, 1]])
        assert solve_exact(m, (Q(3), Q(2))) == (Q(1), Q(2))
        assert solve_exact(Matrix([[1, 1], [1, 1]]), (Q(0), Q(1))) is None

    def test_gaussian_entries(self):
        i = gaussian(0, 1)
        rank, kernel = rank_kernel(Matrix([[1, i], [i, -1]]))
        assert rank == 1
        assert len(kernel) == 1


class TestCharpoly:
    def test_rotation_generator(self):
        # [[0,-1],[1,0]]: t^2 + 1, roots +-i
        poly, roots, complete = charpoly_exact_roots(Matrix([[0, -1], [1, 0]]))
        assert poly == [Q(1), Q(0), Q(1)]
        assert complete
        assert roots == [(gaussian(0, -1), 1), (gaussian(0, 1), 1)]

    def test_irrational_spectrum_flagged_incomplete(self):
        # [[0,1],[2,0]]: t^2 - 2, no Gaussian-rational roots
        poly, roots, complete = charpoly_exact_roots(Matrix([[0, 1], [2, 0]]))
        assert poly == [Q(-2), Q(0), Q(1)]
        assert roots == []
        assert not complete

    def test_diagonal(self):
        poly, roots, complete = charpoly_exact_roots(Matrix([[1, 0], [0, -1]]))
        assert poly == [Q(-1), Q(0), Q(1)]
        assert complete
        assert dict(roots) == {Q(1): 1, Q(-1): 1}

    def test_repeated_root_multiplicity(self):
        m = Matrix([[2, 1], [0, 2]])
        _, roots, complete = charpoly_exact_roots(m)
        assert roots == [(Q(2), 2)] and complete

    @settings(max_examples=40)
    @given(st.lists(st.integers(-4, 4), min_size=2, max_size=5))
    def test_companion_matrix_recovers_polynomial(self, low):
        # companion of monic t^n + a_{n-1} t^{n-1} + ... + a_0
        n = len(low)
        comp = [[Q(0)] * n for _ in range(n)]
        for i in range(1, n):
            comp[i][i - 1] = Q(1)
        for i in range(n):
            comp[i][n - 1] = Q(-low[i])
        poly = charpoly_exact(Matrix(comp))
        assert poly == [Q(c) for c in low] + [Q(1)]

    @settings(max_examples=30)
    @given(st.lists(st.builds(Q, st.integers(-3, 3), st.integers(1, 2)), min_size=1, max_size=4))
    def test_constructed_roots_are_found(self, roots):
        poly = [Q(1)]
        for r in roots:
            poly = [Q(0)] + poly
            for k in range(len(poly) - 1):
                poly[k] -= r * poly[k + 1]
        found, complete = gaussian_rational_roots(poly)
        assert complete
        assert sorted(
            [r for r, mult in found for _ in range(mult)], key=scalar_key
        ) == sorted(roots, key=scalar_key)

    def test_gaussian_roots_with_gaussian_coeffs(self):
        # (t - i)(t - (1+i)) = t^2 - (1+2i) t + (i - 1)
        i = gaussian(0, 1)
        poly = [i - 1, -(1 + 2 * i), Q(1)]
        found, complete = gaussian_rational_roots(poly)
        assert complete
        assert dict(found) == {i: 1, 1 + i: 1}

    def test_zero_root_stripped(self):
        found, complete = gaussian_rational_roots([Q(0), Q(0), Q(1)])
        assert complete and found == [(Q(0), 2)]


class TestPolynomials:
    def test_sturm_counts(self):
        # (t - 1/2)^2: one distinct root in (0,1)
        p = [Q(1, 4), Q(-1), Q(1)]
        assert sturm_root_count(p, Q(0), Q(1)) == 1
        # t^2 - 2: no roots in (0,1), one in (1,2)
        p = [Q(-2), Q(0), Q(1)]
        assert sturm_root_count(p, Q(0), Q(1)) == 0
        assert sturm_root_count(p, Q(1), Q(2)) == 1
        # t^2 + 1: none anywhere real
        assert sturm_root_count([Q(1), Q(0), Q(1)], Q(-10), Q(10)) == 0

    def test_sturm_linear(self):
        assert sturm_root_count([Q(-1, 3), Q(1)], Q(0), Q(1)) == 1

    @settings(max_examples=30)
    @given(st.lists(rationals, min_size=1, max_size=4))
    def test_lagrange_recovers_polynomial(self, coeffs):
        pts = [(Q(k), poly_eval(list(coeffs), Q(k))) for k in range(len(coeffs))]
        rec = lagrange_interpolate(pts)
        assert rec == list(coeffs) or (
            len(rec) <= len(coeffs)
            and all(poly_eval(rec, x) == y for x, y in pts)
        )


class TestNumeric:
    def test_exp_of_rotation(self):
        theta = 0.7
        m = Matrix([[0.0, -theta], [theta, 0.0]])
        e = matrix_exp_numeric(m, tol=1e-14)
        expect = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        )
        assert np.allclose(e.to_numpy(), expect, atol=1e-12)

    def test_exp_inverse_identity(self):
        rng = np.random.RandomState(7)
        for _ in range(10):
            a = rng.uniform(-3, 3, size=(4, 4))
            e1 = matrix_exp_numeric(matrix_from_np(a)).to_numpy()
            e2 = matrix_exp_numeric(matrix_from_np(-a)).to_numpy()
            assert np.abs(e1 @ e2 - np.eye(4)).max() < 1e-8

    def test_eigenvalues_residual_contract(self):
        m = Matrix([[0, -1], [1, 0]])
        vals = eigenvalues_numeric(m, tol=1e-9)
        assert np.allclose(sorted(v.imag for v in vals), [-1.0, 1.0], atol=1e-9)

    def test_eigenvalues_match_exact_roots(self):
        m = Matrix([[1, 2], [0, 3]])
        vals = eigenvalues_numeric(m)
        assert np.allclose(sorted(v.real for v in vals), [1.0, 3.0], atol=1e-9)

    def test_numeric_rank(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])
        assert numeric_rank(a) == 1
        assert numeric_rank(np.eye(3)) == 3
        assert numeric_rank(np.zeros((2, 2))) == 0


def matrix_from_np(a):
    return Matrix([[float(x) for x in row] for row in a])
