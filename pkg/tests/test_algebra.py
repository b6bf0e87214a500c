import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from biframe.algebra import (
    NotPositiveDefiniteError,
    ToleranceConfig,
    abs_element,
    adjoint,
    frac_power,
    identity,
    is_positive,
    loewner_leq,
    operator_norm,
)
from biframe.generate import random_matrix, random_pd

EPS = ToleranceConfig().eq_tol


def _eig_sqrt(h):
    # oracle: square root through an eigendecomposition of a Hermitian PSD matrix
    w, v = scipy.linalg.eigh(h)
    return v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


class TestAdjoint:
    def test_identity(self):
        np.testing.assert_array_equal(adjoint(identity(2)), identity(2))

    def test_nilpotent(self):
        np.testing.assert_array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])

    def test_conjugation(self):
        np.testing.assert_array_equal(adjoint([[1j, 0], [0, 0]]), [[-1j, 0], [0, 0]])

    def test_involution_exact(self, rng):
        a = random_matrix(rng, 4, 4)
        np.testing.assert_array_equal(adjoint(adjoint(a)), a)


class TestAbs:
    def test_identity(self):
        np.testing.assert_allclose(abs_element(identity(3)), identity(3), atol=EPS)

    def test_diagonal(self):
        np.testing.assert_allclose(abs_element(np.diag([-3.0, 4.0])), np.diag([3.0, 4.0]), atol=EPS)

    def test_random_matches_oracle(self, rng):
        a = random_matrix(rng, 3, 3)
        np.testing.assert_allclose(abs_element(a), _eig_sqrt(a.conj().T @ a), atol=EPS)
        # second, Schur based route
        np.testing.assert_allclose(abs_element(a), scipy.linalg.sqrtm(a.conj().T @ a), atol=1e-8)

    def test_square_and_positivity(self, rng):
        for _ in range(50):
            a = random_matrix(rng, 3, 3)
            r = abs_element(a)
            assert is_positive(r)
            np.testing.assert_allclose(r @ r, a.conj().T @ a, atol=10 * EPS * max(1, operator_norm(a) ** 2))


class TestPositivity:
    def test_identity(self):
        assert is_positive(identity(2))

    def test_indefinite(self):
        assert not is_positive(np.diag([1.0, -1.0]))

    def test_gram(self, rng):
        b = random_matrix(rng, 4, 4)
        assert is_positive(b.conj().T @ b)

    def test_non_hermitian_rejected(self):
        assert not is_positive(np.array([[1.0, 1.0], [0.0, 1.0]]))


class TestLoewner:
    def test_zero_below_identity(self):
        assert loewner_leq(np.zeros((2, 2)), identity(2))

    def test_scaled_identity(self):
        assert loewner_leq(identity(2), 2 * identity(2))

    def test_incomparable(self):
        # difference diag(1, -1) has eigenvalues {1, -1}
        diff = np.diag([2.0, 2.0]) - np.diag([1.0, 3.0])
        assert np.linalg.eigvalsh(diff).tolist() == [-1.0, 1.0]
        assert not loewner_leq(np.diag([1.0, 3.0]), np.diag([2.0, 2.0]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            loewner_leq(identity(2), identity(3))

    def test_reflexive_transitive_antisymmetric(self, rng):
        for _ in range(30):
            a = random_pd(rng, 3)
            b = a + random_pd(rng, 3, 0.0, 1.0)
            c = b + random_pd(rng, 3, 0.0, 1.0)
            assert loewner_leq(a, a)
            assert loewner_leq(a, b) and loewner_leq(b, c) and loewner_leq(a, c)
        a = random_pd(rng, 3)
        b = a + 1e-12 * np.eye(3)
        assert loewner_leq(a, b) and loewner_leq(b, a)
        assert np.max(np.abs(np.linalg.eigvalsh(b - a))) <= 2 * ToleranceConfig().psd_tol


class TestOperatorNorm:
    def test_identity(self):
        assert operator_norm(identity(4)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert operator_norm(np.diag([2.0, -5.0])) == pytest.approx(5.0)

    def test_random_matches_eig_oracle(self, rng):
        a = random_matrix(rng, 3, 3)
        lam = scipy.linalg.eigvalsh(a.conj().T @ a)[-1]
        assert operator_norm(a) == pytest.approx(np.sqrt(lam), abs=EPS)

    def test_submultiplicative(self, rng):
        for _ in range(100):
            a, b = random_matrix(rng, 3, 3), random_matrix(rng, 3, 3)
            assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + EPS


class TestFracPower:
    @pytest.mark.parametrize("p", [-1.0, -0.5, 0.3, 2.0])
    def test_identity(self, p):
        np.testing.assert_allclose(frac_power(identity(3), p), identity(3), atol=EPS)

    def test_diagonal_sqrt(self):
        np.testing.assert_allclose(frac_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]), atol=EPS)

    def test_power_one(self, rng):
        a = random_pd(rng, 4)
        np.testing.assert_allclose(frac_power(a, 1), a, atol=EPS)

    def test_split_product(self, rng):
        a = random_pd(rng, 4)
        np.testing.assert_allclose(frac_power(a, 0.3) @ frac_power(a, 0.7), a, atol=10 * EPS)

    def test_matches_scipy(self, rng):
        a = random_pd(rng, 4)
        np.testing.assert_allclose(frac_power(a, 0.3), scipy.linalg.fractional_matrix_power(a, 0.3), atol=1e-8)

    @pytest.mark.parametrize("p", [-1, -0.5, 0.3, 0.5, 0.7, 1])
    @pytest.mark.parametrize("q", [-1, -0.5, 0.3, 0.5, 0.7, 1])
    def test_semigroup_grid(self, rng, p, q):
        a = random_pd(rng, 3)
        np.testing.assert_allclose(frac_power(a, p + q), frac_power(a, p) @ frac_power(a, q), atol=10 * EPS * 4)

    def test_non_hermitian(self):
        with pytest.raises(ValueError):
            frac_power(np.array([[1.0, 1.0], [0.0, 1.0]]), 0.5)

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError):
            frac_power(np.diag([1.0, 0.0]), 0.5)
        with pytest.raises(NotPositiveDefiniteError):
            frac_power(np.diag([1.0, -2.0]), 0.5)


class TestToleranceConfig:
    def test_defaults(self):
        t = ToleranceConfig()
        assert (t.eq_tol, t.psd_tol, t.inv_tol) == (1e-9, 1e-9, 1e-9)

    @pytest.mark.parametrize("bad", [0.0, -1e-9, 1e-2])
    def test_bounds(self, bad):
        with pytest.raises(ValueError):
            ToleranceConfig(eq_tol=bad)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("BIFRAME_TOL", "1e-7")
        assert ToleranceConfig.from_env().eq_tol == 1e-7


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=2, max_size=2), st.integers(0, 2**32 - 1))
def test_abs_of_unitary_conjugated_diagonal(diag, seed):
    from biframe.generate import random_unitary

    u = random_unitary(np.random.default_rng(seed), 2)
    a = u @ np.diag(diag) @ u.conj().T
    expected = u @ np.diag(np.abs(diag)) @ u.conj().T
    np.testing.assert_allclose(abs_element(a), expected, atol=1e-9 * max(1, max(map(abs, diag))))
