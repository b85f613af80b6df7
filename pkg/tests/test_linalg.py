"""The Jacobi eigensolver against LAPACK and against defining properties."""

import numpy as np
import pytest

from cdent.errors import DomainError
from cdent.linalg import hermitian_eigensystem, hermitian_eigenvalues


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


class TestJacobi:
    def test_matches_lapack_on_random_matrices(self, rng):
        for _ in range(60):
            n = int(rng.integers(2, 7))
            a = random_hermitian(rng, n)
            vals = hermitian_eigenvalues(a)
            ref = np.linalg.eigvalsh(a)[::-1]
            assert np.max(np.abs(vals - ref)) < 1e-12 * max(1.0, np.max(np.abs(ref)))

    def test_eigenvector_residual_and_orthonormality(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 6))
            a = random_hermitian(rng, n)
            vals, vecs = hermitian_eigensystem(a)
            assert np.max(np.abs(a @ vecs - vecs * vals)) < 1e-12 * max(1.0, np.max(np.abs(vals)))
            assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(n))) < 1e-12

    def test_rank_one_matrix_exact(self):
        h = np.array([[0.36, 0.48j], [-0.48j, 0.64]])
        vals = hermitian_eigenvalues(h)
        assert vals[0] == pytest.approx(1.0, abs=1e-14)
        assert vals[1] == pytest.approx(0.0, abs=1e-14)

    def test_deterministic_output(self, rng):
        a = random_hermitian(rng, 4)
        v1 = hermitian_eigensystem(a)
        v2 = hermitian_eigensystem(a)
        assert np.array_equal(v1[0], v2[0])
        assert np.array_equal(v1[1], v2[1])

    def test_phase_convention(self, rng):
        a = random_hermitian(rng, 3)
        _, vecs = hermitian_eigensystem(a)
        for i in range(3):
            lead = vecs[np.argmax(np.abs(vecs[:, i]) > 1e-12), i]
            first = vecs[:, i][np.abs(vecs[:, i]) > 1e-12][0]
            assert abs(first.imag) < 1e-13
            assert first.real > 0

    def test_degenerate_spectrum(self):
        vals, vecs = hermitian_eigensystem(0.25 * np.eye(4))
        assert np.allclose(vals, 0.25)
        assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(4))) < 1e-14

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            hermitian_eigenvalues(np.array([[1.0, 2.0], [0.5, 1.0]]))
        with pytest.raises(DomainError):
            hermitian_eigenvalues(np.ones((2, 3)))
