"""Eigensolver checks against oracles that share no code with the QR path."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptsol.eig import eigenvalues, eigenvectors, max_real_part
from ptsol.errors import NonFinite

TRIALS = 200


def random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def charpoly(A):
    """Faddeev-LeVerrier coefficients of det(lambda I - A), highest degree first."""
    n = A.shape[0]
    c = [1.0 + 0j]
    M = np.zeros_like(A)
    I = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + c[-1] * I
        c.append(-np.trace(A @ M) / k)
    return np.array(c)


def match(a, b):
    """Greedy nearest pairing distance between two eigenvalue multisets."""
    b = list(b)
    worst = 0.0
    for z in a:
        j = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(j)))
    return worst


def test_roots_of_characteristic_polynomial():
    rng = np.random.default_rng(7)
    for n in (2, 3, 5, 8):
        for _ in range(10):
            A = random_matrix(rng, n)
            w = eigenvalues(A).values
            roots = np.roots(charpoly(A))
            assert match(w, roots) < 1e-8 * max(1.0, np.abs(roots).max())


def test_trace_and_determinant_suite():
    rng = np.random.default_rng(11)
    for t in range(TRIALS):
        n = 1 + t % 16
        A = random_matrix(rng, n)
        w = eigenvalues(A).values
        assert len(w) == n
        scale = np.linalg.norm(A)
        assert abs(w.sum() - np.trace(A)) <= 1e-10 * n * scale
        logdet = np.sum(np.log(np.abs(w)))
        assert abs(logdet - np.linalg.slogdet(A)[1]) <= 1e-9 * n


def test_similarity_invariance_suite():
    rng = np.random.default_rng(13)
    for t in range(TRIALS):
        n = 1 + t % 16
        A = random_matrix(rng, n)
        S = random_matrix(rng, n) + n * np.eye(n)
        B = np.linalg.solve(S, A @ S)
        wa = eigenvalues(A).values
        wb = eigenvalues(B).values
        cond = np.linalg.cond(S)
        assert match(wa, wb) <= 1e-10 * cond * np.linalg.norm(A)


def test_conjugation_suite():
    rng = np.random.default_rng(17)
    for t in range(TRIALS):
        n = 1 + t % 16
        A = random_matrix(rng, n)
        wa = eigenvalues(A).values
        wc = eigenvalues(A.conj()).values
        assert match(np.conj(wa), wc) <= 1e-10 * np.linalg.norm(A)
        # real matrices have conjugate-closed spectra
        R = A.real
        wr = eigenvalues(R).values
        assert match(wr, np.conj(wr)) <= 1e-10 * np.linalg.norm(R)


def test_agrees_with_lapack_on_a_larger_matrix():
    rng = np.random.default_rng(5)
    A = random_matrix(rng, 120)
    w = eigenvalues(A).values
    ref = eigenvalues(A, backend="lapack").values
    assert match(w, ref) < 1e-10 * np.linalg.norm(A)


def test_badly_scaled_matrix_benefits_from_balancing():
    rng = np.random.default_rng(2)
    D = np.diag(10.0 ** np.arange(-6, 6, 1.0))
    A = D @ random_matrix(rng, 12) @ np.linalg.inv(D)
    w = eigenvalues(A).values
    ref = eigenvalues(A, backend="lapack").values
    assert match(w, ref) < 1e-8 * np.abs(ref).max()


@pytest.mark.parametrize("n", [1, 2, 6])
def test_diagonal_and_triangular(n):
    d = np.arange(1, n + 1) * (1 + 0.5j)
    np.testing.assert_allclose(np.sort_complex(eigenvalues(np.diag(d)).values), np.sort_complex(d))
    T = np.triu(np.ones((n, n))) + np.diag(d)
    assert match(eigenvalues(T).values, d + 1) < 1e-12


def test_jordan_block_converges():
    J = np.diag(np.full(6, 2.0 + 1j)) + np.diag(np.ones(5), 1)
    w = eigenvalues(J).values
    # defective: eigenvalues are only determined to eps^(1/6)
    assert np.all(np.abs(w - (2 + 1j)) < 1e-2)


@given(st.integers(2, 12), st.integers(0, 2 ** 31))
def test_eigenvectors_satisfy_the_equation(n, seed):
    rng = np.random.default_rng(seed)
    A = random_matrix(rng, n)
    res = eigenvalues(A, vectors=True)
    r = A @ res.vectors - res.vectors * res.values
    assert np.max(np.linalg.norm(r, axis=0)) < 1e-9 * np.linalg.norm(A)
    V2 = eigenvectors(A, res.values[:2], backend="lapack")
    r2 = A @ V2 - V2 * res.values[:2]
    assert np.max(np.linalg.norm(r2, axis=0)) < 1e-9 * np.linalg.norm(A)


def test_rejects_non_finite_and_non_square():
    with pytest.raises(NonFinite):
        eigenvalues(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 2)), backend="nope")


def test_max_real_part():
    assert max_real_part(np.array([1 + 5j, -2.0, 3 - 1j])) == 3.0
