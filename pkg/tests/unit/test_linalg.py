"""Unit tests for Hermitian square roots and positive definite solves."""

import numpy as np
import pytest

import agingmimo


def _random_psd(rng, M, rank):
    A = rng.standard_normal((M, rank)) + 1j * rng.standard_normal((M, rank))
    return A @ np.conj(A.T)


@pytest.mark.parametrize("rank", [1, 3, 6])
def test_hermitian_psd_sqrt(rank):
    rng = np.random.default_rng(7)
    R = _random_psd(rng, 6, rank)
    S = agingmimo.hermitian_psd_sqrt(R)
    assert np.allclose(S, np.conj(S.T))
    assert np.allclose(S @ np.conj(S.T), R, atol=1e-10 * np.linalg.norm(R))


def test_hermitian_psd_sqrt_batched():
    rng = np.random.default_rng(8)
    R = np.stack([_random_psd(rng, 4, 2), _random_psd(rng, 4, 4)])
    S = agingmimo.hermitian_psd_sqrt(R)
    for i in range(2):
        assert np.allclose(S[i], agingmimo.hermitian_psd_sqrt(R[i]))


def test_hermitian_psd_sqrt_errors():
    with pytest.raises(agingmimo.NotPSD):
        agingmimo.hermitian_psd_sqrt(np.diag([1.0, -0.5]))
    with pytest.raises(agingmimo.DomainError):
        agingmimo.hermitian_psd_sqrt(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(agingmimo.DomainError):
        agingmimo.check_hermitian(np.ones((2, 3)))


def test_hermitian_tolerance_is_absolute():
    R = np.array([[1e3, 5.0], [5.0 + 2e-10, 1e3]])
    with pytest.raises(agingmimo.DomainError):
        agingmimo.check_hermitian(R)
    agingmimo.check_hermitian(np.array([[1e3, 5.0], [5.0 + 5e-11, 1e3]]))
    agingmimo.check_hermitian(np.array([[1e-12, 0.5e-12], [0.0, 1e-12]]))


def test_rounding_noise_is_clipped():
    R = np.diag([1.0, -1e-14])
    S = agingmimo.hermitian_psd_sqrt(R)
    assert np.allclose(S, np.diag([1.0, 0.0]))


def test_hermitian_pd_solver():
    rng = np.random.default_rng(9)
    A = _random_psd(rng, 5, 5) + np.eye(5)
    b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    x = agingmimo.HermitianPDSolver(A).solve(b)
    assert np.allclose(A @ x, b)

    with pytest.raises(agingmimo.SolveFailure):
        agingmimo.HermitianPDSolver(np.diag([1.0, -1.0]))
