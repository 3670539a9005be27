"""Dense Hermitian linear algebra: square roots and positive definite solves."""

import numpy as np
import scipy.linalg

import agingmimo

HERMITIAN_TOLERANCE: float = 1e-10
"""float: Admissible absolute deviation from Hermitian symmetry (largest entry of R - R^H)."""

CLIP_TOLERANCE: float = 1e-12
"""float: Negative eigenvalues above -CLIP_TOLERANCE * lambda_max are clipped to zero."""


def check_hermitian(R: np.ndarray, tol: float = HERMITIAN_TOLERANCE) -> None:
    """Raise DomainError if (a stack of) matrices is not Hermitian.

    Args:
        R (np.ndarray): matrix or stack of matrices with shape (..., M, M)
        tol (float): absolute tolerance on the entries of R - R^H

    """
    if R.ndim < 2 or R.shape[-1] != R.shape[-2]:
        raise agingmimo.DomainError(f"Expected square matrices, got shape {R.shape}.")
    deviation = np.max(np.abs(R - np.conj(np.swapaxes(R, -1, -2))), initial=0.0)
    if deviation > tol:
        raise agingmimo.DomainError(f"Matrix not Hermitian, deviation {deviation:.3e}.")


def hermitian_psd_sqrt(R: np.ndarray, clip: float = CLIP_TOLERANCE) -> np.ndarray:
    """Hermitian square root S of a Hermitian positive semidefinite matrix R.

    The root satisfies S S^H = R. Eigenvalues in [-clip * lambda_max, 0) are
    treated as rounding noise and set to zero. Stacks of matrices with shape
    (..., M, M) are processed at once.

    Args:
        R (np.ndarray): Hermitian PSD matrix (or stack)
        clip (float): relative clipping tolerance

    Returns:
        np.ndarray: Hermitian square root, same shape as R

    Raises:
        DomainError: if R is not Hermitian
        NotPSD: if an eigenvalue lies below the clipping tolerance

    """
    R = np.asarray(R, dtype=complex)
    check_hermitian(R)

    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (R + np.conj(np.swapaxes(R, -1, -2))))
    lambda_max = np.maximum(eigenvalues[..., -1], 0.0)
    threshold = -clip * lambda_max
    if np.any(eigenvalues[..., 0] < threshold):
        raise agingmimo.NotPSD(
            f"Smallest eigenvalue {np.min(eigenvalues[..., 0]):.3e} below tolerance."
        )
    root = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (eigenvectors * root[..., None, :]) @ np.conj(
        np.swapaxes(eigenvectors, -1, -2)
    )


class HermitianPDSolver:
    """Cholesky based solver for Hermitian positive definite systems."""

    def __init__(self, A: np.ndarray) -> None:
        self.A = A
        """np.ndarray: system matrix."""

        try:
            self.factor = scipy.linalg.cho_factor(A, lower=True, check_finite=True)
            """tuple: Cholesky factor as returned by scipy.linalg.cho_factor."""
        except (np.linalg.LinAlgError, ValueError) as e:
            raise agingmimo.SolveFailure(f"Cholesky factorization failed: {e}") from e

    def solve(self, b: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(self.factor, b)
