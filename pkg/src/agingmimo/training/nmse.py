"""Normalized mean squared error of aged channel estimates."""

from __future__ import annotations

from typing import Sequence

import numpy as np

import agingmimo


def nmse(
    rho_n: complex,
    zeta: float,
    R: np.ndarray,
    contaminators: Sequence[tuple[float, np.ndarray]] = (),
) -> float:
    """NMSE of the aged MMSE estimate of a channel.

    Evaluates 1 - |rho|^2 zeta tr(R Theta^{-1} R) / tr(R) with
    Theta = zeta R + I + sum_j zeta_j R_j, i.e. the training covariance normalized
    by the noise variance.

    Args:
        rho_n (complex): temporal correlation at the symbol of interest
        zeta (float): training SNR P T G / sigma^2 of the VUE
        R (np.ndarray): spatial correlation matrix of the VUE
        contaminators (sequence of (float, np.ndarray)): training SNR and spatial
            correlation matrix of each pilot-sharing VUE

    Returns:
        float: NMSE in [0, 1]

    """
    M = R.shape[0]
    Theta = zeta * R + np.eye(M)
    for zeta_j, R_j in contaminators:
        Theta = Theta + zeta_j * R_j
    solver = agingmimo.HermitianPDSolver(Theta)
    captured = np.real(np.trace(R @ solver.solve(R)))
    value = 1 - abs(rho_n) ** 2 * zeta * captured / np.real(np.trace(R))
    return float(np.clip(value, 0.0, 1.0))


def nmse_npc_bound(rho_n: complex, zeta: float, R: np.ndarray) -> float:
    """NMSE without pilot contamination, in terms of the eigenvalues of R.

    1 - |rho|^2 zeta / tr(R) sum_m lambda_m^2 / (zeta lambda_m + 1). Any pilot
    contamination can only increase the NMSE beyond this value.

    Args:
        rho_n (complex): temporal correlation
        zeta (float): training SNR
        R (np.ndarray): spatial correlation matrix

    Returns:
        float: lower bound of the NMSE

    """
    eigenvalues = np.clip(np.linalg.eigvalsh(R), 0.0, None)
    captured = np.sum(eigenvalues**2 / (zeta * eigenvalues + 1))
    value = 1 - abs(rho_n) ** 2 * zeta * captured / np.sum(eigenvalues)
    return float(np.clip(value, 0.0, 1.0))


def training_snr(power: float, T: int, gain: float, noise_power: float) -> float:
    """Training SNR zeta = P T G / sigma^2."""
    return power * T * gain / noise_power
