"""Linear MMSE channel estimation from contaminated training signals.

At BS l, the training signal of pilot t is

    y_t = sum_{k in cohort t} sqrt(P_k T) h_k + n_t,

with covariance Psi_t = sum_{k in cohort t} P_k T G_k R_k + sigma^2 I. The MMSE
estimate of h_k is sqrt(P_k T) G_k R_k Psi_t^{-1} y_t and has covariance
Phi_k = P_k T G_k^2 R_k Psi_t^{-1} R_k. Every BS estimates the channels of all VUEs.

"""

from __future__ import annotations

from typing import Optional

import numpy as np

import agingmimo


class Estimate:
    """MMSE estimate of the channel of one VUE at one BS."""

    def __init__(
        self,
        h_hat: np.ndarray,
        Phi: np.ndarray,
        covariance: np.ndarray,
        Psi: Optional[np.ndarray] = None,
    ) -> None:
        self.h_hat = h_hat
        """np.ndarray: estimate of h[0]."""

        self.Phi = Phi
        """np.ndarray: covariance of the estimate."""

        self.covariance = covariance
        """np.ndarray: covariance G R_0 of the channel."""

        self.Psi = Psi
        """np.ndarray, optional: covariance of the training signal of the pilot."""

    def error_covariance(self, rho_n: complex) -> np.ndarray:
        """Covariance Q[n] = G R_0 - |rho[n]|^2 Phi of the aged estimation error."""
        return self.covariance - abs(rho_n) ** 2 * self.Phi


def estimate_at_bs(
    covariances: np.ndarray,
    powers: np.ndarray,
    pilots: agingmimo.PilotAssignment,
    received: dict[int, np.ndarray],
    noise_power: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Estimates of all VUE channels at a single BS.

    Args:
        covariances (np.ndarray): G_k R_k of all VUEs, shape (K, M, M)
        powers (np.ndarray): transmit powers, shape (K,)
        pilots (PilotAssignment): pilot assignment
        received (dict[int, np.ndarray]): training signal per pilot in use
        noise_power (float): noise variance

    Returns:
        tuple[np.ndarray, np.ndarray]: estimates (K, M) and their covariances (K, M, M)

    Raises:
        SolveFailure: if a training covariance is not positive definite

    """
    K, M = covariances.shape[:2]
    h_hat = np.zeros((K, M), dtype=complex)
    Phi = np.zeros((K, M, M), dtype=complex)

    for pilot, cohort in pilots.cohort_of().items():
        weights = powers[cohort] * pilots.T
        Psi = np.tensordot(weights, covariances[cohort], axes=1) + noise_power * np.eye(M)
        solver = agingmimo.HermitianPDSolver(Psi)
        Psi_inv_y = solver.solve(received[pilot])
        for k, weight in zip(cohort, weights):
            Psi_inv_C = solver.solve(covariances[k])
            h_hat[k] = np.sqrt(weight) * covariances[k] @ Psi_inv_y
            Phi[k] = weight * covariances[k] @ Psi_inv_C
            Phi[k] = 0.5 * (Phi[k] + Phi[k].conj().T)

    return h_hat, Phi


def mmse_estimate(
    k: int,
    covariances: np.ndarray,
    powers: np.ndarray,
    pilots: agingmimo.PilotAssignment,
    received: dict[int, np.ndarray],
    noise_power: float,
) -> Estimate:
    """MMSE estimate of the channel of VUE k at a single BS.

    Args:
        k (int): VUE index
        covariances (np.ndarray): G R_0 of all VUEs at the BS, shape (K, M, M)
        powers (np.ndarray): transmit powers
        pilots (PilotAssignment): pilot assignment
        received (dict[int, np.ndarray]): training signals at the BS
        noise_power (float): noise variance

    Returns:
        Estimate: estimate, its covariance and the channel covariance

    """
    pilot = int(pilots.pilot_of[k])
    cohort = pilots.cohort(pilot)
    M = covariances.shape[1]
    weights = powers[cohort] * pilots.T
    Psi = np.tensordot(weights, covariances[cohort], axes=1) + noise_power * np.eye(M)
    solver = agingmimo.HermitianPDSolver(Psi)
    weight = powers[k] * pilots.T
    h_hat = np.sqrt(weight) * covariances[k] @ solver.solve(received[pilot])
    Phi = weight * covariances[k] @ solver.solve(covariances[k])
    return Estimate(h_hat, 0.5 * (Phi + Phi.conj().T), covariances[k], Psi)


class NetworkEstimates:
    """Estimates of all links of a drop realization, indexed [l, k]."""

    def __init__(
        self, h_hat: np.ndarray, Phi: np.ndarray, covariances: np.ndarray
    ) -> None:
        self.h_hat = h_hat
        """np.ndarray: estimates with shape (L, K, M)."""

        self.Phi = Phi
        """np.ndarray: estimate covariances with shape (L, K, M, M)."""

        self.covariances = covariances
        """np.ndarray: channel covariances G R_0 with shape (L, K, M, M)."""

    def estimate(self, k: int, l: int) -> Estimate:
        return Estimate(self.h_hat[l, k], self.Phi[l, k], self.covariances[l, k])


def estimate_network(
    drop: agingmimo.NetworkDrop,
    h0: np.ndarray,
    seeds: agingmimo.SeedTree,
    key: tuple,
    received: Optional[list[dict[int, np.ndarray]]] = None,
) -> NetworkEstimates:
    """Training phase of a drop realization: pilot reception and estimation at every BS.

    Args:
        drop (NetworkDrop): network drop
        h0 (np.ndarray): channels at the training reference, shape (L, K, M)
        seeds (SeedTree): seed tree
        key (tuple): prefix of the pilot noise substreams; BS l draws from
            (STAGE_PILOT_NOISE, *key, l)
        received (list of dict, optional): training signals per BS overriding the
            simulated reception

    Returns:
        NetworkEstimates: estimates of all links

    """
    covariances = drop.covariances()
    L, K, M = h0.shape
    h_hat = np.zeros((L, K, M), dtype=complex)
    Phi = np.zeros((L, K, M, M), dtype=complex)
    for l in range(L):
        if received is None:
            rng = seeds.rng(agingmimo.seeding.STAGE_PILOT_NOISE, *key, l)
            y = agingmimo.receive_pilots(
                h0[l], drop.powers, drop.pilots, drop.noise_power, rng
            )
        else:
            y = received[l]
        h_hat[l], Phi[l] = estimate_at_bs(
            covariances[l], drop.powers, drop.pilots, y, drop.noise_power
        )
    return NetworkEstimates(h_hat, Phi, covariances)
