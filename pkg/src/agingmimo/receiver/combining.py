"""Receive combining and instantaneous SINR under channel aging.

At data symbol n, BS l only knows the estimates taken at the training reference.
Writing h_k[n] = rho_k[n] h_hat_k + e_k[n], the aged estimation error e_k[n] has
covariance Q_k[n] = G_k R_k - |rho_k[n]|^2 Phi_k. With

    E[n] = sum_k P_k Q_k[n] + sigma^2 I,

the SINR of VUE k with combiner v reads

    P_k |rho_k v^H h_hat_k|^2 / (sum_{j != k} P_j |rho_j v^H h_hat_j|^2 + v^H E[n] v).

"""

from __future__ import annotations

from typing import Literal, Optional, Union

import numpy as np

import agingmimo


class ErrorCovarianceCache:
    """Incremental evaluation of E[n] at one BS.

    The aging-independent part sum_k P_k G_k R_k + sigma^2 I is assembled once;
    per symbol, only the weighted sum of the estimate covariances is updated.

    """

    def __init__(
        self,
        covariances: np.ndarray,
        Phi: np.ndarray,
        powers: np.ndarray,
        noise_power: float,
    ) -> None:
        M = covariances.shape[-1]
        self.static = np.tensordot(powers, covariances, axes=1) + noise_power * np.eye(M)
        """np.ndarray: sum_k P_k G_k R_k + sigma^2 I."""

        self.Phi = Phi
        """np.ndarray: estimate covariances, shape (K, M, M)."""

        self.powers = powers
        """np.ndarray: transmit powers."""

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        """E[n] for the temporal correlations rho of all VUEs at symbol n."""
        weights = self.powers * np.abs(rho) ** 2
        E = self.static - np.tensordot(weights, self.Phi, axes=1)
        return 0.5 * (E + E.conj().T)


def assemble_error_covariance(
    rho: np.ndarray,
    covariances: np.ndarray,
    Phi: np.ndarray,
    powers: np.ndarray,
    noise_power: float,
) -> np.ndarray:
    """E[n] assembled from the individual error covariances Q_k[n].

    Args:
        rho (np.ndarray): temporal correlations, shape (K,)
        covariances (np.ndarray): G_k R_k, shape (K, M, M)
        Phi (np.ndarray): estimate covariances, shape (K, M, M)
        powers (np.ndarray): transmit powers, shape (K,)
        noise_power (float): noise variance

    Returns:
        np.ndarray: M x M Hermitian matrix

    """
    M = covariances.shape[-1]
    E = noise_power * np.eye(M, dtype=complex)
    for k in range(rho.size):
        Q = covariances[k] - abs(rho[k]) ** 2 * Phi[k]
        E = E + powers[k] * Q
    return E


class SymbolContext:
    """Everything BS l knows at data symbol n."""

    def __init__(
        self,
        n: int,
        rho: np.ndarray,
        h_hat: np.ndarray,
        powers: np.ndarray,
        E: np.ndarray,
    ) -> None:
        self.n = int(n)
        """int: data symbol index."""

        self.rho = np.asarray(rho, dtype=complex)
        """np.ndarray: rho_k[n] of all VUEs, shape (K,)."""

        self.h_hat = h_hat
        """np.ndarray: estimates of all VUEs, shape (K, M)."""

        self.powers = powers
        """np.ndarray: transmit powers, shape (K,)."""

        self.E = E
        """np.ndarray: aged error covariance plus noise, shape (M, M)."""

    @property
    def effective_gains(self) -> np.ndarray:
        """np.ndarray: P_k |rho_k[n]|^2."""
        return self.powers * np.abs(self.rho) ** 2

    def mmse_matrix(self) -> np.ndarray:
        """sum_k P_k |rho_k|^2 h_hat_k h_hat_k^H + E[n]."""
        weighted = self.h_hat.T * self.effective_gains
        return weighted @ self.h_hat.conj() + self.E


def mr_combiner(estimate: Union[agingmimo.Estimate, np.ndarray]) -> np.ndarray:
    """Maximum ratio combiner, i.e. the channel estimate itself."""
    if isinstance(estimate, agingmimo.Estimate):
        return estimate.h_hat
    return np.asarray(estimate)


def mmse_combiner(k: int, ctx: SymbolContext) -> np.ndarray:
    """MMSE combiner P_k (sum_j P_j |rho_j|^2 h_hat_j h_hat_j^H + E[n])^{-1} h_hat_k.

    Args:
        k (int): VUE index
        ctx (SymbolContext): symbol context

    Returns:
        np.ndarray: combining vector

    Raises:
        SolveFailure: if the system matrix is not positive definite

    """
    solver = agingmimo.HermitianPDSolver(ctx.mmse_matrix())
    return ctx.powers[k] * solver.solve(ctx.h_hat[k])


def combiners(
    ctx: SymbolContext,
    users: np.ndarray,
    kind: Literal["mr", "mmse"],
) -> np.ndarray:
    """Combining vectors of several VUEs as columns, shape (M, len(users))."""
    if kind == "mr":
        return ctx.h_hat[users].T
    elif kind == "mmse":
        solver = agingmimo.HermitianPDSolver(ctx.mmse_matrix())
        return solver.solve(ctx.h_hat[users].T) * ctx.powers[users]
    else:
        raise agingmimo.ConfigError(f"Unknown combiner {kind}.")


def sinr(k: int, v: np.ndarray, ctx: SymbolContext) -> float:
    """Instantaneous SINR of VUE k with combiner v.

    Args:
        k (int): VUE index
        v (np.ndarray): combining vector
        ctx (SymbolContext): symbol context

    Returns:
        float: non-negative SINR

    Raises:
        ZeroVector: if v vanishes

    """
    if not np.any(v):
        raise agingmimo.ZeroVector(f"Combiner of VUE {k} vanishes.")
    return float(sinrs(ctx, v[:, None], np.array([k]))[0])


def sinrs(
    ctx: SymbolContext, V: np.ndarray, users: np.ndarray, E: Optional[np.ndarray] = None
) -> np.ndarray:
    """SINR of several VUEs with combiners given as columns of V.

    Combiners which vanish yield zero SINR.

    Args:
        ctx (SymbolContext): symbol context
        V (np.ndarray): combiners, shape (M, len(users))
        users (np.ndarray): VUE indices
        E (np.ndarray, optional): overrides ctx.E

    Returns:
        np.ndarray: SINR per user

    """
    E = ctx.E if E is None else E
    users = np.asarray(users, dtype=int)
    received = np.abs(V.conj().T @ ctx.h_hat.T) ** 2 * ctx.effective_gains
    signal = received[np.arange(users.size), users]
    interference = np.sum(received, axis=1) - signal
    noise = np.real(np.sum(V.conj() * (E @ V), axis=0))
    denominator = interference + noise
    positive = denominator > 0
    return np.where(positive, signal / np.where(positive, denominator, 1.0), 0.0)
