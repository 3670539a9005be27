"""Spectral efficiency of blocks with aged channel estimates.

A coherence block of C symbols starts with T pilot symbols, followed by C - T
data symbols. The block spectral efficiency of a VUE is

    SE(C) = 1 / C * sum_{n=1}^{C-T} log2(1 + SINR[n]),

and the area spectral efficiency is the sum over VUEs divided by the number of
cells. Since the per-symbol terms do not depend on C, spectral efficiencies of
all block lengths are obtained from cumulative sums of one evaluation up to the
largest block.

"""

from __future__ import annotations

from typing import Literal, Sequence, Union

import numpy as np

import agingmimo


class SeResult:
    """Spectral efficiency of one VUE over one block."""

    def __init__(self, per_symbol_se: np.ndarray, C: int, T: int) -> None:
        self.per_symbol_se = per_symbol_se
        """np.ndarray: log2(1 + SINR[n]) for n = 1, ..., C - T."""

        self.C = C
        """int: block length."""

        self.T = T
        """int: pilot length."""

        self.block_se = float(np.sum(per_symbol_se) / C)
        """float: block spectral efficiency in bit/s/Hz."""


def check_block(C: int, T: int) -> None:
    if C <= T:
        raise agingmimo.ConfigError(
            f"Block length {C} leaves no data symbols after {T} pilots."
        )


def evaluated_symbols(n_max: int, stride: int = 1) -> np.ndarray:
    """Data symbol indices 1, 1 + stride, ..., always including n_max.

    Args:
        n_max (int): last data symbol
        stride (int): decimation of the symbol axis

    Returns:
        np.ndarray: increasing symbol indices

    """
    if stride < 1:
        raise agingmimo.ConfigError(f"Stride must be positive, got {stride}.")
    if n_max < 1:
        return np.zeros(0, dtype=int)
    symbols = np.arange(1, n_max + 1, stride)
    if symbols[-1] != n_max:
        symbols = np.append(symbols, n_max)
    return symbols


def fill_nearest(values: np.ndarray, symbols: np.ndarray, n_max: int) -> np.ndarray:
    """Extend values at evaluated symbols to all symbols 1..n_max.

    Each symbol takes the value of the nearest evaluated symbol; ties go to the
    earlier one.

    Args:
        values (np.ndarray): values with trailing axis matching symbols
        symbols (np.ndarray): evaluated symbol indices
        n_max (int): last symbol

    Returns:
        np.ndarray: values with trailing axis of length n_max

    """
    n = np.arange(1, n_max + 1)
    right = np.clip(np.searchsorted(symbols, n), 0, symbols.size - 1)
    left = np.clip(right - 1, 0, symbols.size - 1)
    use_left = np.abs(n - symbols[left]) <= np.abs(symbols[right] - n)
    nearest = np.where(use_left, left, right)
    return values[..., nearest]


def network_symbol_se(
    drop: agingmimo.NetworkDrop,
    estimates: agingmimo.NetworkEstimates,
    combiner: Literal["mr", "mmse"],
    symbols: np.ndarray,
) -> np.ndarray:
    """log2(1 + SINR[n]) of every VUE at its serving BS for the given symbols.

    Args:
        drop (NetworkDrop): network drop
        estimates (NetworkEstimates): estimates of the realization
        combiner (str): "mr" or "mmse"
        symbols (np.ndarray): data symbol indices

    Returns:
        np.ndarray: spectral efficiencies with shape (K, len(symbols))

    """
    rho = drop.temporal_correlation(symbols)
    se = np.zeros((drop.K, symbols.size))
    for l in range(drop.L):
        users = np.flatnonzero(drop.serving == l)
        if users.size == 0:
            continue
        cache = agingmimo.ErrorCovarianceCache(
            estimates.covariances[l], estimates.Phi[l], drop.powers, drop.noise_power
        )
        for i, n in enumerate(symbols):
            ctx = agingmimo.SymbolContext(
                n, rho[l, :, i], estimates.h_hat[l], drop.powers, cache(rho[l, :, i])
            )
            V = agingmimo.combiners(ctx, users, combiner)
            se[users, i] = np.log2(1 + agingmimo.sinrs(ctx, V, users))
    return se


def block_se(
    k: int,
    drop: agingmimo.NetworkDrop,
    estimates: agingmimo.NetworkEstimates,
    combiner: Literal["mr", "mmse"],
    C: int,
    stride: int = 1,
) -> SeResult:
    """Block spectral efficiency of VUE k at its serving BS.

    Args:
        k (int): VUE index
        drop (NetworkDrop): network drop
        estimates (NetworkEstimates): estimates of the realization
        combiner (str): "mr" or "mmse"
        C (int): block length
        stride (int): symbol decimation; skipped symbols take the value of the
            nearest evaluated one

    Returns:
        SeResult: per-symbol and block spectral efficiency

    Raises:
        ConfigError: if C <= T

    """
    check_block(C, drop.T)
    n_max = C - drop.T
    symbols = evaluated_symbols(n_max, stride)
    se = network_symbol_se(drop, estimates, combiner, symbols)
    return SeResult(fill_nearest(se[k], symbols, n_max), C, drop.T)


def cumulative_block_se(per_symbol_se: np.ndarray, C_grid: np.ndarray, T: int) -> np.ndarray:
    """Block spectral efficiencies for several block lengths at once.

    Args:
        per_symbol_se (np.ndarray): values for n = 1..n_max, shape (..., n_max)
        C_grid (np.ndarray): block lengths with T < C <= n_max + T
        T (int): pilot length

    Returns:
        np.ndarray: block spectral efficiency, shape (..., len(C_grid))

    """
    C_grid = np.asarray(C_grid, dtype=int)
    for C in C_grid:
        check_block(int(C), T)
    partial = np.concatenate(
        [np.zeros(per_symbol_se.shape[:-1] + (1,)), np.cumsum(per_symbol_se, axis=-1)],
        axis=-1,
    )
    return partial[..., C_grid - T] / C_grid


def ase(
    se_per_user: Union[Sequence[float], np.ndarray], L: int
) -> Union[float, np.ndarray]:
    """Area spectral efficiency, the sum of user spectral efficiencies per cell.

    Args:
        se_per_user (sequence or np.ndarray): block spectral efficiencies of the
            VUEs along the last axis; leading axes (e.g. realizations) are kept
        L (int): number of cells

    Returns:
        float or np.ndarray: ASE in bit/s/Hz/cell; zero without users

    Raises:
        DomainError: if L < 1

    """
    if L < 1:
        raise agingmimo.DomainError(f"Number of cells must be positive, got {L}.")
    values = np.asarray(se_per_user, dtype=float)
    return (np.sum(values, axis=-1) / L)[()]


def drop_ase(
    drop: agingmimo.NetworkDrop,
    estimates: agingmimo.NetworkEstimates,
    combiner: Literal["mr", "mmse"],
    C: int,
    stride: int = 1,
) -> float:
    """Area spectral efficiency of a drop realization.

    Args:
        drop (NetworkDrop): network drop
        estimates (NetworkEstimates): estimates of the realization
        combiner (str): "mr" or "mmse"
        C (int): block length
        stride (int): symbol decimation

    Returns:
        float: ASE in bit/s/Hz/cell

    """
    check_block(C, drop.T)
    n_max = C - drop.T
    symbols = evaluated_symbols(n_max, stride)
    se = fill_nearest(network_symbol_se(drop, estimates, combiner, symbols), symbols, n_max)
    return float(ase(cumulative_block_se(se, np.array([C]), drop.T)[:, 0], drop.L))
