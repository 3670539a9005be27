"""Monte Carlo estimation of the area spectral efficiency as function of the block length.

For every drop and channel realization, the per-symbol spectral efficiencies of
all VUEs are evaluated once up to the largest block length of interest. Block
spectral efficiencies of all block lengths follow from cumulative sums, so the
curves over C are evaluated with common random numbers.

"""

from __future__ import annotations

import logging
from concurrent.futures import Executor
from typing import Literal, Optional, Sequence
from warnings import warn

import numpy as np

import agingmimo

logger = logging.getLogger(__name__)


class SimulationSetup:
    """System parameters and Monte Carlo sizes shared by all sweep points."""

    def __init__(
        self,
        array: agingmimo.ArrayGeometry,
        master_seed: int = 0,
        n_drops: int = 20,
        n_channel: int = 10,
        Ts: float = agingmimo.constants.SYMBOL_PERIOD,
        T: int = agingmimo.constants.PILOT_LENGTH,
        power: float = agingmimo.constants.TRANSMIT_POWER,
        noise_power: float = 1e-16,
        stride: int = 1,
        correlation_model: Literal["vonmises", "legacy"] = "vonmises",
        non_aging: bool = False,
        density: Optional[dict[str, float]] = None,
        verbose: bool = False,
    ) -> None:
        if n_drops < 1 or n_channel < 1:
            raise agingmimo.ConfigError("Monte Carlo sizes must be positive.")

        self.array = array
        """ArrayGeometry: BS array and carrier."""

        self.seeds = agingmimo.SeedTree(master_seed)
        """SeedTree: source of all random substreams."""

        self.n_drops = int(n_drops)
        """int: number of network drops per point."""

        self.n_channel = int(n_channel)
        """int: number of channel realizations per drop."""

        self.Ts = float(Ts)
        """float: symbol period in s."""

        self.T = int(T)
        """int: pilot length."""

        self.power = float(power)
        """float: transmit power in W."""

        self.noise_power = float(noise_power)
        """float: noise variance in W."""

        self.stride = int(stride)
        """int: decimation of the symbol axis."""

        self.correlation_model = correlation_model
        """str: "vonmises" or "legacy"."""

        self.non_aging = non_aging
        """bool: flag replacing the temporal correlation by one."""

        self.density = dict(agingmimo.DENSITY) if density is None else dict(density)
        """dict: vehicle density per scenario."""

        self.verbose = verbose
        """bool: flag controlling per-drop progress messages."""

        self.layouts = {
            scenario: agingmimo.build_layout(scenario)
            for scenario in agingmimo.SCENARIOS
        }
        """dict: layout per scenario."""

    def generate_drop(self, point: agingmimo.SweepPoint, drop: int) -> agingmimo.NetworkDrop:
        """Drop number `drop` of the given point."""
        rng = self.seeds.rng(agingmimo.seeding.STAGE_DROP, *point.key(), drop)
        return agingmimo.generate_drop(
            self.layouts[point.scenario],
            self.array,
            point.sigma_T_deg,
            point.sigma_R_deg,
            point.v,
            self.density[point.scenario],
            rng,
            Ts=self.Ts,
            T=self.T,
            power=self.power,
            noise_power=self.noise_power,
            correlation_model=self.correlation_model,
            non_aging=self.non_aging,
        )


def drop_samples(
    point: agingmimo.SweepPoint,
    setup: SimulationSetup,
    drop_index: int,
    n_max: int,
    combiners: Sequence[str] = (),
) -> dict[str, np.ndarray]:
    """Sum over VUEs of the per-symbol spectral efficiency for all realizations of a drop.

    Args:
        point (SweepPoint): operating point
        setup (SimulationSetup): setup
        drop_index (int): drop number
        n_max (int): last data symbol
        combiners (sequence of str): combiners to evaluate, defaults to the one of
            the point

    Returns:
        dict: combiner name to array with shape (n_channel, n_max)

    """
    combiners = tuple(combiners) if len(combiners) > 0 else (point.combiner,)
    drop = setup.generate_drop(point, drop_index)
    symbols = agingmimo.evaluated_symbols(n_max, setup.stride)
    samples = {name: np.zeros((setup.n_channel, n_max)) for name in combiners}

    for r in range(setup.n_channel):
        key = (*point.key(), drop_index, r)
        realization = drop.realize(setup.seeds, key)
        estimates = agingmimo.estimate_network(realization, realization.h0, setup.seeds, key)
        for name in combiners:
            se = agingmimo.network_symbol_se(realization, estimates, name, symbols)
            samples[name][r] = agingmimo.fill_nearest(se.sum(axis=0), symbols, n_max)

    if setup.verbose:
        logger.info(f"{point}: drop {drop_index} with {drop.K} VUEs done.")
    return samples


def drop_user_se(
    point: agingmimo.SweepPoint,
    setup: SimulationSetup,
    drop_index: int,
    C: int,
) -> tuple[agingmimo.NetworkDrop, np.ndarray]:
    """Block spectral efficiency of every VUE for all realizations of a drop.

    Args:
        point (SweepPoint): operating point
        setup (SimulationSetup): setup
        drop_index (int): drop number
        C (int): block length

    Returns:
        tuple: drop and block spectral efficiencies with shape (n_channel, K)

    """
    agingmimo.check_block(C, setup.T)
    n_max = C - setup.T
    drop = setup.generate_drop(point, drop_index)
    symbols = agingmimo.evaluated_symbols(n_max, setup.stride)
    block = np.zeros((setup.n_channel, drop.K))

    for r in range(setup.n_channel):
        key = (*point.key(), drop_index, r)
        realization = drop.realize(setup.seeds, key)
        estimates = agingmimo.estimate_network(realization, realization.h0, setup.seeds, key)
        se = agingmimo.network_symbol_se(realization, estimates, point.combiner, symbols)
        full = agingmimo.fill_nearest(se, symbols, n_max)
        block[r] = agingmimo.cumulative_block_se(full, np.array([C]), setup.T)[:, 0]

    if setup.verbose:
        logger.info(f"{point}: drop {drop_index} with {drop.K} VUEs done.")
    return drop, block


def point_samples(
    point: agingmimo.SweepPoint,
    setup: SimulationSetup,
    n_max: int,
    executor: Optional[Executor] = None,
    combiners: Sequence[str] = (),
) -> dict[str, np.ndarray]:
    """Per-symbol sum spectral efficiency of all drops and realizations.

    Drops are distributed over the executor, if provided, and gathered in drop
    order.

    Args:
        point (SweepPoint): operating point
        setup (SimulationSetup): setup
        n_max (int): last data symbol
        executor (Executor, optional): executor for the drops
        combiners (sequence of str): combiners to evaluate on the same
            realizations, defaults to the one of the point

    Returns:
        dict: combiner name to samples with shape (n_drops * n_channel, n_max)

    """
    combiners = tuple(combiners) if len(combiners) > 0 else (point.combiner,)
    drops = range(setup.n_drops)
    if executor is None:
        results = [drop_samples(point, setup, d, n_max, combiners) for d in drops]
    else:
        results = list(
            executor.map(lambda d: drop_samples(point, setup, d, n_max, combiners), drops)
        )
    return {
        name: np.concatenate([result[name] for result in results], axis=0)
        for name in combiners
    }


def ase_statistics(
    samples: np.ndarray, c_grid: np.ndarray, T: int, L: int
) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean and standard error of the ASE over the block grid.

    Args:
        samples (np.ndarray): per-symbol sum spectral efficiencies, shape (N, n_max)
        c_grid (np.ndarray): block lengths
        T (int): pilot length
        L (int): number of cells

    Returns:
        tuple: mean and standard error per block length

    """
    ase = agingmimo.cumulative_block_se(samples, c_grid, T) / L
    mean = np.mean(ase, axis=0)
    if ase.shape[0] > 1:
        stderr = np.std(ase, axis=0, ddof=1) / np.sqrt(ase.shape[0])
    else:
        stderr = np.zeros_like(mean)
    return mean, stderr


def find_copt(c_grid: np.ndarray, ase: np.ndarray) -> int:
    """Block length maximizing the ASE.

    Args:
        c_grid (np.ndarray): block lengths
        ase (np.ndarray): ASE per block length

    Returns:
        int: maximizer; ties go to the smallest block length

    Raises:
        EmptyCurve: for fewer than three grid points

    """
    c_grid = np.asarray(c_grid)
    ase = np.asarray(ase)
    if c_grid.size < 3 or c_grid.size != ase.size:
        raise agingmimo.EmptyCurve(f"Need at least 3 grid points, got {c_grid.size}.")
    order = np.argsort(c_grid, kind="stable")
    c_sorted, ase_sorted = c_grid[order], ase[order]
    index = int(np.argmax(ase_sorted))
    if index in (0, c_sorted.size - 1):
        warn(f"ASE maximum at the grid boundary C = {c_sorted[index]}.")
    return int(c_sorted[index])


class AseCurve:
    """ASE over block lengths at one sweep point."""

    def __init__(
        self,
        point: agingmimo.SweepPoint,
        c_grid: np.ndarray,
        ase_mean: np.ndarray,
        ase_stderr: np.ndarray,
    ) -> None:
        self.point = point
        """SweepPoint: operating point."""

        self.c_grid = np.asarray(c_grid, dtype=int)
        """np.ndarray: block lengths."""

        self.ase_mean = ase_mean
        """np.ndarray: sample mean of the ASE."""

        self.ase_stderr = ase_stderr
        """np.ndarray: standard error of the ASE."""

        self.c_opt = find_copt(self.c_grid, self.ase_mean)
        """int: maximizing block length."""

    def ase_at(self, C: int) -> tuple[float, float]:
        index = int(np.flatnonzero(self.c_grid == C)[0])
        return float(self.ase_mean[index]), float(self.ase_stderr[index])


def ase_curves(
    point: agingmimo.SweepPoint,
    setup: SimulationSetup,
    c_grid: np.ndarray,
    combiners: Sequence[str] = (),
    refine: Optional[tuple[int, int]] = (5, 40),
    executor: Optional[Executor] = None,
) -> dict[str, AseCurve]:
    """ASE curves of several combiners, refined around each coarse maximizer.

    All combiners share the drops and channel realizations of the point.

    Args:
        point (SweepPoint): operating point; its combiner is used if no combiners
            are given
        setup (SimulationSetup): setup
        c_grid (np.ndarray): coarse block lengths, all above T
        combiners (sequence of str): combiners to evaluate
        refine (tuple of int, optional): step and half-width of the refinement;
            None disables it
        executor (Executor, optional): executor for the drops

    Returns:
        dict: combiner name to curve on the (refined) grid

    """
    c_grid = np.asarray(c_grid, dtype=int)
    for C in (np.min(c_grid), np.max(c_grid)):
        agingmimo.check_block(int(C), setup.T)
    n_max = int(np.max(c_grid)) - setup.T
    samples = point_samples(point, setup, n_max, executor, combiners)
    L = setup.layouts[point.scenario].L

    curves = {}
    for name, combiner_samples in samples.items():
        grid = c_grid
        mean, stderr = ase_statistics(combiner_samples, grid, setup.T, L)
        if refine is not None:
            c_opt = find_copt(grid, mean)
            grid = agingmimo.refine_grid(grid, c_opt, setup.T, *refine)
            mean, stderr = ase_statistics(combiner_samples, grid, setup.T, L)
        curve_point = agingmimo.SweepPoint(
            point.scenario, name, point.sigma_T_deg, point.sigma_R_deg, point.v
        )
        curves[name] = AseCurve(curve_point, grid, mean, stderr)
        logger.info(f"{curve_point}: ASE curve on {grid.size} block lengths done.")
    return curves


def ase_curve(
    point: agingmimo.SweepPoint,
    setup: SimulationSetup,
    c_grid: np.ndarray,
    refine: Optional[tuple[int, int]] = (5, 40),
    executor: Optional[Executor] = None,
) -> AseCurve:
    """ASE curve of a point on a coarse grid, refined around the coarse maximizer.

    Args:
        point (SweepPoint): operating point
        setup (SimulationSetup): setup
        c_grid (np.ndarray): coarse block lengths, all above T
        refine (tuple of int, optional): step and half-width of the refinement;
            None disables it
        executor (Executor, optional): executor for the drops

    Returns:
        AseCurve: curve on the (refined) grid

    """
    curves = ase_curves(point, setup, c_grid, (point.combiner,), refine, executor)
    return curves[point.combiner]


def ase_at(
    point: agingmimo.SweepPoint,
    C: int,
    setup: SimulationSetup,
    executor: Optional[Executor] = None,
) -> tuple[float, float]:
    """Mean ASE and its standard error at a single block length.

    Args:
        point (SweepPoint): operating point
        C (int): block length, above T
        setup (SimulationSetup): setup, fixing Monte Carlo sizes and master seed
        executor (Executor, optional): executor for the drops

    Returns:
        tuple: mean and standard error

    """
    agingmimo.check_block(C, setup.T)
    samples = point_samples(point, setup, C - setup.T, executor)[point.combiner]
    L = setup.layouts[point.scenario].L
    mean, stderr = ase_statistics(samples, np.array([C]), setup.T, L)
    return float(mean[0]), float(stderr[0])
