"""Comparison of the optimized block length with a coherence-time rule of thumb."""

from __future__ import annotations

from concurrent.futures import Executor
from typing import Optional

import numpy as np

import agingmimo


def coherence_block(
    v: float,
    f_c: float = agingmimo.constants.CARRIER_FREQUENCY,
    Ts: float = agingmimo.constants.SYMBOL_PERIOD,
) -> int:
    """Block length lambda_c / (4 v Ts), rounded half up.

    Args:
        v (float): speed in m/s
        f_c (float): carrier frequency in Hz
        Ts (float): symbol period in s

    Returns:
        int: block length in symbols

    """
    if not v > 0:
        raise agingmimo.DomainError(f"Speed must be positive, got {v}.")
    wavelength = agingmimo.constants.SPEED_OF_LIGHT / f_c
    return int(np.floor(wavelength / (4 * v * Ts) + 0.5))


class DeltaAse:
    """ASE gain of the model-predicted block length over the baseline."""

    def __init__(
        self,
        point: agingmimo.SweepPoint,
        c_star: int,
        c_baseline: int,
        ase_star: float,
        ase_baseline: float,
        delta: float,
        stderr: float,
    ) -> None:
        self.point = point
        """SweepPoint: operating point."""

        self.c_star = c_star
        """int: block length predicted by the model."""

        self.c_baseline = c_baseline
        """int: baseline block length."""

        self.ase_star = ase_star
        """float: mean ASE at c_star."""

        self.ase_baseline = ase_baseline
        """float: mean ASE at c_baseline."""

        self.delta = delta
        """float: mean of the paired ASE differences."""

        self.stderr = stderr
        """float: standard error of delta."""

    def to_dict(self) -> dict:
        return {
            **self.point.to_dict(),
            "c_star": self.c_star,
            "c_v": self.c_baseline,
            "ase_star": self.ase_star,
            "ase_v": self.ase_baseline,
            "delta_ase": self.delta,
            "delta_stderr": self.stderr,
        }


def delta_ase(
    point: agingmimo.SweepPoint,
    model: agingmimo.FitModel,
    setup: agingmimo.SimulationSetup,
    baseline: Optional[int] = None,
    executor: Optional[Executor] = None,
) -> DeltaAse:
    """ASE(C*) - ASE(C_v) at a sweep point.

    Both block lengths are evaluated on the same drops and realizations, and the
    standard error refers to the paired differences.

    Args:
        point (SweepPoint): operating point
        model (FitModel): block length model
        setup (SimulationSetup): setup
        baseline (int, optional): baseline block length, defaults to the coherence
            block of the point
        executor (Executor, optional): executor for the drops

    Returns:
        DeltaAse: difference and standard error

    """
    c_star = model.predict(point, setup.T)
    if baseline is None:
        baseline = coherence_block(point.v, setup.array.f_c, setup.Ts)
    c_baseline = max(int(baseline), setup.T + 1)

    c_grid = np.array([c_star, c_baseline])
    n_max = int(np.max(c_grid)) - setup.T
    samples = agingmimo.point_samples(point, setup, n_max, executor)[point.combiner]
    L = setup.layouts[point.scenario].L
    ase = agingmimo.cumulative_block_se(samples, c_grid, setup.T) / L

    difference = ase[:, 0] - ase[:, 1]
    stderr = (
        float(np.std(difference, ddof=1) / np.sqrt(difference.size))
        if difference.size > 1
        else 0.0
    )
    return DeltaAse(
        point,
        c_star,
        c_baseline,
        float(np.mean(ase[:, 0])),
        float(np.mean(ase[:, 1])),
        float(np.mean(difference)),
        stderr,
    )
