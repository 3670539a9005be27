"""Operating points and block-length grids of the ASE sweeps."""

from __future__ import annotations

import itertools
from typing import Literal, Sequence

import numpy as np

import agingmimo

SCENARIOS: tuple[str, ...] = ("freeway", "manhattan")

COMBINERS: tuple[str, ...] = ("mr", "mmse")

DENSITY: dict[str, float] = {"freeway": 0.004, "manhattan": 0.0125}
"""dict: vehicle density in vehicles per m and lane."""

SIGMA_RANGE: tuple[float, float] = (5.0, 50.0)
"""tuple: range of angular spreads in degrees."""

SPEED_RANGE: dict[str, tuple[float, float]] = {
    "freeway": (19.44, 38.89),
    "manhattan": (8.33, 33.33),
}
"""dict: range of speeds in m/s."""

DEFAULT_SIGMAS: tuple[float, ...] = (5.0, 20.0, 35.0, 50.0)

DEFAULT_SPEEDS: dict[str, tuple[float, ...]] = {
    "freeway": (19.44, 27.78, 33.33, 38.89),
    "manhattan": (8.33, 16.67, 25.0, 30.56),
}
"""dict: speed grids; the Manhattan grid stays below the largest speed compatible
with the density."""


class SweepPoint:
    """Scenario, combiner, angular spreads and speed of one sweep point."""

    def __init__(
        self,
        scenario: Literal["freeway", "manhattan"],
        combiner: Literal["mr", "mmse"],
        sigma_T_deg: float,
        sigma_R_deg: float,
        v: float,
    ) -> None:
        if scenario not in SCENARIOS:
            raise agingmimo.ConfigError(f"Unknown scenario {scenario}.")
        if combiner not in COMBINERS:
            raise agingmimo.ConfigError(f"Unknown combiner {combiner}.")
        for name, value in (("sigma_T_deg", sigma_T_deg), ("sigma_R_deg", sigma_R_deg)):
            if not np.isfinite(value) or value <= 0:
                raise agingmimo.DomainError(f"{name} must be positive, got {value}.")
        if not np.isfinite(v) or v <= 0:
            raise agingmimo.DomainError(f"Speed must be positive, got {v}.")

        self.scenario = scenario
        """str: scenario name."""

        self.combiner = combiner
        """str: combiner name."""

        self.sigma_T_deg = float(sigma_T_deg)
        """float: AoD spread in degrees."""

        self.sigma_R_deg = float(sigma_R_deg)
        """float: AoA spread in degrees."""

        self.v = float(v)
        """float: speed in m/s."""

    def key(self) -> tuple:
        """Integer key of the point, independent of the combiner."""
        return agingmimo.seeding.point_key(
            self.scenario, self.sigma_T_deg, self.sigma_R_deg, self.v
        )

    def features(self) -> np.ndarray:
        """Regressors (v, sqrt(sigma_T), sqrt(sigma_R)) of the block-length model."""
        return np.array([self.v, np.sqrt(self.sigma_T_deg), np.sqrt(self.sigma_R_deg)])

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "combiner": self.combiner,
            "sigma_T_deg": self.sigma_T_deg,
            "sigma_R_deg": self.sigma_R_deg,
            "v": self.v,
        }

    def __repr__(self) -> str:
        return (
            f"SweepPoint({self.scenario}, {self.combiner}, sigma_T={self.sigma_T_deg}, "
            f"sigma_R={self.sigma_R_deg}, v={self.v})"
        )


def sweep_points(
    scenario: Literal["freeway", "manhattan"],
    combiner: Literal["mr", "mmse"],
    sigmas_T: Sequence[float] = DEFAULT_SIGMAS,
    sigmas_R: Sequence[float] = DEFAULT_SIGMAS,
    speeds: Sequence[float] = (),
) -> list[SweepPoint]:
    """Cartesian product of spreads and speeds, speed varying fastest."""
    speeds = tuple(speeds) if len(speeds) > 0 else DEFAULT_SPEEDS[scenario]
    return [
        SweepPoint(scenario, combiner, sigma_T, sigma_R, v)
        for sigma_T, sigma_R, v in itertools.product(sigmas_T, sigmas_R, speeds)
    ]


def block_grid(start: int = 60, stop: int = 1000, step: int = 20) -> np.ndarray:
    """Coarse grid of block lengths, stop included."""
    if step < 1 or stop < start:
        raise agingmimo.ConfigError(f"Invalid block grid {start}:{stop}:{step}.")
    return np.arange(start, stop + 1, step)


def refine_grid(
    c_grid: np.ndarray, c_opt: int, T: int, step: int = 5, window: int = 40
) -> np.ndarray:
    """Coarse grid merged with a finer grid around the coarse maximizer.

    Args:
        c_grid (np.ndarray): coarse grid
        c_opt (int): maximizer on the coarse grid
        T (int): pilot length; block lengths stay above T
        step (int): fine step
        window (int): half-width of the fine window

    Returns:
        np.ndarray: sorted unique block lengths within the coarse range

    """
    lower = max(c_opt - window, T + 1, int(np.min(c_grid)))
    upper = min(c_opt + window, int(np.max(c_grid)))
    fine = np.arange(c_opt - (c_opt - lower) // step * step, upper + 1, step)
    return np.union1d(c_grid, fine).astype(int)
