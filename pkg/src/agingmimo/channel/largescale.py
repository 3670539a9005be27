"""Large-scale fading: log-distance path loss with log-normal shadowing."""

from __future__ import annotations

from typing import Union

import numpy as np

import agingmimo


def gain_db(
    distance: Union[float, np.ndarray], shadow_db: Union[float, np.ndarray] = 0.0
) -> Union[float, np.ndarray]:
    """Channel gain in dB, -34.53 - 38 log10(D) + X.

    Args:
        distance (float or np.ndarray): 3D distance(s) in m, positive
        shadow_db (float or np.ndarray): shadowing realization(s) in dB

    Returns:
        float or np.ndarray: gain(s) in dB

    Raises:
        DomainError: for non-positive distances

    """
    distance = np.asarray(distance, dtype=float)
    if np.any(~(distance > 0)):
        raise agingmimo.DomainError("Distances must be positive.")
    constants = agingmimo.constants
    return (
        constants.PATHLOSS_INTERCEPT_DB
        - 10 * constants.PATHLOSS_EXPONENT * np.log10(distance)
        + np.asarray(shadow_db, dtype=float)
    )[()]


def db_to_linear(value_db: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    return (10 ** (np.asarray(value_db, dtype=float) / 10))[()]


class LargeScale:
    """Large-scale fading of a VUE-BS link."""

    def __init__(self, distance: float, shadow_db: float) -> None:
        self.distance = float(distance)
        """float: 3D distance in m."""

        self.shadow_db = float(shadow_db)
        """float: Shadowing realization in dB."""

        self.gain_db = float(gain_db(distance, shadow_db))
        """float: Channel gain in dB."""

        self.gain_linear = float(db_to_linear(self.gain_db))
        """float: Channel gain G = 10^(gain_db / 10)."""

    def __repr__(self) -> str:
        return f"LargeScale(distance={self.distance:.2f}, gain_db={self.gain_db:.2f})"


def path_gain(distance: float, shadow_db: float) -> LargeScale:
    """Large-scale fading of a link at given distance and shadowing.

    Args:
        distance (float): 3D distance in m
        shadow_db (float): shadowing in dB

    Returns:
        LargeScale: gain in dB and linear scale

    """
    return LargeScale(distance, shadow_db)


def draw_shadowing(
    rng: np.random.Generator,
    size: Union[int, tuple],
    std_db: float = agingmimo.constants.SHADOWING_STD_DB,
) -> np.ndarray:
    """Independent log-normal shadowing realizations in dB."""
    return rng.normal(0.0, std_db, size=size)
