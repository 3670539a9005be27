"""Keyed random number substreams.

Every random draw of a simulation is taken from a generator addressed by a tuple
of non-negative integers, e.g. (stage, point, drop, realization, bs, vue). The
generator only depends on the master seed and its key, so results do not depend
on the order (or thread) in which substreams are consumed.

"""

from __future__ import annotations

import numpy as np

STAGE_DROP: int = 1
"""int: Geometry, shadowing and pilot assignment of a drop."""

STAGE_CHANNEL: int = 2
"""int: Initial small-scale channel of a link."""

STAGE_PILOT_NOISE: int = 3
"""int: Receiver noise during training."""

STAGE_INNOVATION: int = 4
"""int: Innovation of the aging process."""

SCENARIO_KEYS: dict[str, int] = {"freeway": 1, "manhattan": 2}


class SeedTree:
    """Factory of independent PCG64 generators addressed by integer keys."""

    generator_family: str = "PCG64"
    """str: Bit generator underlying all substreams."""

    def __init__(self, master_seed: int) -> None:
        if master_seed < 0:
            raise ValueError("Master seed must be non-negative.")
        self.master_seed = int(master_seed)
        """int: Root entropy."""

    def seed_sequence(self, *key: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=tuple(int(k) for k in key)
        )

    def rng(self, *key: int) -> np.random.Generator:
        """Generator of the substream addressed by key.

        Args:
            key (int): non-negative integers

        Returns:
            np.random.Generator: independent generator

        """
        return np.random.Generator(np.random.PCG64(self.seed_sequence(*key)))


def point_key(scenario: str, sigma_T_deg: float, sigma_R_deg: float, v: float) -> tuple:
    """Integer encoding of an operating point, in milli-units.

    Args:
        scenario (str): scenario name
        sigma_T_deg (float): AoD spread in degrees
        sigma_R_deg (float): AoA spread in degrees
        v (float): speed in m/s

    Returns:
        tuple: four non-negative integers

    """
    return (
        SCENARIO_KEYS[scenario],
        int(round(1000 * sigma_T_deg)),
        int(round(1000 * sigma_R_deg)),
        int(round(1000 * v)),
    )
