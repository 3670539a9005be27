"""Random pilot assignment and pilot reception.

Each VUE picks one of T orthogonal pilot sequences uniformly at random. VUEs
sharing a pilot form a cohort; their training signals superimpose at every BS.

"""

from __future__ import annotations

import numpy as np

import agingmimo


class PilotAssignment:
    """Pilot index per VUE, 0-based in 0..T-1."""

    def __init__(self, pilot_of: np.ndarray, T: int) -> None:
        pilot_of = np.asarray(pilot_of, dtype=int)
        if np.any(pilot_of < 0) or np.any(pilot_of >= T):
            raise agingmimo.ConfigError(f"Pilot indices must lie in 0..{T - 1}.")

        self.pilot_of = pilot_of
        """np.ndarray: pilot index of each VUE."""

        self.T = int(T)
        """int: number of orthogonal pilots."""

    @property
    def K(self) -> int:
        return self.pilot_of.size

    def cohort(self, pilot: int) -> np.ndarray:
        """VUE indices using the given pilot."""
        return np.flatnonzero(self.pilot_of == pilot)

    def cohort_of(self) -> dict[int, np.ndarray]:
        """Map from pilot index to VUE indices, for all pilots in use."""
        return {int(t): self.cohort(t) for t in np.unique(self.pilot_of)}

    def contaminators(self, k: int) -> np.ndarray:
        """VUEs other than k sharing the pilot of k."""
        cohort = self.cohort(self.pilot_of[k])
        return cohort[cohort != k]


def assign_pilots(K: int, T: int, rng: np.random.Generator) -> PilotAssignment:
    """Uniform i.i.d. pilot choice.

    Args:
        K (int): number of VUEs
        T (int): number of pilots
        rng (np.random.Generator): generator

    Returns:
        PilotAssignment: assignment

    """
    if T < 1:
        raise agingmimo.ConfigError(f"Number of pilots must be positive, got {T}.")
    return PilotAssignment(rng.integers(0, T, size=K), T)


def receive_pilots(
    h0: np.ndarray,
    powers: np.ndarray,
    pilots: PilotAssignment,
    noise_power: float,
    rng: np.random.Generator,
) -> dict[int, np.ndarray]:
    """Processed training signals at one BS.

    y_t = sum_{k in cohort t} sqrt(P_k T) h_k + n_t with n_t ~ CN(0, sigma^2 I).

    Args:
        h0 (np.ndarray): channels of all VUEs to the BS, shape (K, M)
        powers (np.ndarray): transmit powers, shape (K,)
        pilots (PilotAssignment): pilot assignment
        noise_power (float): noise variance sigma^2
        rng (np.random.Generator): generator for the receiver noise

    Returns:
        dict[int, np.ndarray]: received vector per pilot in use

    """
    M = h0.shape[1]
    amplitudes = np.sqrt(powers * pilots.T)
    received = {}
    # Noise for all T pilots, used or not
    noise = np.sqrt(noise_power) * agingmimo.complex_normal(rng, (pilots.T, M))
    for pilot, cohort in pilots.cohort_of().items():
        received[pilot] = amplitudes[cohort] @ h0[cohort] + noise[pilot]
    return received
