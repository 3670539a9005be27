"""Von Mises angular profiles and array geometry.

Departure (AoD, at the VUE) and arrival (AoA, at the BS) angles are modeled as
independent von Mises random variables. A profile collects concentrations and
central angles, together with the directions of motion and array orientation.

"""

from __future__ import annotations

from typing import Union

import numpy as np

import agingmimo


def normalize_angle(angle: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Map angles to [-pi, pi).

    Args:
        angle (float or np.ndarray): angle(s) in rad

    Returns:
        float or np.ndarray: equivalent angle(s) in [-pi, pi)

    """
    return (np.mod(np.asarray(angle, dtype=float) + np.pi, 2 * np.pi) - np.pi)[()]


def sigma_to_kappa(sigma_deg: float) -> float:
    """Concentration of a von Mises distribution with angular spread sigma.

    Uses the small-spread approximation kappa = 1 / sigma^2, sigma in rad.

    Args:
        sigma_deg (float): angular spread in degrees

    Returns:
        float: concentration

    Raises:
        DomainError: for non-positive or non-finite spreads

    """
    if not np.isfinite(sigma_deg) or sigma_deg <= 0:
        raise agingmimo.DomainError(f"Angular spread must be positive, got {sigma_deg}.")
    return float(1.0 / np.deg2rad(sigma_deg) ** 2)


def kappa_to_sigma(kappa: float) -> float:
    """Inverse of sigma_to_kappa, returning the spread in degrees."""
    if not np.isfinite(kappa) or kappa <= 0:
        raise agingmimo.DomainError(f"Concentration must be positive, got {kappa}.")
    return float(np.rad2deg(1.0 / np.sqrt(kappa)))


class ArrayGeometry:
    """Uniform linear array at the BS."""

    def __init__(
        self,
        M: int,
        d: float = agingmimo.constants.ANTENNA_SPACING,
        f_c: float = agingmimo.constants.CARRIER_FREQUENCY,
    ) -> None:
        if int(M) != M or M < 1:
            raise agingmimo.DomainError(f"Number of antennas must be positive, got {M}.")
        if not d > 0 or not f_c > 0:
            raise agingmimo.DomainError("Spacing and carrier frequency must be positive.")

        self.M = int(M)
        """int: Number of antenna elements."""

        self.d = float(d)
        """float: Element spacing in m."""

        self.f_c = float(f_c)
        """float: Carrier frequency in Hz."""

    @property
    def wavelength(self) -> float:
        """float: Carrier wavelength in m."""
        return agingmimo.constants.SPEED_OF_LIGHT / self.f_c

    def doppler(self, v: float) -> float:
        """Maximum Doppler frequency f_c v / c in Hz."""
        return self.f_c * v / agingmimo.constants.SPEED_OF_LIGHT

    def __repr__(self) -> str:
        return f"ArrayGeometry(M={self.M}, d={self.d}, f_c={self.f_c})"


class AngularProfile:
    """Angular statistics of a single VUE-BS link.

    Angles are stored normalized to [-pi, pi).

    """

    def __init__(
        self,
        kappa_T: float,
        kappa_R: float,
        phi_c: float,
        theta_c: float,
        gamma: float = 0.0,
        alpha: float = agingmimo.constants.ARRAY_ORIENTATION,
    ) -> None:
        for name, kappa in (("kappa_T", kappa_T), ("kappa_R", kappa_R)):
            if not np.isfinite(kappa) or kappa < 0:
                raise agingmimo.DomainError(f"{name} must be non-negative, got {kappa}.")

        self.kappa_T = float(kappa_T)
        """float: AoD concentration."""

        self.kappa_R = float(kappa_R)
        """float: AoA concentration."""

        self.phi_c = float(normalize_angle(phi_c))
        """float: Mean AoD in rad."""

        self.theta_c = float(normalize_angle(theta_c))
        """float: Mean AoA in rad."""

        self.gamma = float(normalize_angle(gamma))
        """float: Direction of motion of the VUE in rad."""

        self.alpha = float(normalize_angle(alpha))
        """float: Orientation of the BS array in rad."""

    @classmethod
    def from_spreads(
        cls,
        sigma_T_deg: float,
        sigma_R_deg: float,
        phi_c: float,
        theta_c: float,
        gamma: float = 0.0,
        alpha: float = agingmimo.constants.ARRAY_ORIENTATION,
    ) -> AngularProfile:
        """Profile with concentrations derived from angular spreads in degrees."""
        return cls(
            sigma_to_kappa(sigma_T_deg),
            sigma_to_kappa(sigma_R_deg),
            phi_c,
            theta_c,
            gamma,
            alpha,
        )

    def __repr__(self) -> str:
        return (
            f"AngularProfile(kappa_T={self.kappa_T:.4g}, kappa_R={self.kappa_R:.4g}, "
            f"phi_c={self.phi_c:.4f}, theta_c={self.theta_c:.4f}, "
            f"gamma={self.gamma:.4f}, alpha={self.alpha:.4f})"
        )
