"""Legacy correlation model used for comparison.

The AoA is uniform on a window of half-width sigma_R around theta_c and the
array is broadside (alpha = pi/2). The temporal correlation assumes motion along
the reference direction (gamma = 0).

"""

from __future__ import annotations

from typing import Union

import numpy as np

import agingmimo


def legacy_scf(
    theta_c: float,
    sigma_R_deg: float,
    array: agingmimo.ArrayGeometry,
    p: int,
    q: int,
) -> complex:
    """Spatial correlation (1 / 2 sigma) int exp(j b sin(theta)) over the AoA window.

    Args:
        theta_c (float): mean AoA in rad
        sigma_R_deg (float): half-width of the AoA window in degrees
        array (ArrayGeometry): array geometry
        p (int): first antenna index (1-based)
        q (int): second antenna index (1-based)

    Returns:
        complex: spatial correlation

    """
    if not np.isfinite(sigma_R_deg) or sigma_R_deg <= 0:
        raise agingmimo.DomainError(f"Angular spread must be positive, got {sigma_R_deg}.")
    for index in (p, q):
        if int(index) != index or not 1 <= index <= array.M:
            raise IndexError(f"Antenna index {index} outside 1..{array.M}.")
    if p == q:
        return 1.0 + 0j

    b = float(agingmimo.spatial_argument(array, p - q))
    sigma = np.deg2rad(sigma_R_deg)
    integral = agingmimo.quadrature.interval_integral(
        lambda theta: np.exp(1j * b * np.sin(theta)), theta_c - sigma, theta_c + sigma
    )
    return integral / (2 * sigma)


def legacy_spatial_matrix(
    theta_c: float, sigma_R_deg: float, array: agingmimo.ArrayGeometry
) -> agingmimo.SpatialMatrix:
    """Spatial correlation matrix of the legacy model.

    Entries only depend on p - q, so one quadrature per lag suffices.

    """
    positive = np.array(
        [legacy_scf(theta_c, sigma_R_deg, array, 1 + lag, 1) for lag in range(array.M)]
    )
    values = np.concatenate([np.conj(positive[1:][::-1]), positive])
    return agingmimo.SpatialMatrix(values[agingmimo.toeplitz_index(array.M)])


def legacy_acf(
    kappa_T: float,
    phi_c: float,
    v: float,
    array: agingmimo.ArrayGeometry,
    tau: Union[float, np.ndarray],
) -> Union[complex, np.ndarray]:
    """Temporal correlation of the legacy model, i.e. with gamma = 0.

    Args:
        kappa_T (float): AoD concentration
        phi_c (float): mean AoD in rad
        v (float): speed in m/s
        array (ArrayGeometry): carrier and array
        tau (float or np.ndarray): time lag(s) in s

    Returns:
        complex or np.ndarray: rho(tau)

    """
    profile = agingmimo.AngularProfile(kappa_T, 0.0, phi_c, 0.0, gamma=0.0)
    return agingmimo.acf(profile, v, array, tau)


def legacy_spatial_matrices(
    theta_c: Union[float, np.ndarray],
    sigma_R_deg: float,
    array: agingmimo.ArrayGeometry,
    num_points: int = 1024,
) -> np.ndarray:
    """Batched legacy spatial matrices using a fixed Gauss-Legendre rule.

    Args:
        theta_c (float or np.ndarray): mean AoA(s) in rad
        sigma_R_deg (float): half-width of the AoA window in degrees
        array (ArrayGeometry): array geometry
        num_points (int): number of Gauss points on the AoA window

    Returns:
        np.ndarray: stack of matrices with shape (*theta_c.shape, M, M)

    """
    theta_c = np.asarray(theta_c, dtype=float)
    sigma = np.deg2rad(sigma_R_deg)
    points, weights = agingmimo.quadrature.gauss_legendre(num_points)
    b = agingmimo.spatial_argument(array, np.arange(-(array.M - 1), array.M))

    values = np.empty((theta_c.size, b.size), dtype=complex)
    for i, center in enumerate(theta_c.ravel()):
        # Mean over the window; the weights sum to 2 on the reference interval
        phases = np.exp(1j * np.outer(b, np.sin(center + sigma * points)))
        values[i] = 0.5 * phases @ weights
    values[:, array.M - 1] = 1.0

    matrices = values[:, agingmimo.toeplitz_index(array.M)]
    return matrices.reshape(theta_c.shape + (array.M, array.M))
