"""Space-time cross-correlation of a link under von Mises angular statistics.

With independent AoD and AoA, the correlation between antennas p and q at time
lag tau factorizes into a temporal part rho(tau) (depending on the AoD statistics
and the motion of the VUE) and a spatial part s(p, q) (depending on the AoA
statistics and the array geometry). Both are ratios of modified Bessel functions.

"""

from __future__ import annotations

from typing import Union

import numpy as np

import agingmimo


def von_mises_characteristic(
    kappa: Union[float, np.ndarray],
    x: Union[float, np.ndarray],
    offset: Union[float, np.ndarray],
) -> Union[complex, np.ndarray]:
    """Expectation of exp(j x cos(psi - beta)) for psi ~ VonMises(mu, kappa).

    Equals I0(sqrt(kappa^2 - x^2 + 2 j x kappa cos(offset))) / I0(kappa) with
    offset = beta - mu. All arguments broadcast.

    Args:
        kappa (float or np.ndarray): concentration
        x (float or np.ndarray): amplitude of the phase
        offset (float or np.ndarray): angle between reference direction and mean

    Returns:
        complex or np.ndarray: characteristic value, modulus at most one

    """
    kappa = np.asarray(kappa, dtype=float)
    x = np.asarray(x, dtype=float)
    w = kappa**2 - x**2 + 2j * x * kappa * np.cos(offset)
    return agingmimo.i0_ratio(w, kappa**2 + 0j)


def doppler_argument(
    v: float, array: agingmimo.ArrayGeometry, tau: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """Phase amplitude a = -2 pi tau f_c v / c of the temporal correlation."""
    return -2 * np.pi * np.asarray(tau, dtype=float) * array.doppler(v)


def spatial_argument(
    array: agingmimo.ArrayGeometry, lag: Union[int, np.ndarray]
) -> Union[float, np.ndarray]:
    """Phase amplitude b = 2 pi (p - q) d / lambda_c of the spatial correlation."""
    return 2 * np.pi * np.asarray(lag, dtype=float) * array.d / array.wavelength


def acf(
    profile: agingmimo.AngularProfile,
    v: float,
    array: agingmimo.ArrayGeometry,
    tau: Union[float, np.ndarray],
) -> Union[complex, np.ndarray]:
    """Temporal autocorrelation rho(tau) of a link.

    Args:
        profile (AngularProfile): link statistics
        v (float): speed of the VUE in m/s
        array (ArrayGeometry): carrier and array
        tau (float or np.ndarray): time lag(s) in s

    Returns:
        complex or np.ndarray: rho(tau); rho(0) = 1, rho(-tau) = conj(rho(tau))

    """
    if not np.isfinite(v) or v < 0:
        raise agingmimo.DomainError(f"Speed must be non-negative, got {v}.")
    a = doppler_argument(v, array, tau)
    return von_mises_characteristic(profile.kappa_T, a, profile.gamma - profile.phi_c)


def _check_antenna_index(index: int, M: int) -> None:
    if int(index) != index or not 1 <= index <= M:
        raise IndexError(f"Antenna index {index} outside 1..{M}.")


def scf(
    profile: agingmimo.AngularProfile,
    array: agingmimo.ArrayGeometry,
    p: int,
    q: int,
) -> complex:
    """Spatial cross-correlation between antennas p and q (1-based).

    Args:
        profile (AngularProfile): link statistics
        array (ArrayGeometry): array geometry
        p (int): first antenna index
        q (int): second antenna index

    Returns:
        complex: s(p, q); s(p, p) = 1, s(q, p) = conj(s(p, q))

    Raises:
        IndexError: for indices outside 1..M

    """
    _check_antenna_index(p, array.M)
    _check_antenna_index(q, array.M)
    return complex(scf_lags(profile, array, p - q))


def scf_lags(
    profile: agingmimo.AngularProfile,
    array: agingmimo.ArrayGeometry,
    lags: Union[int, np.ndarray],
) -> Union[complex, np.ndarray]:
    """Spatial correlation as function of the index difference p - q."""
    b = spatial_argument(array, lags)
    return von_mises_characteristic(profile.kappa_R, b, profile.alpha - profile.theta_c)


def stcc_element(
    profile: agingmimo.AngularProfile,
    v: float,
    array: agingmimo.ArrayGeometry,
    p: int,
    q: int,
    tau: Union[float, np.ndarray],
) -> Union[complex, np.ndarray]:
    """Space-time cross-correlation rho(tau) * s(p, q)."""
    return acf(profile, v, array, tau) * scf(profile, array, p, q)


STCC_PRESETS: dict[str, dict[str, float]] = {
    "isotropic_v16.67": dict(kappa_T=0.0, kappa_R=0.0, relative_deg=0.0, v=16.67),
    "isotropic_v33.33": dict(kappa_T=0.0, kappa_R=0.0, relative_deg=0.0, v=33.33),
    "aligned_v16.67": dict(kappa_T=2.68, kappa_R=14.59, relative_deg=0.0, v=16.67),
    "aligned_v33.33": dict(kappa_T=2.68, kappa_R=14.59, relative_deg=0.0, v=33.33),
    "perpendicular_v16.67": dict(kappa_T=2.68, kappa_R=14.59, relative_deg=90.0, v=16.67),
    "perpendicular_v33.33": dict(kappa_T=2.68, kappa_R=14.59, relative_deg=90.0, v=33.33),
}
"""dict: isotropic and non-isotropic (sigma_T = 35, sigma_R = 15 degrees) scattering,
with motion and array orientation aligned with (0 degrees) or perpendicular to
(90 degrees) the mean AoD and AoA, at moderate and high speed."""


def preset_profile(name: str) -> tuple[agingmimo.AngularProfile, float]:
    """Angular profile and speed of a named preset, with phi_c = theta_c = 0."""
    if name not in STCC_PRESETS:
        raise agingmimo.ConfigError(f"Unknown stcc preset {name}.")
    preset = STCC_PRESETS[name]
    relative = np.deg2rad(preset["relative_deg"])
    profile = agingmimo.AngularProfile(
        preset["kappa_T"], preset["kappa_R"], 0.0, 0.0, gamma=relative, alpha=relative
    )
    return profile, preset["v"]


def stcc_surface(
    profile: agingmimo.AngularProfile,
    v: float,
    spacings: np.ndarray,
    taus: np.ndarray,
    f_c: float = agingmimo.constants.CARRIER_FREQUENCY,
) -> np.ndarray:
    """STCC of two adjacent antennas over a grid of spacings and time lags.

    Args:
        profile (AngularProfile): link statistics
        v (float): speed in m/s
        spacings (np.ndarray): antenna spacings d in m, non-negative
        taus (np.ndarray): time lags in s
        f_c (float): carrier frequency in Hz

    Returns:
        np.ndarray: rho(tau) s(2, 1) with shape (len(spacings), len(taus))

    """
    spacings = np.asarray(spacings, dtype=float)
    if np.any(spacings < 0):
        raise agingmimo.DomainError("Antenna spacings must be non-negative.")
    wavelength = agingmimo.constants.SPEED_OF_LIGHT / f_c
    rho = acf(profile, v, agingmimo.ArrayGeometry(2, wavelength / 2, f_c), taus)
    s = von_mises_characteristic(
        profile.kappa_R, 2 * np.pi * spacings / wavelength, profile.alpha - profile.theta_c
    )
    return np.asarray(s)[:, None] * np.asarray(rho)[None, :]


class SpatialMatrix:
    """Spatial correlation matrix R_0 of a link.

    Hermitian PSD with unit diagonal. Entries are stored read-only.

    """

    def __init__(self, entries: np.ndarray) -> None:
        entries = np.array(entries, dtype=complex)
        agingmimo.check_hermitian(entries)
        entries.setflags(write=False)

        self.entries = entries
        """np.ndarray: M x M matrix."""

        self.M = entries.shape[0]
        """int: Number of antennas."""

    def sqrt(self) -> np.ndarray:
        """Hermitian square root of the matrix."""
        return agingmimo.hermitian_psd_sqrt(self.entries)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        return self.entries if dtype is None else self.entries.astype(dtype)


def toeplitz_index(M: int) -> np.ndarray:
    """Index array mapping (p, q) to the position of lag p - q in [-(M-1), M-1]."""
    index = np.arange(M)
    return index[:, None] - index[None, :] + M - 1


def spatial_matrices(
    kappa_R: Union[float, np.ndarray],
    theta_c: Union[float, np.ndarray],
    alpha: Union[float, np.ndarray],
    array: agingmimo.ArrayGeometry,
) -> np.ndarray:
    """Spatial correlation matrices for a batch of links.

    Args:
        kappa_R (float or np.ndarray): AoA concentration(s)
        theta_c (float or np.ndarray): mean AoA(s) in rad
        alpha (float or np.ndarray): array orientation(s) in rad
        array (ArrayGeometry): array geometry

    Returns:
        np.ndarray: stack of matrices with shape (*batch, M, M)

    """
    kappa_R, theta_c, alpha = np.broadcast_arrays(
        np.asarray(kappa_R, dtype=float),
        np.asarray(theta_c, dtype=float),
        np.asarray(alpha, dtype=float),
    )
    lags = np.arange(-(array.M - 1), array.M)
    b = spatial_argument(array, lags)
    values = von_mises_characteristic(
        kappa_R[..., None], b, (alpha - theta_c)[..., None]
    )
    values = np.asarray(values, dtype=complex)
    values[..., array.M - 1] = 1.0
    return values[..., toeplitz_index(array.M)]


def spatial_matrix(
    profile: agingmimo.AngularProfile, array: agingmimo.ArrayGeometry
) -> SpatialMatrix:
    """Spatial correlation matrix R_0 with entries s(p, q).

    Args:
        profile (AngularProfile): link statistics
        array (ArrayGeometry): array geometry

    Returns:
        SpatialMatrix: Hermitian PSD matrix with unit diagonal

    Raises:
        NotPSD: if rounding produced an eigenvalue below the clipping tolerance

    """
    entries = spatial_matrices(profile.kappa_R, profile.theta_c, profile.alpha, array)
    eigenvalues = np.linalg.eigvalsh(entries)
    if eigenvalues[0] < -agingmimo.linalg.CLIP_TOLERANCE * max(eigenvalues[-1], 0.0):
        raise agingmimo.NotPSD(f"Spatial matrix has eigenvalue {eigenvalues[0]:.3e}.")
    return SpatialMatrix(entries)
