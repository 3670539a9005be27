"""Unit tests for angular spreads, array geometry and angular profiles."""

import numpy as np
import pytest

import agingmimo


@pytest.mark.parametrize(
    "sigma_deg, kappa, tol", [(35.0, 2.68, 0.01), (15.0, 14.59, 0.01), (5.0, 131.0, 1.0)]
)
def test_sigma_to_kappa_golden(sigma_deg, kappa, tol):
    assert abs(agingmimo.sigma_to_kappa(sigma_deg) - kappa) <= tol


def test_kappa_to_sigma_inverse():
    for sigma in [1.0, 5.0, 15.0, 35.0, 50.0]:
        kappa = agingmimo.sigma_to_kappa(sigma)
        assert np.isclose(agingmimo.kappa_to_sigma(kappa), sigma)


@pytest.mark.parametrize("sigma_deg", [0.0, -5.0, np.inf, np.nan])
def test_sigma_to_kappa_domain(sigma_deg):
    with pytest.raises(agingmimo.DomainError):
        agingmimo.sigma_to_kappa(sigma_deg)


def test_normalize_angle():
    angles = np.array([0.0, np.pi, -np.pi, 3 * np.pi, 2 * np.pi + 0.1, -0.1])
    normalized = agingmimo.normalize_angle(angles)
    assert np.all(normalized >= -np.pi) and np.all(normalized < np.pi)
    assert np.allclose(np.exp(1j * normalized), np.exp(1j * angles))


def test_array_geometry():
    array = agingmimo.ArrayGeometry(32)
    # Half wavelength spacing at 2 GHz
    assert np.isclose(array.wavelength, 0.15)
    assert np.isclose(array.d, array.wavelength / 2)
    assert np.isclose(array.doppler(33.33), 222.2)

    with pytest.raises(agingmimo.DomainError):
        agingmimo.ArrayGeometry(0)
    with pytest.raises(agingmimo.DomainError):
        agingmimo.ArrayGeometry(4, d=0.0)


def test_angular_profile():
    profile = agingmimo.AngularProfile.from_spreads(35.0, 15.0, 4.0, -4.0, gamma=np.pi)
    assert np.isclose(profile.kappa_T, agingmimo.sigma_to_kappa(35.0))
    assert np.isclose(profile.kappa_R, agingmimo.sigma_to_kappa(15.0))
    assert -np.pi <= profile.phi_c < np.pi
    assert -np.pi <= profile.theta_c < np.pi
    assert np.isclose(profile.gamma, -np.pi)

    with pytest.raises(agingmimo.DomainError):
        agingmimo.AngularProfile(-1.0, 0.0, 0.0, 0.0)
