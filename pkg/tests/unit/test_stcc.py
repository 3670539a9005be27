"""Unit tests for the closed-form space-time correlation."""

import numpy as np
import pytest
import scipy.special

import agingmimo

KAPPAS = [0.0, 2.68, 14.59, 131.0]
RELATIVE_ANGLES = np.deg2rad([0.0, 30.0, 60.0, 90.0])


def _oracle(kappa: float, x: float, mean: float, beta: float) -> complex:
    """E[exp(j x cos(psi - beta))] for psi ~ VonMises(mean, kappa) by quadrature."""
    return agingmimo.quadrature.von_mises_average(
        lambda psi: np.exp(1j * x * np.cos(psi - beta)), mean, kappa, 2**14
    )


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("relative", RELATIVE_ANGLES)
def test_characteristic_against_quadrature(kappa, relative):
    """Temporal (a) and spatial (b) amplitudes against the quadrature oracle."""
    mean = 0.3
    for x in np.concatenate([np.linspace(0, 10, 5), np.linspace(0, 320, 5)]):
        value = agingmimo.von_mises_characteristic(kappa, x, relative)
        assert abs(value - _oracle(kappa, x, mean, mean + relative)) < 1e-8


def test_acf_oracle():
    """rho at 1 ms for perpendicular motion, kappa_T = 2.68, v = 33.33."""
    array = agingmimo.ArrayGeometry(32)
    profile = agingmimo.AngularProfile(2.68, 14.59, 0.2, 0.0, gamma=0.2 + np.pi / 2)
    tau, v = 1e-3, 33.33
    a = -2 * np.pi * tau * 2e9 * v / 3e8
    oracle = _oracle(2.68, a, profile.phi_c, profile.gamma)
    assert abs(agingmimo.acf(profile, v, array, tau) - oracle) < 1e-8


def test_scf_oracle():
    array = agingmimo.ArrayGeometry(16)
    profile = agingmimo.AngularProfile(0.0, 14.59, 0.0, 1.1, alpha=0.4)
    b = 2 * np.pi * (5 - 2) * array.d / array.wavelength
    oracle = _oracle(14.59, b, profile.theta_c, profile.alpha)
    assert abs(agingmimo.scf(profile, array, 5, 2) - oracle) < 1e-8


def test_jakes_temporal():
    array = agingmimo.ArrayGeometry(32)
    profile = agingmimo.AngularProfile(0.0, 14.59, 0.7, 0.0, gamma=2.0)
    v = 33.33
    tau = np.linspace(0, 0.05, 100)
    reference = scipy.special.j0(2 * np.pi * tau * array.f_c * v / 3e8)
    assert np.allclose(agingmimo.acf(profile, v, array, tau), reference, rtol=0, atol=1e-8)


def test_jakes_spatial():
    array = agingmimo.ArrayGeometry(100)
    profile = agingmimo.AngularProfile(2.68, 0.0, 0.0, -1.3, alpha=0.5)
    lags = np.arange(100)
    reference = scipy.special.j0(2 * np.pi * lags * array.d / array.wavelength)
    values = agingmimo.scf_lags(profile, array, lags)
    assert np.allclose(values, reference, rtol=0, atol=1e-8)


def test_acf_properties():
    array = agingmimo.ArrayGeometry(8)
    profile = agingmimo.AngularProfile(2.68, 14.59, 0.3, 0.0, gamma=1.0)
    tau = np.linspace(0, 5e-3, 50)
    rho = agingmimo.acf(profile, 33.33, array, tau)
    assert np.isclose(rho[0], 1)
    assert np.all(np.abs(rho) <= 1 + 1e-12)
    assert np.allclose(agingmimo.acf(profile, 33.33, array, -tau), np.conj(rho))

    with pytest.raises(agingmimo.DomainError):
        agingmimo.acf(profile, -1.0, array, tau)


def test_stronger_temporal_correlation_for_concentrated_aod():
    array = agingmimo.ArrayGeometry(8)
    isotropic = agingmimo.AngularProfile(0.0, 0.0, 0.0, 0.0)
    concentrated = agingmimo.AngularProfile(2.68, 14.59, 0.0, 0.0)
    for v in [16.67, 33.33]:
        assert abs(agingmimo.acf(concentrated, v, array, 1e-3)) > abs(
            agingmimo.acf(isotropic, v, array, 1e-3)
        )


def test_scf_properties():
    array = agingmimo.ArrayGeometry(6)
    profile = agingmimo.AngularProfile(0.0, 14.59, 0.0, 0.9, alpha=0.1)
    for p in range(1, 7):
        assert np.isclose(agingmimo.scf(profile, array, p, p), 1)
        for q in range(1, 7):
            value = agingmimo.scf(profile, array, p, q)
            assert np.isclose(agingmimo.scf(profile, array, q, p), np.conj(value))

    for p, q in [(0, 1), (1, 7), (2.5, 1)]:
        with pytest.raises(IndexError):
            agingmimo.scf(profile, array, p, q)


def test_stcc_element():
    array = agingmimo.ArrayGeometry(4)
    profile = agingmimo.AngularProfile(2.68, 14.59, 0.1, 0.2, gamma=0.5, alpha=0.7)
    value = agingmimo.stcc_element(profile, 16.67, array, 3, 1, 2e-3)
    expected = agingmimo.acf(profile, 16.67, array, 2e-3) * agingmimo.scf(profile, array, 3, 1)
    assert np.isclose(value, expected)


@pytest.mark.parametrize("kappa_R", [0.0, 14.59, 131.0])
def test_spatial_matrix(kappa_R):
    array = agingmimo.ArrayGeometry(32)
    profile = agingmimo.AngularProfile(0.0, kappa_R, 0.0, 0.8, alpha=0.2)
    R = agingmimo.spatial_matrix(profile, array)
    entries = np.asarray(R)

    assert R.M == 32
    assert np.allclose(np.diag(entries), 1)
    assert np.allclose(entries, np.conj(entries.T))
    # Toeplitz structure
    assert np.allclose(entries[1:, 1:], entries[:-1, :-1])
    assert R.eigenvalues()[0] > -1e-10
    assert np.isclose(entries[4, 1], agingmimo.scf(profile, array, 5, 2))

    S = R.sqrt()
    assert np.linalg.norm(S @ np.conj(S.T) - entries) <= 1e-8 * np.linalg.norm(entries)

    # Read-only storage
    with pytest.raises(ValueError):
        R.entries[0, 0] = 2


def test_spatial_matrices_batched():
    array = agingmimo.ArrayGeometry(8)
    theta_c = np.array([[0.1, -2.0], [1.4, 3.0]])
    alpha = np.array([[0.0], [np.pi / 2]])
    batch = agingmimo.spatial_matrices(14.59, theta_c, alpha, array)
    assert batch.shape == (2, 2, 8, 8)
    for i in range(2):
        for j in range(2):
            profile = agingmimo.AngularProfile(
                0.0, 14.59, 0.0, theta_c[i, j], alpha=alpha[i, 0]
            )
            single = np.asarray(agingmimo.spatial_matrix(profile, array))
            assert np.allclose(batch[i, j], single)


def test_isotropic_surface_is_product_of_bessel_functions():
    profile, v = agingmimo.preset_profile("isotropic_v33.33")
    spacings = np.linspace(0, 0.75, 11)
    taus = np.linspace(0, 2e-3, 9)
    surface = agingmimo.stcc_surface(profile, v, spacings, taus)

    wavelength = 0.15
    expected = np.outer(
        scipy.special.j0(2 * np.pi * spacings / wavelength),
        scipy.special.j0(2 * np.pi * taus * 2e9 * v / 3e8),
    )
    assert surface.shape == (11, 9)
    assert np.isclose(surface[0, 0], 1)
    assert np.allclose(surface, expected, rtol=0, atol=1e-9)


def test_presets():
    assert len(agingmimo.STCC_PRESETS) == 6
    aligned, v = agingmimo.preset_profile("aligned_v33.33")
    perpendicular, _ = agingmimo.preset_profile("perpendicular_v33.33")
    array = agingmimo.ArrayGeometry(2)

    # Motion perpendicular to the mean AoD decorrelates faster
    assert abs(agingmimo.acf(perpendicular, v, array, 1e-3)) < abs(
        agingmimo.acf(aligned, v, array, 1e-3)
    )
    # Array perpendicular to the mean AoA decorrelates the antennas
    assert abs(agingmimo.scf_lags(perpendicular, array, 1)) < abs(
        agingmimo.scf_lags(aligned, array, 1)
    )

    with pytest.raises(agingmimo.ConfigError):
        agingmimo.preset_profile("unknown")
