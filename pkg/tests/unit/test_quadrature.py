"""Unit tests for the quadrature rules."""

import numpy as np
import pytest
import scipy.special

import agingmimo


def test_periodic_trapezoid():
    value = agingmimo.quadrature.periodic_trapezoid(lambda x: np.cos(x) ** 2, 64)
    assert np.isclose(value, np.pi)
    nodes, weights = agingmimo.quadrature.periodic_nodes(8)
    assert np.isclose(nodes[0], -np.pi)
    assert np.all(nodes < np.pi)
    assert np.isclose(np.sum(weights), 2 * np.pi)


@pytest.mark.parametrize("kappa", [0.0, 2.68, 131.0])
def test_von_mises_average(kappa):
    mean = 1.0
    # E[cos(theta - mean)] = I1(kappa) / I0(kappa)
    value = agingmimo.quadrature.von_mises_average(
        lambda x: np.cos(x - mean), mean, kappa, check=True
    )
    expected = scipy.special.ive(1, kappa) / scipy.special.ive(0, kappa)
    assert np.isclose(value, expected, rtol=0, atol=1e-12)


def test_von_mises_average_not_converged():
    with pytest.raises(ValueError):
        agingmimo.quadrature.von_mises_average(
            lambda x: np.exp(1j * 200 * np.cos(x)), 0.0, 0.0, num_points=16, check=True
        )


def test_interval_integral():
    value = agingmimo.quadrature.interval_integral(lambda x: np.exp(1j * x), 0.0, np.pi)
    assert np.isclose(value, 2j)


def test_gauss_legendre():
    points, weights = agingmimo.quadrature.gauss_legendre(5)
    assert np.isclose(np.sum(weights), 2)
    # Exact up to degree 9
    assert np.isclose(np.sum(weights * points**8), 2 / 9)
