"""Quadrature rules for angular integrals.

Periodic integrands over a full circle are integrated with the trapezoidal rule,
which converges geometrically for smooth periodic functions. Integrals over
proper subintervals are delegated to adaptive Gauss-Kronrod quadrature.

"""

from typing import Callable

import numpy as np
import scipy.integrate

DEFAULT_POINTS: int = 2**14
"""int: Number of nodes of the reference trapezoidal rule."""


def periodic_nodes(num_points: int = DEFAULT_POINTS) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the trapezoidal rule on [-pi, pi).

    Args:
        num_points (int): number of equispaced nodes

    Returns:
        tuple[np.ndarray, np.ndarray]: nodes and (constant) weights.

    """
    nodes = -np.pi + 2 * np.pi * np.arange(num_points) / num_points
    weights = np.full(num_points, 2 * np.pi / num_points)
    return nodes, weights


def periodic_trapezoid(
    f: Callable[[np.ndarray], np.ndarray], num_points: int = DEFAULT_POINTS
) -> complex:
    """Integral of a 2pi-periodic function over one period.

    Args:
        f (callable): vectorized integrand
        num_points (int): number of nodes

    Returns:
        complex: approximation of the integral

    """
    nodes, weights = periodic_nodes(num_points)
    return complex(np.sum(weights * f(nodes)))


def von_mises_average(
    g: Callable[[np.ndarray], np.ndarray],
    mean: float,
    kappa: float,
    num_points: int = DEFAULT_POINTS,
    check: bool = False,
    tol: float = 1e-12,
) -> complex:
    """Expectation of g(theta) for theta following a von Mises distribution.

    The density is normalized with the same rule, so no Bessel function is
    needed, and large concentrations do not overflow.

    Args:
        g (callable): vectorized function of the angle
        mean (float): mean direction
        kappa (float): concentration
        num_points (int): number of nodes
        check (bool): flag controlling whether the result is compared with the rule
            using twice as many nodes
        tol (float): absolute tolerance of the comparison

    Returns:
        complex: expectation

    Raises:
        ValueError: if the doubling check fails

    """

    def _average(n: int) -> complex:
        nodes, weights = periodic_nodes(n)
        density = weights * np.exp(kappa * (np.cos(nodes - mean) - 1.0))
        return complex(np.sum(density * g(nodes)) / np.sum(density))

    result = _average(num_points)
    if check:
        refined = _average(2 * num_points)
        if abs(refined - result) > tol:
            raise ValueError(
                f"Quadrature not converged: {abs(refined - result):.3e} > {tol:.1e}."
            )
    return result


def interval_integral(
    f: Callable[[float], complex],
    a: float,
    b: float,
    epsabs: float = 1e-12,
    epsrel: float = 1e-12,
    limit: int = 500,
) -> complex:
    """Integral of a complex valued function over [a, b].

    Real and imaginary parts are integrated separately by QUADPACK.

    Args:
        f (callable): scalar integrand
        a (float): lower limit
        b (float): upper limit
        epsabs (float): absolute tolerance
        epsrel (float): relative tolerance
        limit (int): maximal number of subintervals

    Returns:
        complex: approximation of the integral

    """
    real, _ = scipy.integrate.quad(
        lambda x: np.real(f(x)), a, b, epsabs=epsabs, epsrel=epsrel, limit=limit
    )
    imag, _ = scipy.integrate.quad(
        lambda x: np.imag(f(x)), a, b, epsabs=epsabs, epsrel=epsrel, limit=limit
    )
    return complex(real, imag)


def gauss_legendre(num_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre points and weights on the reference interval [-1, 1].

    Args:
        num_points (int): number of points, exact for polynomials of degree
            2 * num_points - 1

    Returns:
        tuple[np.ndarray, np.ndarray]: points and weights

    """
    return np.polynomial.legendre.leggauss(num_points)
