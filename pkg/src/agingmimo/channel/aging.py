"""Spatially correlated Rayleigh channels and their aging over a block.

The channel at symbol n is modeled relative to the channel h[0] at the training
reference,

    h[n] = rho[n] h[0] + sqrt(1 - |rho[n]|^2) z[n],

where z[n] is an innovation with the same distribution CN(0, G R_0) as h[0],
independent of h[0].

"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

import agingmimo

RHO_TOLERANCE: float = 1e-12
"""float: Admissible excess of |rho| over one due to rounding."""


def complex_normal(rng: np.random.Generator, size: Union[int, tuple]) -> np.ndarray:
    """Circularly symmetric standard complex Gaussian samples, CN(0, 1)."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def rho_sequence(
    profile: agingmimo.AngularProfile,
    v: float,
    array: agingmimo.ArrayGeometry,
    Ts: float,
    C: int,
) -> np.ndarray:
    """Temporal correlation rho[n] = rho(n Ts) for n = 0, ..., C - 1.

    Args:
        profile (AngularProfile): link statistics
        v (float): speed in m/s
        array (ArrayGeometry): carrier and array
        Ts (float): symbol period in s
        C (int): number of symbols

    Returns:
        np.ndarray: complex vector of length C with rho[0] = 1

    """
    return np.atleast_1d(agingmimo.acf(profile, v, array, Ts * np.arange(C)))


class LinkState:
    """Statistics and initial channel realization of a VUE-BS link."""

    def __init__(
        self,
        profile: agingmimo.AngularProfile,
        large_scale: agingmimo.LargeScale,
        R0: agingmimo.SpatialMatrix,
        rho: np.ndarray,
        h0: Optional[np.ndarray] = None,
        sqrt_GR0: Optional[np.ndarray] = None,
    ) -> None:
        self.profile = profile
        """AngularProfile: angular statistics."""

        self.large_scale = large_scale
        """LargeScale: distance, shadowing and gain."""

        self.R0 = R0
        """SpatialMatrix: spatial correlation matrix."""

        self.rho = np.asarray(rho, dtype=complex)
        """np.ndarray: temporal correlation per symbol, rho[0] = 1."""

        self.sqrt_GR0 = (
            np.sqrt(large_scale.gain_linear) * R0.sqrt() if sqrt_GR0 is None else sqrt_GR0
        )
        """np.ndarray: Hermitian square root of G R_0."""

        self.h0 = h0
        """np.ndarray, optional: channel at the training reference."""

    @property
    def M(self) -> int:
        return self.R0.M

    @property
    def covariance(self) -> np.ndarray:
        """np.ndarray: covariance G R_0 of the channel."""
        return self.large_scale.gain_linear * self.R0.entries

    def with_channel(self, h0: np.ndarray) -> LinkState:
        """Copy of the link with a new channel realization, sharing statistics."""
        return LinkState(
            self.profile, self.large_scale, self.R0, self.rho, h0, self.sqrt_GR0
        )


def build_link(
    profile: agingmimo.AngularProfile,
    v: float,
    array: agingmimo.ArrayGeometry,
    large_scale: agingmimo.LargeScale,
    Ts: float,
    C: int,
    rng: Optional[np.random.Generator] = None,
) -> LinkState:
    """Link statistics, and an initial channel if a generator is provided.

    Args:
        profile (AngularProfile): link statistics
        v (float): speed in m/s
        array (ArrayGeometry): carrier and array
        large_scale (LargeScale): large-scale fading
        Ts (float): symbol period in s
        C (int): number of symbols per block
        rng (np.random.Generator, optional): generator for h[0]

    Returns:
        LinkState: link

    """
    R0 = agingmimo.spatial_matrix(profile, array)
    rho = rho_sequence(profile, v, array, Ts, C)
    link = LinkState(profile, large_scale, R0, rho)
    if rng is not None:
        link = link.with_channel(draw_initial(link, rng))
    return link


def draw_initial(link: LinkState, rng: np.random.Generator) -> np.ndarray:
    """Draw h[0] ~ CN(0, G R_0) as sqrt(G R_0) w with w ~ CN(0, I).

    Args:
        link (LinkState): link statistics
        rng (np.random.Generator): generator

    Returns:
        np.ndarray: channel vector of length M

    """
    return link.sqrt_GR0 @ complex_normal(rng, link.M)


def age(
    h0: np.ndarray, rho_n: complex, z_n: np.ndarray
) -> np.ndarray:
    """Aged channel rho[n] h[0] + sqrt(1 - |rho[n]|^2) z[n].

    Args:
        h0 (np.ndarray): channel at the training reference
        rho_n (complex): temporal correlation at symbol n
        z_n (np.ndarray): innovation with the distribution of h[0]

    Returns:
        np.ndarray: channel at symbol n

    Raises:
        DomainError: if |rho_n| exceeds one beyond rounding

    """
    modulus = abs(rho_n)
    if modulus > 1 + RHO_TOLERANCE:
        raise agingmimo.DomainError(f"|rho| = {modulus} exceeds one.")
    return rho_n * h0 + np.sqrt(max(0.0, 1 - modulus**2)) * z_n


def innovation(link: LinkState, rng: np.random.Generator) -> np.ndarray:
    """Innovation z[n], distributed as h[0] and independent of it."""
    return draw_initial(link, rng)


def evolve(
    link: LinkState, seeds: agingmimo.SeedTree, key: tuple, num_symbols: int
) -> np.ndarray:
    """Channel trajectory h[0], ..., h[num_symbols - 1] of a link.

    The innovation of symbol n is drawn from the substream (STAGE_INNOVATION,
    *key, n).

    Args:
        link (LinkState): link with initial channel
        seeds (SeedTree): seed tree
        key (tuple): integer key of the link
        num_symbols (int): number of symbols, at most len(link.rho)

    Returns:
        np.ndarray: channels with shape (num_symbols, M)

    """
    assert link.h0 is not None, "Link has no channel realization."
    assert num_symbols <= link.rho.size
    trajectory = np.empty((num_symbols, link.M), dtype=complex)
    trajectory[0] = link.h0
    for n in range(1, num_symbols):
        rng = seeds.rng(agingmimo.seeding.STAGE_INNOVATION, *key, n)
        trajectory[n] = age(link.h0, link.rho[n], innovation(link, rng))
    return trajectory
