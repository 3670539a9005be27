"""Deployment geometry of the vehicular scenarios.

Two layouts are provided:

    * freeway: BSs on a line at a fixed distance from a six-lane road; the three
      lanes closer to the BSs carry traffic in negative x direction, the others
      in positive x direction. The road wraps around in x.
    * manhattan: a periodic 3 x 3 grid of building blocks with one BS at the center
      of each block. Every street carries four lanes and two sidewalks, traffic
      circulates counterclockwise around each block. The grid wraps in x and y.

"""

from __future__ import annotations

from typing import Literal, Optional, Union

import numpy as np

import agingmimo


class Lane:
    """Straight lane spanning one period of the layout."""

    def __init__(
        self,
        origin: tuple[float, float],
        axis: tuple[float, float],
        length: float,
        gamma: float,
        width: float,
    ) -> None:
        self.origin = np.asarray(origin, dtype=float)
        """np.ndarray: start point of the centerline."""

        self.axis = np.asarray(axis, dtype=float)
        """np.ndarray: unit vector along the centerline."""

        self.length = float(length)
        """float: length in m."""

        self.gamma = float(agingmimo.normalize_angle(gamma))
        """float: direction of travel in rad."""

        self.width = float(width)
        """float: lane width in m."""

    def position(self, s: Union[float, np.ndarray]) -> np.ndarray:
        """Horizontal positions at arc lengths s (taken modulo the lane length)."""
        s = np.mod(np.asarray(s, dtype=float), self.length)
        return self.origin + s[..., None] * self.axis

    def polyline(self) -> np.ndarray:
        """End points of the centerline, shape (2, 2)."""
        return np.stack([self.origin, self.origin + self.length * self.axis])


class NetworkLayout:
    """BS positions, lanes and periodic extension of a scenario."""

    def __init__(
        self,
        scenario: Literal["freeway", "manhattan"],
        bs_positions: np.ndarray,
        lanes: list[Lane],
        period: tuple[Optional[float], Optional[float]],
        bs_orientation: Optional[np.ndarray] = None,
    ) -> None:
        self.scenario = scenario
        """str: scenario name."""

        self.bs_positions = np.asarray(bs_positions, dtype=float)
        """np.ndarray: BS antenna positions, shape (L, 3)."""

        self.lanes = lanes
        """list of Lane: lanes of the road network."""

        self.period = period
        """tuple: wrap-around periods in x and y, None if not periodic."""

        self.bs_orientation = (
            np.full(self.L, agingmimo.constants.ARRAY_ORIENTATION)
            if bs_orientation is None
            else np.asarray(bs_orientation, dtype=float)
        )
        """np.ndarray: array orientation alpha of each BS."""

    @property
    def L(self) -> int:
        return self.bs_positions.shape[0]

    def minimal_image(self, delta: np.ndarray) -> np.ndarray:
        """Shortest representative of horizontal displacements on the torus."""
        delta = np.array(delta, dtype=float)
        for axis, period in enumerate(self.period):
            if period is not None:
                delta[..., axis] -= period * np.round(delta[..., axis] / period)
        return delta

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "bs_positions": self.bs_positions.tolist(),
            "bs_orientation": self.bs_orientation.tolist(),
            "period": list(self.period),
            "lanes": [
                {
                    "polyline": lane.polyline().tolist(),
                    "gamma": lane.gamma,
                    "width": lane.width,
                }
                for lane in self.lanes
            ],
        }


def build_freeway(
    num_bs: int = 2,
    isd: float = 1732.0,
    bs_distance: float = 35.0,
    bs_height: float = 35.0,
    num_lanes: int = 6,
    lane_width: float = 4.0,
) -> NetworkLayout:
    """Freeway layout.

    The road occupies 0 <= y <= num_lanes * lane_width; lane i (counted from the BS
    side) has its centerline at y = (i - 1/2) lane_width. BSs are placed at
    y = -bs_distance, with x positions (l + 1/2) isd, i.e. 866 m and 2598 m for the
    reference layout. The road wraps around with period num_bs * isd, so the
    layout equals the one with BSs at x = l isd shifted by isd / 2 along the road.

    Args:
        num_bs (int): number of BSs
        isd (float): inter-site distance in m
        bs_distance (float): distance of the BS line from the road in m
        bs_height (float): BS antenna height in m
        num_lanes (int): number of lanes, an even number
        lane_width (float): lane width in m

    Returns:
        NetworkLayout: layout

    """
    period = num_bs * isd
    bs_positions = np.column_stack(
        [
            (np.arange(num_bs) + 0.5) * isd,
            np.full(num_bs, -bs_distance),
            np.full(num_bs, bs_height),
        ]
    )
    lanes = []
    for i in range(num_lanes):
        gamma = np.pi if i < num_lanes // 2 else 0.0
        origin = (0.0, (i + 0.5) * lane_width)
        lanes.append(Lane(origin, (1.0, 0.0), period, gamma, lane_width))
    return NetworkLayout("freeway", bs_positions, lanes, (period, None))


def build_manhattan(
    grid: tuple[int, int] = (3, 3),
    block: tuple[float, float] = (250.0, 433.0),
    street_width: float = 20.0,
    bs_height: float = 25.0,
    num_lanes: int = 4,
    lane_width: float = 3.5,
) -> NetworkLayout:
    """Manhattan grid layout.

    Street centerlines run at x = i * pitch_x and y = j * pitch_y, where the pitch is
    block size plus street width. BSs sit at the centers of the blocks. Lanes are
    offset symmetrically from the street centerline, the outermost lane followed by
    the sidewalk. Traffic circulates counterclockwise around every block.

    Args:
        grid (tuple of int): number of blocks in x and y
        block (tuple of float): block size in m
        street_width (float): street width in m
        bs_height (float): BS antenna height in m
        num_lanes (int): lanes per street, an even number
        lane_width (float): lane width in m

    Returns:
        NetworkLayout: layout

    """
    nx, ny = grid
    pitch_x = block[0] + street_width
    pitch_y = block[1] + street_width
    period_x, period_y = nx * pitch_x, ny * pitch_y

    centers_x = (np.arange(nx) + 0.5) * pitch_x
    centers_y = (np.arange(ny) + 0.5) * pitch_y
    X, Y = np.meshgrid(centers_x, centers_y, indexing="ij")
    bs_positions = np.column_stack([X.ravel(), Y.ravel(), np.full(nx * ny, bs_height)])

    offsets = (np.arange(num_lanes) - (num_lanes - 1) / 2) * lane_width
    lanes = []
    for j in range(ny):
        for offset in offsets:
            # Above the centerline: lower edge of the next block, eastbound
            gamma = 0.0 if offset > 0 else np.pi
            lanes.append(
                Lane((0.0, j * pitch_y + offset), (1.0, 0.0), period_x, gamma, lane_width)
            )
    for i in range(nx):
        for offset in offsets:
            # Right of the centerline: left edge of the next block, southbound
            gamma = -np.pi / 2 if offset > 0 else np.pi / 2
            lanes.append(
                Lane((i * pitch_x + offset, 0.0), (0.0, 1.0), period_y, gamma, lane_width)
            )
    return NetworkLayout("manhattan", bs_positions, lanes, (period_x, period_y))


def build_layout(scenario: Literal["freeway", "manhattan"]) -> NetworkLayout:
    """Reference layout of the given scenario."""
    if scenario == "freeway":
        return build_freeway()
    elif scenario == "manhattan":
        return build_manhattan()
    else:
        raise agingmimo.ConfigError(f"Unknown scenario {scenario}.")


def wrap_distance(
    layout: NetworkLayout, a: np.ndarray, b: np.ndarray
) -> Union[float, np.ndarray]:
    """3D distance between points under the wrap-around of the layout.

    Args:
        layout (NetworkLayout): layout defining the periods
        a (np.ndarray): point(s) with shape (..., 3)
        b (np.ndarray): point(s) with shape (..., 3)

    Returns:
        float or np.ndarray: distance(s)

    """
    delta = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
    horizontal = layout.minimal_image(delta[..., :2])
    return np.sqrt(np.sum(horizontal**2, axis=-1) + delta[..., 2] ** 2)[()]


def central_angles(
    bs: np.ndarray, vue: np.ndarray, layout: NetworkLayout
) -> tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """Mean AoD phi_c (direction from VUE to BS) and mean AoA theta_c = phi_c + pi.

    Args:
        bs (np.ndarray): BS position(s), shape (..., 3)
        vue (np.ndarray): VUE position(s), shape (..., 3)
        layout (NetworkLayout): layout defining the periods

    Returns:
        tuple: phi_c and theta_c in [-pi, pi)

    Raises:
        CoincidentPositions: if BS and VUE share their horizontal position

    """
    delta = layout.minimal_image(
        np.asarray(bs, dtype=float)[..., :2] - np.asarray(vue, dtype=float)[..., :2]
    )
    if np.any(np.all(delta == 0, axis=-1)):
        raise agingmimo.CoincidentPositions("BS and VUE coincide horizontally.")
    phi_c = agingmimo.normalize_angle(np.arctan2(delta[..., 1], delta[..., 0]))
    theta_c = agingmimo.normalize_angle(phi_c + np.pi)
    return phi_c, theta_c
