"""Unit tests for the freeway and Manhattan layouts."""

import numpy as np
import pytest

import agingmimo


def test_freeway():
    layout = agingmimo.build_layout("freeway")
    assert layout.L == 2
    assert len(layout.lanes) == 6
    assert layout.period == (3464.0, None)
    assert np.allclose(layout.bs_positions[:, 1], -35.0)
    assert np.allclose(layout.bs_positions[:, 2], 35.0)
    # BSs half an inter-site distance away from the origin of the periodic road
    assert np.allclose(layout.bs_positions[:, 0], [866.0, 2598.0])
    spacing = agingmimo.wrap_distance(layout, layout.bs_positions[0], layout.bs_positions[1])
    assert np.isclose(spacing, 1732.0)

    directions = [lane.gamma for lane in layout.lanes]
    # The three lanes next to the BSs carry traffic in negative x direction
    assert np.allclose(np.cos(directions), [-1, -1, -1, 1, 1, 1])


def test_manhattan():
    layout = agingmimo.build_layout("manhattan")
    assert layout.L == 9
    assert len(layout.lanes) == 24
    assert np.allclose(layout.period, (810.0, 1359.0))
    assert np.allclose(layout.bs_positions[0], [135.0, 226.5, 25.0])


def test_manhattan_counterclockwise_circulation():
    """Lanes bordering a block circulate counterclockwise around its BS."""
    layout = agingmimo.build_manhattan()
    center = layout.bs_positions[0, :2]
    bordering = [
        lane
        for lane in layout.lanes
        if np.all(lane.origin >= 0) and np.any((lane.origin > 0) & (lane.origin < 20))
    ]
    assert len(bordering) == 4
    for lane in bordering:
        # Point of the lane next to the block
        s = np.dot(center - lane.origin, lane.axis)
        r = lane.position(s) - center
        direction = np.array([np.cos(lane.gamma), np.sin(lane.gamma)])
        assert r[0] * direction[1] - r[1] * direction[0] > 0


def test_unknown_scenario():
    with pytest.raises(agingmimo.ConfigError):
        agingmimo.build_layout("rural")


def test_wrap_distance():
    layout = agingmimo.build_freeway()
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([3463.0, 0.0, 4.0])
    assert np.isclose(agingmimo.wrap_distance(layout, a, b), np.sqrt(4 + 16))

    # No wrap-around across the road
    c = np.array([1.0, 3000.0, 0.0])
    assert np.isclose(agingmimo.wrap_distance(layout, a, c), 3000.0)


def test_central_angles():
    layout = agingmimo.build_freeway()
    bs = np.array([100.0, -35.0, 35.0])
    vue = np.array([100.0, 2.0, 1.5])
    phi_c, theta_c = agingmimo.central_angles(bs, vue, layout)
    assert np.isclose(phi_c, -np.pi / 2)
    assert np.isclose(theta_c, np.pi / 2)

    # Across the wrap-around seam the BS is seen in positive x direction
    phi_c, _ = agingmimo.central_angles(
        np.array([10.0, 0.0, 35.0]), np.array([3454.0, 0.0, 1.5]), layout
    )
    assert np.isclose(phi_c, 0.0)

    with pytest.raises(agingmimo.CoincidentPositions):
        agingmimo.central_angles(bs, np.array([100.0, -35.0, 1.5]), layout)


def test_to_dict():
    data = agingmimo.build_layout("freeway").to_dict()
    assert data["scenario"] == "freeway"
    assert len(data["lanes"]) == 6
    assert data["period"] == [3464.0, None]
    assert np.allclose(data["lanes"][0]["polyline"], [[0.0, 2.0], [3464.0, 2.0]])
