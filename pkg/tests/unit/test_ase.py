"""Unit tests for the Monte Carlo ASE over block lengths, at reduced size."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

import agingmimo

C_GRID = np.arange(60, 301, 40)


def _setup(**kwargs):
    options = dict(n_drops=2, n_channel=1, stride=20, noise_power=4e-16)
    options.update(kwargs)
    return agingmimo.SimulationSetup(agingmimo.ArrayGeometry(2), **options)


@pytest.fixture
def point():
    return agingmimo.SweepPoint("freeway", "mr", 35.0, 15.0, 33.33)


def test_setup_validation():
    with pytest.raises(agingmimo.ConfigError):
        _setup(n_drops=0)


def test_drops_are_reproducible(point):
    setup = _setup()
    first = setup.generate_drop(point, 1)
    second = _setup().generate_drop(point, 1)
    assert np.array_equal(first.vue_positions, second.vue_positions)
    assert np.array_equal(first.shadow_db, second.shadow_db)
    other = setup.generate_drop(point, 0)
    assert not np.array_equal(other.shadow_db[:, :3], first.shadow_db[:, :3])


def test_non_aging_curve_increases(point):
    """Without aging, longer blocks only reduce the pilot overhead."""
    setup = _setup(non_aging=True)
    curve = agingmimo.ase_curve(point, setup, C_GRID, refine=None)
    assert np.array_equal(curve.c_grid, C_GRID)
    assert np.all(np.diff(curve.ase_mean) > 0)
    ratio = curve.ase_mean / ((C_GRID - setup.T) / C_GRID)
    assert np.allclose(ratio, ratio[0])


def test_combiners_share_realizations(point):
    setup = _setup()
    curves = agingmimo.ase_curves(point, setup, C_GRID, ("mr", "mmse"), refine=None)
    alone = agingmimo.ase_curve(point, setup, C_GRID, refine=None)
    assert np.array_equal(curves["mr"].ase_mean, alone.ase_mean)
    assert curves["mmse"].point.combiner == "mmse"
    assert np.all(curves["mmse"].ase_mean >= curves["mr"].ase_mean * (1 - 1e-12))


def test_threads_do_not_change_results(point):
    setup = _setup()
    sequential = agingmimo.point_samples(point, setup, 100)
    with ThreadPoolExecutor(max_workers=3) as executor:
        parallel = agingmimo.point_samples(point, setup, 100, executor)
    assert sequential["mr"].shape == (2, 100)
    assert np.array_equal(sequential["mr"], parallel["mr"])


def test_ase_at_matches_curve(point):
    setup = _setup(stride=1)
    c_grid = np.array([50, 60, 70])
    curve = agingmimo.ase_curve(point, setup, c_grid, refine=None)
    mean, stderr = agingmimo.ase_at(point, 70, setup)
    assert np.isclose(mean, curve.ase_at(70)[0])
    assert np.isclose(stderr, curve.ase_at(70)[1])


def test_refined_curve(point):
    setup = _setup()
    curve = agingmimo.ase_curve(point, setup, C_GRID, refine=(5, 20))
    assert set(C_GRID) <= set(curve.c_grid)
    assert curve.c_grid.size > C_GRID.size
    assert curve.c_opt in curve.c_grid
    assert curve.ase_mean[list(curve.c_grid).index(curve.c_opt)] == np.max(curve.ase_mean)


def test_drop_user_se(point):
    setup = _setup()
    drop, block = agingmimo.drop_user_se(point, setup, 0, 140)
    assert block.shape == (1, drop.K)
    assert np.all(block >= 0)
    # Consistent with the summed samples of the same drop
    samples = agingmimo.drop_samples(point, setup, 0, 100)["mr"]
    expected = agingmimo.cumulative_block_se(samples, np.array([140]), setup.T)
    assert np.isclose(block.sum(), expected[0, 0])


def test_ase_statistics():
    samples = np.ones((4, 20))
    mean, stderr = agingmimo.ase_statistics(samples, np.array([11, 30]), 10, 2)
    assert np.allclose(mean, [1 / 22, 20 / 60])
    assert np.allclose(stderr, 0)
    _, stderr = agingmimo.ase_statistics(samples[:1], np.array([30]), 10, 2)
    assert stderr[0] == 0


def test_find_copt():
    c_grid = np.array([60, 80, 100, 120])
    assert agingmimo.find_copt(c_grid, np.array([1.0, 3.0, 2.0, 0.5])) == 80
    # Ties go to the smaller block length
    assert agingmimo.find_copt(c_grid, np.array([1.0, 3.0, 3.0, 0.5])) == 80
    # Unsorted grids are sorted first
    assert agingmimo.find_copt(c_grid[::-1], np.array([0.5, 2.0, 3.0, 1.0])) == 80

    with pytest.warns(UserWarning):
        assert agingmimo.find_copt(c_grid, np.array([1.0, 2.0, 3.0, 4.0])) == 120
    with pytest.raises(agingmimo.EmptyCurve):
        agingmimo.find_copt(c_grid[:2], np.array([1.0, 2.0]))
