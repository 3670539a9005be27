"""Unit tests for the keyed random substreams."""

import numpy as np
import pytest

import agingmimo


def test_substreams_are_reproducible():
    tree = agingmimo.SeedTree(42)
    first = tree.rng(agingmimo.STAGE_CHANNEL, 1, 2, 3).standard_normal(5)
    # Consuming other streams in between does not matter
    tree.rng(agingmimo.STAGE_DROP, 1).standard_normal(100)
    second = agingmimo.SeedTree(42).rng(agingmimo.STAGE_CHANNEL, 1, 2, 3).standard_normal(5)
    assert np.array_equal(first, second)


def test_substreams_differ():
    tree = agingmimo.SeedTree(42)
    a = tree.rng(agingmimo.STAGE_CHANNEL, 1).standard_normal(5)
    b = tree.rng(agingmimo.STAGE_CHANNEL, 2).standard_normal(5)
    c = agingmimo.SeedTree(43).rng(agingmimo.STAGE_CHANNEL, 1).standard_normal(5)
    assert not np.allclose(a, b)
    assert not np.allclose(a, c)


def test_generator_family():
    assert agingmimo.SeedTree.generator_family == "PCG64"
    assert isinstance(agingmimo.SeedTree(0).rng(1).bit_generator, np.random.PCG64)
    with pytest.raises(ValueError):
        agingmimo.SeedTree(-1)


def test_point_key():
    assert agingmimo.point_key("freeway", 35.0, 15.0, 33.33) == (1, 35000, 15000, 33330)
    assert agingmimo.point_key("manhattan", 5.0, 5.0, 8.33)[0] == 2
