"""Unit tests for path loss and shadowing."""

import numpy as np
import pytest

import agingmimo


def test_gain_db():
    assert np.isclose(agingmimo.gain_db(1.0), -34.53)
    assert np.isclose(agingmimo.gain_db(100.0, 3.0), -34.53 - 76.0 + 3.0)
    gains = agingmimo.gain_db(np.array([10.0, 100.0]))
    assert np.isclose(gains[0] - gains[1], 38.0)

    with pytest.raises(agingmimo.DomainError):
        agingmimo.gain_db(0.0)


def test_path_gain():
    link = agingmimo.path_gain(250.0, -2.0)
    assert np.isclose(link.gain_linear, 10 ** (link.gain_db / 10))
    assert np.isclose(agingmimo.db_to_linear(-30.0), 1e-3)


def test_shadowing_statistics():
    rng = np.random.default_rng(11)
    shadow = agingmimo.draw_shadowing(rng, 20000)
    assert abs(np.mean(shadow)) < 0.2
    assert abs(np.std(shadow) - 10.0) < 0.2
