"""Unit tests for writing and validating emitted files."""

import json

import numpy as np
import pandas as pd
import pytest

import agingmimo
from agingmimo.cli import io

HASH = "0123456789abcdef0123456789abcdef01234567"


def _stcc_frame():
    return pd.DataFrame(
        {
            "d": [0.0, 0.075],
            "tau": [0.0, 1e-3],
            "abs_stcc": [1.0, 1 / 3],
            "re": [1.0, 0.1],
            "im": [0.0, -0.2],
        }
    )


def test_csv_layout(tmp_path):
    path = io.write_csv(tmp_path / "a.csv", _stcc_frame(), "stcc", HASH, footer=["note"])
    lines = path.read_text().splitlines()
    assert lines[0] == f"# config_hash={HASH}"
    assert lines[1] == "d,tau,abs_stcc,re,im"
    assert lines[-1] == "# note"
    # 17 significant digits
    assert "0.33333333333333331" in lines[3]

    frame, stored_hash = io.read_csv(path, "stcc")
    assert stored_hash == HASH
    assert frame["abs_stcc"].iloc[1] == 1 / 3
    io.validate_file(path)


def test_csv_rewrite_is_byte_identical(tmp_path):
    """Values read back from a CSV are written out with the same digits."""
    frame = _stcc_frame()
    frame["abs_stcc"] = [0.34377310542938255, 2.3193764487156012]
    frame["re"] = [np.pi / 7, 1e-17 / 3]
    first = io.write_csv(tmp_path / "first.csv", frame, "stcc", HASH)

    parsed, _ = io.read_csv(first, "stcc")
    assert np.array_equal(parsed.to_numpy(), frame.to_numpy())
    second = io.write_csv(tmp_path / "second.csv", parsed, "stcc", HASH)
    assert first.read_bytes() == second.read_bytes()


def test_csv_schema_errors(tmp_path):
    with pytest.raises(agingmimo.SchemaError):
        io.write_csv(tmp_path / "b.csv", _stcc_frame()[["tau", "d"]], "stcc", HASH)

    path = tmp_path / "c.csv"
    path.write_text("d,tau,abs_stcc,re,im\n0,0,1,1,0\n")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_csv(path, "stcc")

    path.write_text(f"# config_hash={HASH}\nd,tau,abs_stcc,re\n0,0,1,1\n")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_csv(path, "stcc")

    path.write_text(f"# config_hash={HASH}\nd,tau,abs_stcc,re,im\n0,0,1,x,0\n")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_csv(path, "stcc")

    path.write_text("# config_hash=xyz\nd,tau,abs_stcc,re,im\n0,0,1,1,0\n")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_csv(path, "stcc")


def test_json_layout(tmp_path):
    payload = {"models": [{"coefficients": np.array([1.0, 2.0])}], "extra": np.float64(2.5)}
    path = io.write_json(tmp_path / "fit.json", payload, "copt_fit", HASH, 1.5)
    document = io.validate_json(path, "copt_fit")
    assert document["schema_version"] == io.SCHEMA_VERSION
    assert document["generator_family"] == "PCG64"
    assert document["models"][0]["coefficients"] == [1.0, 2.0]
    assert document["extra"] == 2.5
    io.validate_file(path)

    with pytest.raises(agingmimo.SchemaError):
        io.validate_json(path, "se")
    with pytest.raises(agingmimo.SchemaError):
        io.write_json(tmp_path / "bad.json", {}, "copt_fit", HASH)


def test_json_schema_errors(tmp_path):
    path = tmp_path / "fit.json"
    path.write_text("{")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_json(path, "copt_fit")

    io.write_json(path, {"models": []}, "copt_fit", HASH)
    document = json.loads(path.read_text())
    document["schema_version"] = 2
    path.write_text(json.dumps(document))
    with pytest.raises(agingmimo.SchemaError):
        io.validate_json(path, "copt_fit")


def test_validate_file_unknown(tmp_path):
    path = tmp_path / "notes.txt"
    path.write_text("hello")
    with pytest.raises(agingmimo.SchemaError):
        io.validate_file(path)


def test_completed_points(tmp_path):
    path = tmp_path / "ase_sweep.csv"
    assert len(io.completed_points(path, HASH)) == 0

    frame = pd.DataFrame(
        {
            "point_id": [0, 0],
            "scenario": ["freeway"] * 2,
            "combiner": ["mr"] * 2,
            "sigma_T_deg": [35.0] * 2,
            "sigma_R_deg": [15.0] * 2,
            "v": [33.33] * 2,
            "C": [60, 80],
            "ase_mean": [1.5, 1.7],
            "ase_stderr": [0.1, 0.1],
        }
    )
    io.write_csv(path, frame, "ase_sweep", HASH)
    done = io.completed_points(path, HASH)
    assert list(done["C"]) == [60, 80]
    assert done["v"].iloc[0] == 33.33

    with pytest.raises(agingmimo.ConfigError):
        io.completed_points(path, "f" * 40)
