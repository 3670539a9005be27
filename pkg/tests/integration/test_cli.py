"""End-to-end runs of the command line front end at reduced size.

All runs use a two-antenna array, two drops with a single channel realization
each, and a decimated symbol axis.

"""

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

import agingmimo
from agingmimo.cli import commands, io
from agingmimo.cli.config import RunConfig
from agingmimo.cli.main import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_SUCCESS,
    build_parser,
    configure,
    main,
)

SMALL_CONFIG = {
    "array": {"M": 2},
    "point": {"C": 120},
    "sweep": {
        "scenarios": ["freeway"],
        "combiners": ["mr", "mmse"],
        "sigmas_T": [35.0],
        "sigmas_R": [15.0],
        "speeds": {"freeway": [27.78, 33.33]},
        "c_start": 60,
        "c_stop": 220,
        "c_step": 40,
        "refine": False,
    },
    "stcc": {"num_d": 4, "num_tau": 5},
    "monte_carlo": {"master_seed": 3, "n_drops": 2, "n_channel": 1, "stride": 20},
}


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(SMALL_CONFIG))
    return path


def _run(command, config_file, out, *extra):
    return main([command, "--config", str(config_file), "--out", str(out), *extra])


def test_stcc(config_file, tmp_path):
    out = tmp_path / "stcc"
    assert _run("stcc", config_file, out) == EXIT_SUCCESS
    files = sorted(out.iterdir())
    assert len(files) == len(agingmimo.STCC_PRESETS) + 1
    for path in files:
        io.validate_file(path)

    frame, _ = io.read_csv(out / "stcc_isotropic_v33.33.csv", "stcc")
    assert len(frame) == 20
    assert np.isclose(frame["abs_stcc"].iloc[0], 1)
    assert np.allclose(frame["abs_stcc"], np.abs(frame["re"] + 1j * frame["im"]))


def test_se(config_file, tmp_path):
    out = tmp_path / "se"
    assert _run("se", config_file, out) == EXIT_SUCCESS
    io.validate_file(out / "se.csv")
    document = io.validate_json(out / "se.json", "se")

    lines = (out / "se.csv").read_text().splitlines()
    assert lines[-1].startswith("# ase=")
    frame, _ = io.read_csv(out / "se.csv", "se")
    assert len(frame) == len(document["users"])
    assert np.all(frame["block_se"] >= 0)
    assert document["ase_mean"] > 0
    for user in document["users"]:
        assert user["nmse_npc"] <= user["nmse"] + 1e-12


def test_threads_give_identical_files(config_file, tmp_path):
    for threads in ["1", "3"]:
        out = tmp_path / f"threads{threads}"
        assert _run("ase-sweep", config_file, out, "--threads", threads) == EXIT_SUCCESS
        assert _run("se", config_file, out, "--threads", threads) == EXIT_SUCCESS

    for name in ["ase_sweep.csv", "se.csv"]:
        first = (tmp_path / "threads1" / name).read_bytes()
        assert first == (tmp_path / "threads3" / name).read_bytes()


def test_ase_sweep_and_resume(config_file, tmp_path):
    full = tmp_path / "full"
    assert _run("ase-sweep", config_file, full) == EXIT_SUCCESS
    io.validate_file(full / "ase_sweep.csv")
    document = io.validate_json(full / "ase_sweep.json", "ase_sweep")
    assert len(document["points"]) == 4

    frame, config_hash = io.read_csv(full / "ase_sweep.csv", "ase_sweep")
    assert config_hash == RunConfig.from_dict(SMALL_CONFIG).config_hash()
    assert sorted(set(frame["point_id"])) == [0, 1, 2, 3]
    assert list(frame[frame["point_id"] == 0]["C"]) == [60, 100, 140, 180, 220]
    # Both combiners of a location share the realizations
    mr = frame[frame["point_id"] == 0]["ase_mean"].to_numpy()
    mmse = frame[frame["point_id"] == 1]["ase_mean"].to_numpy()
    assert np.all(mmse >= mr * (1 - 1e-12))

    # Interrupted run: only the first location is on disk
    partial = tmp_path / "partial"
    partial.mkdir()
    lines = (full / "ase_sweep.csv").read_text().splitlines(keepends=True)
    kept = lines[:2] + [line for line in lines[2:] if line.split(",")[0] in ("0", "1")]
    (partial / "ase_sweep.csv").write_text("".join(kept))
    assert _run("ase-sweep", config_file, partial, "--resume") == EXIT_SUCCESS
    assert (partial / "ase_sweep.csv").read_bytes() == (full / "ase_sweep.csv").read_bytes()

    # Resuming a file of another configuration is refused
    assert _run("ase-sweep", config_file, partial, "--resume", "--seed", "4") == EXIT_CONFIG


def test_copt_fit_from_sweep(config_file, tmp_path):
    out = tmp_path / "fit"
    assert _run("copt-fit", config_file, out) == EXIT_CONFIG

    # Maximizers placed at the rounded reference prediction
    model = agingmimo.REFERENCE_MODELS[("manhattan", "mmse")]
    frames = []
    points = agingmimo.sweep_points("manhattan", "mmse")
    for point_id, point in enumerate(points):
        c_opt = model.predict(point)
        c_grid = np.array([c_opt - 10, c_opt, c_opt + 10])
        frames.append(
            pd.DataFrame(
                {
                    "point_id": point_id,
                    "scenario": point.scenario,
                    "combiner": point.combiner,
                    "sigma_T_deg": point.sigma_T_deg,
                    "sigma_R_deg": point.sigma_R_deg,
                    "v": point.v,
                    "C": c_grid,
                    "ase_mean": 5.0 - ((c_grid - c_opt) / 100) ** 2,
                    "ase_stderr": 0.0,
                }
            )
        )
    sweep_file = io.write_csv(
        tmp_path / "sweep.csv", pd.concat(frames, ignore_index=True), "ase_sweep", "a" * 40
    )

    assert _run("copt-fit", config_file, out, "--sweep-file", str(sweep_file)) == EXIT_SUCCESS
    document = io.validate_json(out / "copt_fit.json", "copt_fit")
    assert document["sweep_config_hash"] == "a" * 40
    assert len(document["models"]) == 1
    entry = document["models"][0]
    assert (entry["scenario"], entry["combiner"]) == ("manhattan", "mmse")
    assert entry["n_points"] == 64
    assert entry["r2bar"] > 0.99

    fitted = commands.load_models(out / "copt_fit.json")[("manhattan", "mmse")]
    for point in points:
        expected = model(point.v, point.sigma_T_deg, point.sigma_R_deg)
        assert abs(fitted(point.v, point.sigma_T_deg, point.sigma_R_deg) - expected) < 1.0


def test_delta_ase(config_file, tmp_path):
    out = tmp_path / "delta"
    assert _run("delta-ase", config_file, out) == EXIT_SUCCESS
    frame, _ = io.read_csv(out / "delta_ase.csv", "delta_ase")
    assert len(frame) == 4
    assert np.all(frame["c_v"].isin([agingmimo.coherence_block(v) for v in (27.78, 33.33)]))
    assert np.allclose(frame["delta_ase"], frame["ase_star"] - frame["ase_v"])


def test_layout_dump(config_file, tmp_path):
    out = tmp_path / "layout"
    assert _run("layout-dump", config_file, out) == EXIT_SUCCESS
    document = io.validate_json(out / "layout.json", "layout")
    assert document["point"]["scenario"] == "freeway"
    assert document["layout"]["scenario"] == "freeway"
    assert len(document["vues"]) > 0


@pytest.mark.parametrize("flag", ["--paper-fidelity", "--full-scale"])
def test_full_size_flag(config_file, flag):
    parser = build_parser()
    config = configure(parser.parse_args(["se", "--config", str(config_file), flag]))
    assert config.array.M == 100
    assert config.monte_carlo.stride == 8

    config = configure(parser.parse_args(["se", "--config", str(config_file)]))
    assert config.array.M == 2


def test_configuration_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"array": {"antennas": 4}}))
    assert _run("stcc", broken, tmp_path / "a") == EXIT_CONFIG

    infeasible = tmp_path / "infeasible.json"
    density = {"freeway": 0.05, "manhattan": 0.0125}
    infeasible.write_text(json.dumps({"point": {"v": 33.33}, "sweep": {"density": density}}))
    assert _run("layout-dump", infeasible, tmp_path / "b") == EXIT_CONFIG

    with pytest.raises(SystemExit):
        main(["stcc", "--threads", "0"])


def test_numerical_failure(config_file, tmp_path, monkeypatch):
    def failing(config, out_dir):
        raise agingmimo.NotPSD("negative eigenvalue")

    monkeypatch.setattr(commands, "cmd_stcc", failing)
    assert _run("stcc", config_file, tmp_path / "c") == EXIT_NUMERICAL
    assert not Path(tmp_path / "c").exists()
