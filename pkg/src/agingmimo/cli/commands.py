"""Subcommands of the command line front end.

Each command takes a configuration, an output directory and, where drops are
simulated, an optional executor owned by the caller. Commands return the paths
of the files they wrote.

"""

from __future__ import annotations

import logging
import time
from concurrent.futures import Executor
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

import agingmimo
from agingmimo.cli.config import RunConfig
from agingmimo.cli.io import (
    CSV_SCHEMAS,
    completed_points,
    validate_csv,
    validate_json,
    write_csv,
    write_json,
)

logger = logging.getLogger(__name__)

SWEEP_DTYPES: dict[str, type] = {
    "point_id": int,
    "scenario": str,
    "combiner": str,
    "sigma_T_deg": float,
    "sigma_R_deg": float,
    "v": float,
    "C": int,
    "ase_mean": float,
    "ase_stderr": float,
}


def _mean_stderr(samples: np.ndarray) -> tuple[float, float]:
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < 2:
        return float(np.mean(samples)), 0.0
    return float(np.mean(samples)), float(np.std(samples, ddof=1) / np.sqrt(samples.size))


# ! ---- Space-time correlation


def cmd_stcc(config: RunConfig, out_dir: Union[str, Path]) -> list[Path]:
    """Tabulate the STCC of adjacent antennas for all presets.

    One CSV per preset with columns (d, tau, abs_stcc, re, im), the spacing
    varying slowest.

    """
    start = time.perf_counter()
    out_dir = Path(out_dir)
    config_hash = config.config_hash()
    spacings = np.linspace(0.0, config.stcc.d_max, config.stcc.num_d)
    taus = np.linspace(0.0, config.stcc.tau_max, config.stcc.num_tau)
    d, tau = np.meshgrid(spacings, taus, indexing="ij")

    paths = []
    for name in agingmimo.STCC_PRESETS:
        profile, v = agingmimo.preset_profile(name)
        surface = agingmimo.stcc_surface(profile, v, spacings, taus, config.array.f_c)
        frame = pd.DataFrame(
            {
                "d": d.ravel(),
                "tau": tau.ravel(),
                "abs_stcc": np.abs(surface).ravel(),
                "re": surface.real.ravel(),
                "im": surface.imag.ravel(),
            }
        )
        paths.append(write_csv(out_dir / f"stcc_{name}.csv", frame, "stcc", config_hash))
        logger.info(f"STCC surface {name} written.")

    paths.append(
        write_json(
            out_dir / "stcc.json",
            {"presets": agingmimo.STCC_PRESETS, "f_c": config.array.f_c},
            "stcc",
            config_hash,
            time.perf_counter() - start,
        )
    )
    return paths


# ! ---- Single operating point


def cmd_se(
    config: RunConfig,
    out_dir: Union[str, Path],
    executor: Optional[Executor] = None,
    verbose: bool = False,
) -> list[Path]:
    """Per-user SE of the first drop and the ASE over all drops at one (point, C).

    The CSV holds one row per VUE of the first drop with its block SE averaged
    over the channel realizations; the footer reports the ASE over all drops and
    realizations. The JSON mirror adds the NMSE of every VUE at the last data
    symbol and its contamination-free bound.

    """
    start = time.perf_counter()
    out_dir = Path(out_dir)
    config_hash = config.config_hash()
    setup = config.setup(verbose)
    point = config.operating_point()
    C = config.point.C
    agingmimo.check_block(C, setup.T)

    def task(drop_index: int) -> tuple[agingmimo.NetworkDrop, np.ndarray]:
        return agingmimo.drop_user_se(point, setup, drop_index, C)

    drops = range(setup.n_drops)
    results = [task(d) for d in drops] if executor is None else list(executor.map(task, drops))

    L = setup.layouts[point.scenario].L
    ase_samples = np.concatenate([agingmimo.ase(block, L) for _, block in results])
    ase_mean, ase_stderr = _mean_stderr(ase_samples)

    drop, block = results[0]
    users = []
    for k in range(drop.K):
        l = int(drop.serving[k])
        nmse, nmse_npc = drop.nmse(k, C - setup.T)
        users.append(
            {
                "vue_id": k,
                "bs_id": l,
                "pilot": int(drop.pilots.pilot_of[k]),
                "G_db": float(drop.gain_db[l, k]),
                "block_se": float(np.mean(block[:, k])),
                "nmse": nmse,
                "nmse_npc": nmse_npc,
            }
        )
    frame = pd.DataFrame(users, columns=list(CSV_SCHEMAS["se"]) + ["nmse", "nmse_npc"])

    paths = [
        write_csv(
            out_dir / "se.csv",
            frame[list(CSV_SCHEMAS["se"])],
            "se",
            config_hash,
            footer=[f"ase={ase_mean:.17g} stderr={ase_stderr:.17g}"],
        )
    ]
    paths.append(
        write_json(
            out_dir / "se.json",
            {
                "point": point.to_dict(),
                "C": C,
                "ase_mean": ase_mean,
                "ase_stderr": ase_stderr,
                "n_samples": int(ase_samples.size),
                "users": users,
            },
            "se",
            config_hash,
            time.perf_counter() - start,
        )
    )
    logger.info(f"{point}, C = {C}: ASE {ase_mean:.4f} +- {ase_stderr:.4f}.")
    return paths


# ! ---- Sweeps


def _curve_rows(point_id: int, curve: agingmimo.AseCurve) -> pd.DataFrame:
    size = curve.c_grid.size
    return pd.DataFrame(
        {
            "point_id": np.full(size, point_id),
            "scenario": [curve.point.scenario] * size,
            "combiner": [curve.point.combiner] * size,
            "sigma_T_deg": np.full(size, curve.point.sigma_T_deg),
            "sigma_R_deg": np.full(size, curve.point.sigma_R_deg),
            "v": np.full(size, curve.point.v),
            "C": curve.c_grid,
            "ase_mean": curve.ase_mean,
            "ase_stderr": curve.ase_stderr,
        }
    )


def _sweep_frame(frames: list[pd.DataFrame]) -> pd.DataFrame:
    frames = [frame for frame in frames if len(frame) > 0]
    if len(frames) == 0:
        return pd.DataFrame(columns=list(CSV_SCHEMAS["ase_sweep"]))
    frame = pd.concat(frames, ignore_index=True).astype(SWEEP_DTYPES)
    return frame.sort_values(["point_id", "C"], kind="stable").reset_index(drop=True)


def copt_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Maximizing block length of every sweep point of a sweep table."""
    rows = []
    for point_id, group in frame.groupby("point_id", sort=True):
        first = group.iloc[0]
        rows.append(
            {
                "point_id": int(point_id),
                "scenario": first["scenario"],
                "combiner": first["combiner"],
                "sigma_T_deg": float(first["sigma_T_deg"]),
                "sigma_R_deg": float(first["sigma_R_deg"]),
                "v": float(first["v"]),
                "c_opt": agingmimo.find_copt(
                    group["C"].to_numpy(), group["ase_mean"].to_numpy()
                ),
            }
        )
    return pd.DataFrame(rows)


def enumerate_points(config: RunConfig) -> list[tuple[int, agingmimo.SweepPoint]]:
    """Sweep points of all scenarios and combiners with stable integer ids."""
    points = []
    for scenario in config.sweep.scenarios:
        for base in config.sweep_points(scenario):
            for combiner in config.sweep.combiners:
                point = agingmimo.SweepPoint(
                    base.scenario, combiner, base.sigma_T_deg, base.sigma_R_deg, base.v
                )
                points.append((len(points), point))
    return points


def cmd_ase_sweep(
    config: RunConfig,
    out_dir: Union[str, Path],
    executor: Optional[Executor] = None,
    resume: bool = False,
    verbose: bool = False,
) -> list[Path]:
    """ASE curves over the block-length grid for all sweep points.

    The CSV is rewritten after every operating point; with resume, points already
    present in a CSV of the same configuration are skipped. All combiners of an
    operating point share drops and realizations. The JSON summary lists the
    maximizing block length of every point.

    """
    start = time.perf_counter()
    out_dir = Path(out_dir)
    config_hash = config.config_hash()
    csv_path = out_dir / "ase_sweep.csv"

    existing = completed_points(csv_path, config_hash) if resume else None
    frames = [] if existing is None else [existing]
    done = set() if existing is None else set(existing["point_id"].astype(int))

    setup = config.setup(verbose)
    c_grid = config.c_grid()
    points = enumerate_points(config)
    by_location: dict[tuple, list[tuple[int, agingmimo.SweepPoint]]] = {}
    for point_id, point in points:
        by_location.setdefault(point.key(), []).append((point_id, point))

    for group in by_location.values():
        if all(point_id in done for point_id, _ in group):
            logger.info(f"{group[0][1]}: already in {csv_path}, skipped.")
            continue
        combiners = [point.combiner for _, point in group]
        curves = agingmimo.ase_curves(
            group[0][1], setup, c_grid, combiners, config.refinement(), executor
        )
        for point_id, point in group:
            if point_id not in done:
                frames.append(_curve_rows(point_id, curves[point.combiner]))
        write_csv(csv_path, _sweep_frame(frames), "ase_sweep", config_hash)

    frame = _sweep_frame(frames)
    write_csv(csv_path, frame, "ase_sweep", config_hash)
    table = copt_table(frame) if len(frame) > 0 else pd.DataFrame()
    json_path = write_json(
        out_dir / "ase_sweep.json",
        {"points": table.to_dict(orient="records"), "c_grid": c_grid},
        "ase_sweep",
        config_hash,
        time.perf_counter() - start,
    )
    return [csv_path, json_path]


def cmd_copt_fit(
    config: RunConfig,
    out_dir: Union[str, Path],
    sweep_file: Optional[Union[str, Path]] = None,
) -> list[Path]:
    """Fit the block-length model per scenario and combiner to sweep maximizers.

    Args:
        config (RunConfig): configuration
        out_dir (str or Path): output directory
        sweep_file (str or Path, optional): sweep CSV, defaults to the one in
            out_dir

    Returns:
        list of Path: written JSON file

    """
    start = time.perf_counter()
    out_dir = Path(out_dir)
    sweep_file = out_dir / "ase_sweep.csv" if sweep_file is None else Path(sweep_file)
    if not sweep_file.exists():
        raise agingmimo.ConfigError(f"Sweep results {sweep_file} not found.")
    sweep_hash = validate_csv(sweep_file, "ase_sweep")
    table = copt_table(pd.read_csv(sweep_file, comment="#", float_precision="round_trip"))

    models = []
    for (scenario, combiner), group in table.groupby(["scenario", "combiner"], sort=True):
        model = agingmimo.fit_copt_model(group)
        models.append(
            {"scenario": scenario, "combiner": combiner, "n_points": len(group)}
            | model.to_dict()
        )
        logger.info(f"{scenario}/{combiner}: {model}, R2bar = {model.r2bar:.3f}.")

    path = write_json(
        out_dir / "copt_fit.json",
        {"models": models, "sweep_config_hash": sweep_hash},
        "copt_fit",
        config.config_hash(),
        time.perf_counter() - start,
    )
    return [path]


def load_models(fit_file: Optional[Union[str, Path]] = None) -> dict:
    """Block-length models from a fit file, or the reference models."""
    if fit_file is None:
        return dict(agingmimo.REFERENCE_MODELS)
    document = validate_json(fit_file, "copt_fit")
    return {
        (entry["scenario"], entry["combiner"]): agingmimo.FitModel.from_dict(entry)
        for entry in document["models"]
    }


def cmd_delta_ase(
    config: RunConfig,
    out_dir: Union[str, Path],
    executor: Optional[Executor] = None,
    verbose: bool = False,
) -> list[Path]:
    """ASE gain of the model-predicted block length over the coherence baseline.

    Models are read from the fit file of the configuration, if any, and default
    to the reference models.

    """
    out_dir = Path(out_dir)
    config_hash = config.config_hash()
    models = load_models(config.sweep.fit_file)
    setup = config.setup(verbose)

    rows = []
    for point_id, point in enumerate_points(config):
        model = models.get((point.scenario, point.combiner))
        if model is None:
            raise agingmimo.ConfigError(
                f"No block length model for {point.scenario}/{point.combiner}."
            )
        result = agingmimo.delta_ase(point, model, setup, config.sweep.baseline, executor)
        rows.append({"point_id": point_id} | result.to_dict())
        logger.info(f"{point}: delta ASE {result.delta:.4f} +- {result.stderr:.4f}.")

    frame = pd.DataFrame(rows, columns=list(CSV_SCHEMAS["delta_ase"]))
    return [write_csv(out_dir / "delta_ase.csv", frame, "delta_ase", config_hash)]


# ! ---- Layout


def cmd_layout_dump(config: RunConfig, out_dir: Union[str, Path]) -> list[Path]:
    """Layout, VUEs and associations of the first drop of the operating point."""
    start = time.perf_counter()
    setup = config.setup()
    point = config.operating_point()
    drop = setup.generate_drop(point, 0)
    payload = {"point": point.to_dict()} | agingmimo.layout_dump(drop)
    path = write_json(
        Path(out_dir) / "layout.json",
        payload,
        "layout",
        config.config_hash(),
        time.perf_counter() - start,
    )
    return [path]
