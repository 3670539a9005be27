"""Writers, readers and schema validation of emitted CSV and JSON files.

CSV files start with a comment line carrying the configuration hash, followed by
a fixed header row and the numeric payload printed with 17 significant digits.
Footer lines are comments as well. JSON files wrap their payload with schema
version, kind, configuration hash, generator family and wall-clock metadata.

"""

from __future__ import annotations

import json
import re
import time
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import numpy as np
import pandas as pd

import agingmimo

SCHEMA_VERSION: int = 1

FLOAT_FORMAT: str = "%.17g"

HASH_PREFIX: str = "# config_hash="

CSV_SCHEMAS: dict[str, tuple[str, ...]] = {
    "stcc": ("d", "tau", "abs_stcc", "re", "im"),
    "se": ("vue_id", "bs_id", "pilot", "G_db", "block_se"),
    "ase_sweep": (
        "point_id",
        "scenario",
        "combiner",
        "sigma_T_deg",
        "sigma_R_deg",
        "v",
        "C",
        "ase_mean",
        "ase_stderr",
    ),
    "delta_ase": (
        "point_id",
        "scenario",
        "combiner",
        "sigma_T_deg",
        "sigma_R_deg",
        "v",
        "c_star",
        "c_v",
        "ase_star",
        "ase_v",
        "delta_ase",
        "delta_stderr",
    ),
}
"""dict: header row of each CSV kind."""

TEXT_COLUMNS: tuple[str, ...] = ("scenario", "combiner")

JSON_SCHEMAS: dict[str, tuple[str, ...]] = {
    "se": ("point", "C", "ase_mean", "ase_stderr", "users"),
    "ase_sweep": ("points",),
    "copt_fit": ("models",),
    "layout": ("layout", "vues"),
    "stcc": ("presets",),
}
"""dict: required payload keys of each JSON kind."""

JSON_META: tuple[str, ...] = (
    "schema_version",
    "kind",
    "config_hash",
    "generator_family",
    "created",
    "elapsed_seconds",
)

_HASH_PATTERN = re.compile(r"^[0-9a-f]{40}$")


# ! ---- CSV


def write_csv(
    path: Union[str, Path],
    frame: pd.DataFrame,
    kind: str,
    config_hash: str,
    footer: Sequence[str] = (),
) -> Path:
    """Write a CSV file of the given kind.

    Args:
        path (str or Path): target file
        frame (pd.DataFrame): payload with exactly the columns of the kind
        kind (str): key of CSV_SCHEMAS
        config_hash (str): hash of the generating configuration
        footer (sequence of str): comment lines appended after the payload

    Returns:
        Path: path of the written file

    """
    columns = CSV_SCHEMAS[kind]
    if tuple(frame.columns) != columns:
        raise agingmimo.SchemaError(
            f"Columns {list(frame.columns)} do not match schema {kind}."
        )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(f"{HASH_PREFIX}{config_hash}\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        for line in footer:
            f.write(f"# {line}\n")
    return path


def read_csv(path: Union[str, Path], kind: str) -> tuple[pd.DataFrame, str]:
    """Payload and configuration hash of a CSV file; validates the schema first."""
    config_hash = validate_csv(path, kind)
    frame = pd.read_csv(Path(path), comment="#", float_precision="round_trip")
    return frame, config_hash


def validate_csv(path: Union[str, Path], kind: str) -> str:
    """Check a CSV file against its schema.

    Args:
        path (str or Path): file
        kind (str): key of CSV_SCHEMAS

    Returns:
        str: configuration hash stored in the file

    Raises:
        SchemaError: if hash line, header, row lengths or numeric entries are invalid

    """
    columns = CSV_SCHEMAS[kind]
    with open(Path(path), "r") as f:
        lines = f.read().splitlines()

    if len(lines) < 2 or not lines[0].startswith(HASH_PREFIX):
        raise agingmimo.SchemaError(f"{path}: missing configuration hash line.")
    config_hash = lines[0][len(HASH_PREFIX) :]
    if _HASH_PATTERN.match(config_hash) is None:
        raise agingmimo.SchemaError(f"{path}: malformed configuration hash.")
    if lines[1] != ",".join(columns):
        raise agingmimo.SchemaError(f"{path}: header {lines[1]!r} does not match {kind}.")

    for number, line in enumerate(lines[2:], start=3):
        if line.startswith("#"):
            continue
        entries = line.split(",")
        if len(entries) != len(columns):
            raise agingmimo.SchemaError(f"{path}:{number}: expected {len(columns)} fields.")
        for name, entry in zip(columns, entries):
            if name in TEXT_COLUMNS:
                continue
            try:
                float(entry)
            except ValueError:
                raise agingmimo.SchemaError(f"{path}:{number}: {name}={entry!r} not numeric.")
    return config_hash


# ! ---- JSON


def _to_builtin(value: Any) -> Any:
    """Recursively replace numpy scalars and arrays by builtin types."""
    if isinstance(value, dict):
        return {str(key): _to_builtin(entry) for key, entry in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(entry) for entry in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_json(
    path: Union[str, Path],
    payload: dict,
    kind: str,
    config_hash: str,
    elapsed_seconds: Optional[float] = None,
) -> Path:
    """Write a JSON summary of the given kind.

    Args:
        path (str or Path): target file
        payload (dict): content, containing the required keys of the kind
        kind (str): key of JSON_SCHEMAS
        config_hash (str): hash of the generating configuration
        elapsed_seconds (float, optional): wall-clock duration of the command

    Returns:
        Path: path of the written file

    """
    missing = set(JSON_SCHEMAS[kind]) - set(payload)
    if len(missing) > 0:
        raise agingmimo.SchemaError(f"Payload of {kind} misses {sorted(missing)}.")
    document = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "config_hash": config_hash,
        "generator_family": agingmimo.SeedTree.generator_family,
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "elapsed_seconds": elapsed_seconds,
        **_to_builtin(payload),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(document, f, indent=2)
        f.write("\n")
    return path


def validate_json(path: Union[str, Path], kind: str) -> dict:
    """Check a JSON summary against its schema and return its content.

    Raises:
        SchemaError: for unreadable files, wrong kind or version, or missing keys

    """
    try:
        with open(Path(path), "r") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as error:
        raise agingmimo.SchemaError(f"{path}: {error}.")
    missing = (set(JSON_META) | set(JSON_SCHEMAS[kind])) - set(document)
    if len(missing) > 0:
        raise agingmimo.SchemaError(f"{path}: missing keys {sorted(missing)}.")
    if document["schema_version"] != SCHEMA_VERSION:
        raise agingmimo.SchemaError(
            f"{path}: schema version {document['schema_version']} not supported."
        )
    if document["kind"] != kind:
        raise agingmimo.SchemaError(f"{path}: kind {document['kind']} instead of {kind}.")
    if _HASH_PATTERN.match(str(document["config_hash"])) is None:
        raise agingmimo.SchemaError(f"{path}: malformed configuration hash.")
    return document


def validate_file(path: Union[str, Path]) -> None:
    """Validate any emitted file, inferring its kind from name and content."""
    path = Path(path)
    if path.suffix == ".json":
        with open(path, "r") as f:
            kind = json.load(f).get("kind")
        if kind not in JSON_SCHEMAS:
            raise agingmimo.SchemaError(f"{path}: unknown kind {kind}.")
        validate_json(path, kind)
    elif path.suffix == ".csv":
        with open(path, "r") as f:
            f.readline()
            header = tuple(f.readline().rstrip("\n").split(","))
        kinds = [kind for kind, columns in CSV_SCHEMAS.items() if columns == header]
        if len(kinds) != 1:
            raise agingmimo.SchemaError(f"{path}: header matches no schema.")
        validate_csv(path, kinds[0])
    else:
        raise agingmimo.SchemaError(f"{path}: unsupported file type.")


# ! ---- Resume


def completed_points(path: Union[str, Path], config_hash: str) -> pd.DataFrame:
    """Rows of a partial sweep file written with the same configuration.

    Args:
        path (str or Path): sweep CSV, possibly absent
        config_hash (str): hash of the current configuration

    Returns:
        pd.DataFrame: rows of the file; empty if the file is absent

    Raises:
        ConfigError: if the file stems from a different configuration

    """
    path = Path(path)
    if not path.exists():
        return pd.DataFrame(columns=list(CSV_SCHEMAS["ase_sweep"]))
    frame, stored_hash = read_csv(path, "ase_sweep")
    if stored_hash != config_hash:
        raise agingmimo.ConfigError(
            f"{path} stems from configuration {stored_hash}, not {config_hash}."
        )
    return frame
