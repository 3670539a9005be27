"""Run configuration of the command line front end.

A configuration is a JSON dictionary of sections. All entries are optional and
default to the system parameters of the desk-scale setup (M = 32); unknown
sections or keys are rejected. The content hash of a configuration identifies
all emitted files.

"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

import agingmimo
from agingmimo.utils import constants


@dataclass
class ArraySection:
    """BS array and carrier."""

    M: int = constants.NUM_ANTENNAS
    d: float = constants.ANTENNA_SPACING
    f_c: float = constants.CARRIER_FREQUENCY


@dataclass
class LinkSection:
    """Training and transmission parameters shared by all links."""

    Ts: float = constants.SYMBOL_PERIOD
    T: int = constants.PILOT_LENGTH
    power: float = constants.TRANSMIT_POWER
    noise_density_dbm_hz: float = float(constants.NOISE_DENSITY_DBM_HZ)
    correlation_model: str = "vonmises"
    non_aging: bool = False


@dataclass
class PointSection:
    """Single operating point of the se and layout-dump commands."""

    scenario: str = "freeway"
    combiner: str = "mr"
    sigma_T_deg: float = 35.0
    sigma_R_deg: float = 15.0
    v: float = 33.33
    C: int = 200


@dataclass
class SweepSection:
    """Grid of operating points and block lengths."""

    scenarios: list = field(default_factory=lambda: ["freeway", "manhattan"])
    combiners: list = field(default_factory=lambda: ["mr", "mmse"])
    sigmas_T: list = field(default_factory=lambda: [5.0, 20.0, 35.0, 50.0])
    sigmas_R: list = field(default_factory=lambda: [5.0, 20.0, 35.0, 50.0])
    speeds: dict = field(
        default_factory=lambda: {
            scenario: list(speeds) for scenario, speeds in agingmimo.DEFAULT_SPEEDS.items()
        }
    )
    density: dict = field(default_factory=lambda: dict(agingmimo.DENSITY))
    c_start: int = 60
    c_stop: int = 1000
    c_step: int = 20
    refine: bool = True
    refine_step: int = 5
    refine_window: int = 40
    fit_file: Optional[str] = None
    baseline: Optional[int] = None


@dataclass
class StccSection:
    """Grid of antenna spacings (m) and time lags (s) of the stcc command."""

    d_max: float = 0.75
    num_d: int = 31
    tau_max: float = 2e-3
    num_tau: int = 41


@dataclass
class MonteCarloSection:
    """Sample sizes, master seed and decimation of the symbol axis."""

    master_seed: int = 0
    n_drops: int = 20
    n_channel: int = 10
    stride: int = 1


@dataclass
class OutputSection:
    directory: str = "results"


def _coerce(default: Any, value: Any, name: str) -> Any:
    """Cast JSON numbers to the type of the default, e.g. 35 to 35.0."""
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise agingmimo.ConfigError(f"{name} must be a boolean, got {value!r}.")
        return value
    if isinstance(default, float) and isinstance(value, (int, float)):
        if isinstance(value, bool):
            raise agingmimo.ConfigError(f"{name} must be a number, got {value!r}.")
        return float(value)
    if isinstance(default, int) and isinstance(value, float):
        if not value.is_integer():
            raise agingmimo.ConfigError(f"{name} must be an integer, got {value!r}.")
        return int(value)
    if isinstance(default, list) and isinstance(value, list):
        if len(default) > 0 and isinstance(default[0], float):
            return [_coerce(default[0], entry, name) for entry in value]
        return value
    if isinstance(default, dict) and isinstance(value, dict):
        return {
            key: [float(x) for x in entry] if isinstance(entry, list) else float(entry)
            for key, entry in value.items()
        }
    return value


def _build_section(cls: type, data: Optional[dict], name: str) -> Any:
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise agingmimo.ConfigError(f"Section {name} must be a dictionary.")
    defaults = cls()
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if len(unknown) > 0:
        raise agingmimo.ConfigError(f"Unknown keys {sorted(unknown)} in section {name}.")
    values = {
        key: _coerce(getattr(defaults, key), value, f"{name}.{key}")
        for key, value in data.items()
    }
    return cls(**values)


@dataclass
class RunConfig:
    """Complete configuration of a run."""

    array: ArraySection = field(default_factory=ArraySection)
    link: LinkSection = field(default_factory=LinkSection)
    point: PointSection = field(default_factory=PointSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    stcc: StccSection = field(default_factory=StccSection)
    monte_carlo: MonteCarloSection = field(default_factory=MonteCarloSection)
    output: OutputSection = field(default_factory=OutputSection)

    def __post_init__(self) -> None:
        self.validate()

    # ! ---- Consistency

    def validate(self) -> None:
        """Check admissible values of all entries.

        Raises:
            ConfigError: for the first inadmissible entry

        """
        checks = [
            (self.array.M >= 1, f"M must be positive, got {self.array.M}."),
            (self.array.d > 0, f"Antenna spacing must be positive, got {self.array.d}."),
            (self.array.f_c > 0, f"Carrier must be positive, got {self.array.f_c}."),
            (self.link.Ts > 0, f"Symbol period must be positive, got {self.link.Ts}."),
            (self.link.T >= 1, f"Pilot length must be positive, got {self.link.T}."),
            (self.link.power > 0, f"Power must be positive, got {self.link.power}."),
            (
                self.link.correlation_model in ("vonmises", "legacy"),
                f"Unknown correlation model {self.link.correlation_model}.",
            ),
            (
                self.point.scenario in agingmimo.SCENARIOS,
                f"Unknown scenario {self.point.scenario}.",
            ),
            (
                self.point.combiner in agingmimo.COMBINERS,
                f"Unknown combiner {self.point.combiner}.",
            ),
            (self.point.C > self.link.T, f"Block length {self.point.C} must exceed T."),
            (
                set(self.sweep.scenarios) <= set(agingmimo.SCENARIOS),
                f"Unknown scenarios in {self.sweep.scenarios}.",
            ),
            (
                set(self.sweep.combiners) <= set(agingmimo.COMBINERS),
                f"Unknown combiners in {self.sweep.combiners}.",
            ),
            (
                len(self.sweep.combiners) > 0 and len(self.sweep.scenarios) > 0,
                "Sweep needs at least one scenario and one combiner.",
            ),
            (
                self.sweep.c_start > self.link.T,
                f"Smallest block length {self.sweep.c_start} must exceed T.",
            ),
            (
                self.sweep.c_step >= 1 and self.sweep.c_stop >= self.sweep.c_start,
                "Invalid block length grid.",
            ),
            (self.sweep.refine_step >= 1, "Refinement step must be positive."),
            (self.stcc.num_d >= 1 and self.stcc.num_tau >= 1, "Empty stcc grid."),
            (self.monte_carlo.master_seed >= 0, "Master seed must be non-negative."),
            (self.monte_carlo.n_drops >= 1, "Number of drops must be positive."),
            (self.monte_carlo.n_channel >= 1, "Number of realizations must be positive."),
            (self.monte_carlo.stride >= 1, "Stride must be positive."),
        ]
        for ok, message in checks:
            if not ok:
                raise agingmimo.ConfigError(message)
        for scenario in self.sweep.scenarios:
            if scenario not in self.sweep.density:
                raise agingmimo.ConfigError(f"No density for scenario {scenario}.")

    # ! ---- Round trip

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        """Configuration from a (possibly partial) dictionary.

        Raises:
            ConfigError: for unknown sections or keys, and inadmissible values

        """
        sections = {f.name: f.default_factory for f in fields(cls)}  # type: ignore[misc]
        unknown = set(data) - set(sections)
        if len(unknown) > 0:
            raise agingmimo.ConfigError(f"Unknown sections {sorted(unknown)}.")
        return cls(
            **{
                name: _build_section(section, data.get(name), name)
                for name, section in sections.items()
            }
        )

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> RunConfig:
        try:
            with open(Path(path), "r") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as error:
            raise agingmimo.ConfigError(f"Cannot read configuration {path}: {error}.")
        if not isinstance(data, dict):
            raise agingmimo.ConfigError("Configuration must be a JSON dictionary.")
        return cls.from_dict(data)

    def to_json(self, path: Union[str, Path]) -> None:
        with open(Path(path), "w") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")

    def canonical(self) -> str:
        """Sorted-key JSON encoding of all inputs, i.e. without the output section."""
        inputs = {key: value for key, value in self.to_dict().items() if key != "output"}
        return json.dumps(inputs, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        """Git-blob SHA-1 of the canonical encoding."""
        content = self.canonical().encode("utf-8")
        header = f"blob {len(content)}\0".encode("utf-8")
        return hashlib.sha1(header + content).hexdigest()

    # ! ---- Variants

    def copy(self) -> RunConfig:
        return copy.deepcopy(self)

    def full_scale(self) -> RunConfig:
        """Copy with the full-size array (M = 100) and stride 8."""
        return replace(
            self,
            array=replace(self.array, M=constants.NUM_ANTENNAS_FULL),
            monte_carlo=replace(self.monte_carlo, stride=8),
        )

    # ! ---- Derived quantities

    @property
    def noise_power(self) -> float:
        return noise_power(self.link.noise_density_dbm_hz, self.link.Ts)

    def array_geometry(self) -> agingmimo.ArrayGeometry:
        return agingmimo.ArrayGeometry(self.array.M, self.array.d, self.array.f_c)

    def setup(self, verbose: bool = False) -> agingmimo.SimulationSetup:
        """Simulation setup of all Monte Carlo commands."""
        return agingmimo.SimulationSetup(
            self.array_geometry(),
            master_seed=self.monte_carlo.master_seed,
            n_drops=self.monte_carlo.n_drops,
            n_channel=self.monte_carlo.n_channel,
            Ts=self.link.Ts,
            T=self.link.T,
            power=self.link.power,
            noise_power=self.noise_power,
            stride=self.monte_carlo.stride,
            correlation_model=self.link.correlation_model,  # type: ignore[arg-type]
            non_aging=self.link.non_aging,
            density=self.sweep.density,
            verbose=verbose,
        )

    def operating_point(self) -> agingmimo.SweepPoint:
        return agingmimo.SweepPoint(
            self.point.scenario,  # type: ignore[arg-type]
            self.point.combiner,  # type: ignore[arg-type]
            self.point.sigma_T_deg,
            self.point.sigma_R_deg,
            self.point.v,
        )

    def c_grid(self) -> np.ndarray:
        return agingmimo.block_grid(self.sweep.c_start, self.sweep.c_stop, self.sweep.c_step)

    def refinement(self) -> Optional[tuple[int, int]]:
        if not self.sweep.refine:
            return None
        return self.sweep.refine_step, self.sweep.refine_window

    def sweep_points(self, scenario: str) -> list[agingmimo.SweepPoint]:
        """Points of a scenario; the combiner entry is the first sweep combiner."""
        speeds = self.sweep.speeds.get(scenario, agingmimo.DEFAULT_SPEEDS[scenario])
        return agingmimo.sweep_points(
            scenario,  # type: ignore[arg-type]
            self.sweep.combiners[0],
            self.sweep.sigmas_T,
            self.sweep.sigmas_R,
            speeds,
        )


def noise_power(
    noise_density_dbm_hz: float = constants.NOISE_DENSITY_DBM_HZ,
    Ts: float = constants.SYMBOL_PERIOD,
) -> float:
    """Noise variance in W over the symbol-rate bandwidth 1 / Ts.

    Args:
        noise_density_dbm_hz (float): noise density in dBm/Hz
        Ts (float): symbol period in s

    Returns:
        float: 10^((N0 + 10 log10(1 / Ts)) / 10) / 1000

    """
    return 10 ** ((noise_density_dbm_hz + 10 * np.log10(1.0 / Ts)) / 10) / 1000


def load_config(path: Optional[Union[str, Path]] = None) -> RunConfig:
    """Configuration from a JSON file, or the defaults if no file is given."""
    return RunConfig() if path is None else RunConfig.from_json(path)
