"""Linear model of the ASE-maximizing block length.

C* = a0 + a_v v + a_T sqrt(sigma_T) + a_R sqrt(sigma_R), with angular spreads in
degrees and the speed in m/s. Coefficients are fitted by ordinary least squares
to maximizers collected over a sweep.

"""

from __future__ import annotations

from typing import Optional, Union
from warnings import warn

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression

import agingmimo

FEATURES: tuple[str, ...] = ("v", "sigma_T_deg", "sigma_R_deg")

MIN_SAMPLES: int = 5
"""int: Smallest number of maximizers a fit is run on."""


class FitModel:
    """Affine model of the optimal block length in (v, sqrt(sigma_T), sqrt(sigma_R))."""

    def __init__(
        self,
        coefficients: Union[np.ndarray, list[float]] = (0.0, 0.0, 0.0, 0.0),
        r2bar: Optional[float] = None,
        nrmse: Optional[float] = None,
    ) -> None:
        self.coefficients = np.asarray(coefficients, dtype=float)
        """np.ndarray: (a0, a_v, a_T, a_R)."""

        self.r2bar = r2bar
        """float, optional: coefficient of determination of the fit."""

        self.nrmse = nrmse
        """float, optional: RMSE normalized by the range of the targets."""

    def __call__(
        self,
        v: Union[float, np.ndarray],
        sigma_T_deg: Union[float, np.ndarray],
        sigma_R_deg: Union[float, np.ndarray],
    ) -> Union[float, np.ndarray]:
        """
        Application of the model.

        Args:
            v (float or np.ndarray): speed in m/s
            sigma_T_deg (float or np.ndarray): AoD spread in degrees
            sigma_R_deg (float or np.ndarray): AoA spread in degrees

        Returns:
            float or np.ndarray: predicted block length (not rounded)

        """
        a0, a_v, a_T, a_R = self.coefficients
        return (
            a0 + a_v * np.asarray(v) + a_T * np.sqrt(sigma_T_deg) + a_R * np.sqrt(sigma_R_deg)
        )[()]

    def predict(self, point: agingmimo.SweepPoint, T: int = 0) -> int:
        """Rounded prediction at a sweep point, at least T + 1."""
        value = self(point.v, point.sigma_T_deg, point.sigma_R_deg)
        return max(int(np.floor(value + 0.5)), T + 1)

    def to_dict(self) -> dict:
        return {
            "coefficients": dict(zip(("a0", "a_v", "a_T", "a_R"), self.coefficients.tolist())),
            "r2bar": self.r2bar,
            "nrmse": self.nrmse,
        }

    @classmethod
    def from_dict(cls, data: dict) -> FitModel:
        coefficients = data["coefficients"]
        if isinstance(coefficients, dict):
            coefficients = [coefficients[key] for key in ("a0", "a_v", "a_T", "a_R")]
        return cls(coefficients, data.get("r2bar"), data.get("nrmse"))

    def __repr__(self) -> str:
        return f"FitModel({np.array2string(self.coefficients, precision=4)})"


REFERENCE_MODELS: dict[tuple[str, str], FitModel] = {
    ("freeway", "mr"): FitModel([568.91, -5.51, -53.92, 4.04]),
    ("freeway", "mmse"): FitModel([298.24, -1.35, -20.14, -7.72]),
    ("manhattan", "mr"): FitModel([613.79, -6.03, -50.18, 0.63]),
    ("manhattan", "mmse"): FitModel([522.58, -5.42, -46.94, 7.61]),
}
"""dict: fits obtained at full scale (M = 100) per scenario and combiner."""


def design_matrix(samples: pd.DataFrame) -> np.ndarray:
    """Regressors [1, v, sqrt(sigma_T), sqrt(sigma_R)] of all samples."""
    return np.column_stack(
        [
            np.ones(len(samples)),
            samples["v"].to_numpy(dtype=float),
            np.sqrt(samples["sigma_T_deg"].to_numpy(dtype=float)),
            np.sqrt(samples["sigma_R_deg"].to_numpy(dtype=float)),
        ]
    )


def fit_copt_model(samples: Union[pd.DataFrame, list[tuple]]) -> FitModel:
    """Least-squares fit of the block length model.

    Args:
        samples (pd.DataFrame or list of tuple): columns (or tuple entries)
            v, sigma_T_deg, sigma_R_deg, c_opt

    Returns:
        FitModel: fitted coefficients with goodness of fit. R2bar is
            1 - SS_res / SS_tot and set to zero (with a warning) for constant
            targets; NRMSE normalizes the RMSE by the range of the targets.

    Raises:
        InsufficientData: for fewer than MIN_SAMPLES samples, or a feature
            taking a single value
        RankDeficient: if the regressors are linearly dependent

    """
    if not isinstance(samples, pd.DataFrame):
        samples = pd.DataFrame(list(samples), columns=[*FEATURES, "c_opt"])
    if len(samples) < MIN_SAMPLES:
        raise agingmimo.InsufficientData(
            f"{len(samples)} samples, at least {MIN_SAMPLES} required."
        )
    for feature in FEATURES:
        if samples[feature].nunique() < 2:
            raise agingmimo.InsufficientData(f"Feature {feature} takes a single value.")

    X = design_matrix(samples)
    y = samples["c_opt"].to_numpy(dtype=float)
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise agingmimo.RankDeficient(
            f"Design matrix of {X.shape[0]} samples has rank {np.linalg.matrix_rank(X)}."
        )

    regression = LinearRegression(fit_intercept=False).fit(X, y)
    coefficients = regression.coef_

    residuals = y - X @ coefficients
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot > 0:
        r2bar = float(np.clip(1 - ss_res / ss_tot, 0.0, 1.0))
    else:
        warn("Constant block length targets; R2bar set to zero.")
        r2bar = 0.0

    target_range = float(np.max(y) - np.min(y))
    rmse = float(np.sqrt(ss_res / y.size))
    nrmse = rmse / target_range if target_range > 0 else 0.0

    return FitModel(coefficients, r2bar, nrmse)
