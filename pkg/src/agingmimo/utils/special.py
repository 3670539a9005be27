"""Modified Bessel function of the first kind and order zero on complex arguments.

The correlation functions require I0(sqrt(w)) for complex w with |w| ranging from
zero to several tens of thousands. For large |w| the function overflows double
precision long before the ratios of interest do, hence values are returned in the
scaled form mantissa * exp(log_scale).

Two evaluation paths are combined:

    * |w| <= W_SWITCH: power series sum_k (w/4)^k / (k!)^2, accumulated with
      compensated summation in extended precision. Near the negative real axis
      the terms cancel heavily, and the extra precision keeps the absolute error
      at the level of double rounding.
    * |w| > W_SWITCH: Hankel-type asymptotic expansion in z = sqrt(w) (principal
      branch, Re z >= 0), including the exponentially small counterpart which
      becomes relevant near the imaginary z axis, where I0 turns into J0.

"""

from __future__ import annotations

from typing import Union

import numpy as np

W_SWITCH: float = 400.0
"""float: Threshold in |w| separating series and asymptotic evaluation."""

SERIES_TOLERANCE: float = 1e-18
"""float: Relative size of the last accepted series term."""

ASYMPTOTIC_TOLERANCE: float = 1e-17
"""float: Relative size of the last accepted asymptotic term."""

MAX_SERIES_TERMS: int = 150

MAX_ASYMPTOTIC_TERMS: int = 60


class ScaledBesselValue:
    """Value of I0 represented as mantissa * exp(log_scale).

    The mantissa has unit modulus for nonzero values, and is zero otherwise.
    Scalar and array valued representations are supported alike.

    """

    def __init__(
        self,
        mantissa: Union[complex, np.ndarray],
        log_scale: Union[float, np.ndarray],
    ) -> None:
        self.mantissa = np.asarray(mantissa, dtype=complex)
        """np.ndarray: Complex mantissa."""

        self.log_scale = np.asarray(log_scale, dtype=float)
        """np.ndarray: Natural logarithm of the scale."""

    def value(self) -> Union[complex, np.ndarray]:
        """Unscaled value. May overflow for large log scales.

        Returns:
            complex or np.ndarray: mantissa * exp(log_scale)

        """
        return (self.mantissa * np.exp(self.log_scale))[()]

    def conj(self) -> ScaledBesselValue:
        return ScaledBesselValue(np.conj(self.mantissa), self.log_scale.copy())

    def __truediv__(self, other: ScaledBesselValue) -> Union[complex, np.ndarray]:
        """Ratio of two scaled values, evaluated without forming either value.

        Args:
            other (ScaledBesselValue): denominator

        Returns:
            complex or np.ndarray: ratio

        """
        return (
            self.mantissa / other.mantissa * np.exp(self.log_scale - other.log_scale)
        )[()]

    def __getitem__(self, key) -> ScaledBesselValue:
        return ScaledBesselValue(self.mantissa[key], self.log_scale[key])

    @property
    def shape(self) -> tuple:
        return self.mantissa.shape


def _normalize(
    scaled: np.ndarray, log_scale: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Move the modulus of the mantissa into the log scale."""
    modulus = np.abs(scaled)
    nonzero = modulus > 0
    safe_modulus = np.where(nonzero, modulus, 1)
    mantissa = np.where(nonzero, scaled / safe_modulus, 0)
    log_scale = np.where(nonzero, log_scale + np.log(safe_modulus), 0)
    return mantissa.astype(complex), log_scale.astype(float)


def _series(w: np.ndarray) -> np.ndarray:
    """Compensated power series in extended precision."""
    quarter = w.astype(np.clongdouble) / 4
    term = np.ones_like(quarter)
    total = np.ones_like(quarter)
    compensation = np.zeros_like(quarter)

    for k in range(1, MAX_SERIES_TERMS + 1):
        term = term * quarter / (k * k)
        corrected = term - compensation
        updated = total + corrected
        compensation = (updated - total) - corrected
        total = updated
        if np.all(np.abs(term) <= SERIES_TOLERANCE * np.abs(total)):
            break

    return total


def _asymptotic(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Asymptotic expansion, returned as (scaled value, log scale)."""
    z = np.sqrt(w.astype(complex))
    sign = np.where(z.imag >= 0, 1.0, -1.0)

    # Terms |a_k| / z^k; the recessive branch alternates in sign.
    term = np.ones_like(z)
    dominant_sum = np.ones_like(z)
    recessive_sum = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)

    for k in range(1, MAX_ASYMPTOTIC_TERMS + 1):
        new_term = term * (2 * k - 1) ** 2 / (8 * k * z)
        # Stop per entry once terms start to grow or become negligible
        active &= np.abs(new_term) < np.abs(term)
        active &= np.abs(term) > ASYMPTOTIC_TOLERANCE * np.abs(dominant_sum)
        if not active.any():
            break
        term = np.where(active, new_term, term)
        dominant_sum = dominant_sum + np.where(active, new_term, 0)
        recessive_sum = recessive_sum + np.where(active, (-1) ** k * new_term, 0)

    phase = np.exp(1j * z.imag)
    scaled = (
        phase * dominant_sum
        + 1j * sign * np.exp(-2 * z.real) * np.conj(phase) * recessive_sum
    ) / np.sqrt(2 * np.pi * z)
    return scaled, z.real.copy()


def i0_of_sqrt_series(w: Union[complex, np.ndarray]) -> ScaledBesselValue:
    """Power series evaluation of I0(sqrt(w)), irrespective of |w|.

    Args:
        w (complex or np.ndarray): argument(s)

    Returns:
        ScaledBesselValue: I0(sqrt(w))

    """
    w_arr = np.asarray(w, dtype=complex)
    return ScaledBesselValue(*_normalize(_series(w_arr), np.zeros(w_arr.shape)))


def i0_of_sqrt_asymptotic(w: Union[complex, np.ndarray]) -> ScaledBesselValue:
    """Asymptotic evaluation of I0(sqrt(w)), irrespective of |w|.

    Only accurate for |w| large enough, say beyond 300.

    Args:
        w (complex or np.ndarray): argument(s), nonzero

    Returns:
        ScaledBesselValue: I0(sqrt(w))

    """
    w_arr = np.asarray(w, dtype=complex)
    scaled, log_scale = _asymptotic(w_arr)
    return ScaledBesselValue(*_normalize(scaled, log_scale))


def i0_of_sqrt(w: Union[complex, np.ndarray]) -> ScaledBesselValue:
    """Modified Bessel function I0 evaluated at the principal square root of w.

    Since I0 is even, the result is an entire function of w, and satisfies
    I0(sqrt(conj(w))) = conj(I0(sqrt(w))).

    Args:
        w (complex or np.ndarray): argument(s)

    Returns:
        ScaledBesselValue: I0(sqrt(w)) in scaled form; for w = 0 the mantissa
            is 1 and the log scale 0.

    """
    w_arr = np.asarray(w, dtype=complex)
    mantissa = np.zeros(w_arr.shape, dtype=complex)
    log_scale = np.zeros(w_arr.shape, dtype=float)

    small = np.abs(w_arr) <= W_SWITCH
    if np.any(small):
        value = i0_of_sqrt_series(w_arr[small])
        mantissa[small] = value.mantissa
        log_scale[small] = value.log_scale
    if np.any(~small):
        value = i0_of_sqrt_asymptotic(w_arr[~small])
        mantissa[~small] = value.mantissa
        log_scale[~small] = value.log_scale

    return ScaledBesselValue(mantissa, log_scale)


def i0_ratio(
    w: Union[complex, np.ndarray], w_ref: Union[complex, np.ndarray]
) -> Union[complex, np.ndarray]:
    """Ratio I0(sqrt(w)) / I0(sqrt(w_ref)) evaluated in scaled form.

    Args:
        w (complex or np.ndarray): numerator argument(s)
        w_ref (complex or np.ndarray): denominator argument(s), broadcastable

    Returns:
        complex or np.ndarray: ratio

    """
    return i0_of_sqrt(w) / i0_of_sqrt(w_ref)


def j0(x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Bessel function of the first kind and order zero for real arguments.

    Uses J0(x) = I0(j x) = I0(sqrt(-x^2)).

    Args:
        x (float or np.ndarray): argument(s)

    Returns:
        float or np.ndarray: J0(x)

    """
    x_arr = np.asarray(x, dtype=float)
    value = i0_of_sqrt(-(x_arr**2) + 0j)
    return np.real(value.mantissa * np.exp(value.log_scale))[()]
