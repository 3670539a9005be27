"""Physical constants and default system parameters.

The defaults reproduce the reference vehicular deployment (2 GHz carrier,
10 µs symbols, 0.1 W terminals) and are used to pre-populate
run configurations.

"""

SPEED_OF_LIGHT: float = 3.0e8
"""float: Propagation speed in m/s; rounded so that 0.075 m equals half a wavelength
at 2 GHz."""

CARRIER_FREQUENCY: float = 2.0e9
"""float: Carrier frequency in Hz."""

SYMBOL_PERIOD: float = 1.0e-5
"""float: Symbol period in s."""

ANTENNA_SPACING: float = 0.075
"""float: Inter-element spacing of the uniform linear array in m."""

ARRAY_ORIENTATION: float = 0.0
"""float: Array orientation angle in rad."""

NUM_ANTENNAS: int = 32
"""int: Number of BS antennas at desk scale."""

NUM_ANTENNAS_FULL: int = 100
"""int: Number of BS antennas at full scale."""

TRANSMIT_POWER: float = 0.1
"""float: Uplink transmit power per VUE in W."""

PILOT_LENGTH: int = 40
"""int: Number of pilot symbols per block."""

NOISE_DENSITY_DBM_HZ: float = -174.0
"""float: Noise power spectral density in dBm/Hz."""

PATHLOSS_INTERCEPT_DB: float = -34.53
"""float: Intercept of the log-distance path loss in dB."""

PATHLOSS_EXPONENT: float = 3.8
"""float: Path loss exponent."""

SHADOWING_STD_DB: float = 10.0
"""float: Standard deviation of log-normal shadowing in dB."""

VUE_HEIGHT: float = 1.5
"""float: Antenna height of vehicular user equipment in m."""

MIN_HEADWAY_SECONDS: float = 2.5
"""float: Minimum time headway between consecutive vehicles in s."""
