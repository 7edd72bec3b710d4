"""Total-power radiometer sensitivity, output power, and hot/cold calibration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, SingularFitError
from .quantities import CODATA

__all__ = [
    "CalibrationPoint",
    "CalibrationResult",
    "ReceiverNoiseModel",
    "calibrate_hot_cold",
    "nedt",
    "radiometer_output_power",
    "tsys_from_nedt",
]


@dataclass(frozen=True)
class ReceiverNoiseModel:
    """Noise description of a total-power radiometer channel.

    Attributes:
        antenna_temperature_k: antenna temperature T_A (K), >= 0.
        receiver_temperature_k: receiver noise temperature T_Rx (K), >= 0.
        bandwidth_hz: detection bandwidth B_w (Hz), > 0.
        integration_time_s: integration time tau (s), > 0.
        gain_stability: fractional gain fluctuation dG/G within the
            integration time (dimensionless), >= 0.
    """

    antenna_temperature_k: float
    receiver_temperature_k: float
    bandwidth_hz: float
    integration_time_s: float
    gain_stability: float = 0.0

    def __post_init__(self) -> None:
        if self.antenna_temperature_k < 0.0:
            raise DomainError("antenna temperature must be >= 0 K")
        if self.receiver_temperature_k < 0.0:
            raise DomainError("receiver temperature must be >= 0 K")
        if self.bandwidth_hz <= 0.0:
            raise DomainError("bandwidth must be > 0 Hz")
        if self.integration_time_s <= 0.0:
            raise DomainError("integration time must be > 0 s")
        if self.gain_stability < 0.0:
            raise DomainError("gain stability must be >= 0")

    @property
    def system_temperature_k(self) -> float:
        """T_sys = T_A + T_Rx."""
        return self.antenna_temperature_k + self.receiver_temperature_k


@dataclass(frozen=True)
class CalibrationPoint:
    """One reference-load measurement: known T_A and measured output power."""

    antenna_temperature_k: float
    output_power_w: float

    def __post_init__(self) -> None:
        if self.antenna_temperature_k < 0.0:
            raise DomainError("load temperature must be >= 0 K")
        if self.output_power_w < 0.0:
            raise DomainError("measured power must be >= 0 W")


@dataclass(frozen=True)
class CalibrationResult:
    """Gain and receiver temperature recovered from a hot/cold calibration."""

    gain: float
    receiver_temperature_k: float
    warnings: tuple[str, ...] = ()


def nedt(model: ReceiverNoiseModel) -> float:
    """Noise-equivalent delta temperature of a total-power radiometer in K.

    NEDT = (T_A + T_Rx) * sqrt(1/(B_w*tau) + (dG/G)^2).  The radiometric term
    falls with the time-bandwidth product; the gain-stability term sets the
    floor reached at long integration times.
    """
    radiometric = 1.0 / (model.bandwidth_hz * model.integration_time_s)
    return model.system_temperature_k * math.sqrt(
        radiometric + model.gain_stability**2
    )


def radiometer_output_power(
    gain: float,
    antenna_temperature_k: float,
    receiver_temperature_k: float,
    bandwidth_hz: float,
) -> float:
    """Detected output power ``P_out = G * k_B * (T_A + T_Rx) * B_w`` in W."""
    if gain <= 0.0:
        raise DomainError("gain must be > 0")
    if bandwidth_hz <= 0.0:
        raise DomainError("bandwidth must be > 0 Hz")
    if antenna_temperature_k < 0.0 or receiver_temperature_k < 0.0:
        raise DomainError("temperatures must be >= 0 K")
    t_sys = antenna_temperature_k + receiver_temperature_k
    return gain * CODATA.boltzmann * t_sys * bandwidth_hz


def calibrate_hot_cold(
    points: Sequence[CalibrationPoint],
    bandwidth_hz: float,
) -> CalibrationResult:
    """Recover (G, T_Rx) from reference-load measurements by linear regression.

    Fits P_out = G*k_B*B_w*(T_A + T_Rx) by ordinary least squares over the
    (T_A, P_out) pairs; the slope gives the gain and the intercept the
    receiver temperature.  With exactly two distinct loads the fit is exact
    interpolation.

    A negative fitted T_Rx is physically suspect but is returned with a
    warning rather than clamped: real calibration data can produce it and
    hiding it would mask instrument faults.

    Raises:
        SingularFitError: fewer than two points, or all load temperatures
            identical (degenerate design matrix).
        DomainError: non-positive bandwidth.
    """
    if bandwidth_hz <= 0.0:
        raise DomainError("bandwidth must be > 0 Hz")
    if len(points) < 2:
        raise SingularFitError("calibration needs at least two points")
    temperatures = np.array([p.antenna_temperature_k for p in points], dtype=float)
    powers = np.array([p.output_power_w for p in points], dtype=float)
    if np.ptp(temperatures) == 0.0:
        raise SingularFitError("all load temperatures identical; cannot separate G and T_Rx")

    design = np.column_stack([temperatures, np.ones_like(temperatures)])
    (slope, intercept), *_ = np.linalg.lstsq(design, powers, rcond=None)

    gain = slope / (CODATA.boltzmann * bandwidth_hz)
    if slope <= 0.0:
        raise SingularFitError("fitted slope is non-positive; measurements are inconsistent")
    receiver_temperature = intercept / slope
    warnings: tuple[str, ...] = ()
    if receiver_temperature < 0.0:
        warnings = (
            f"fitted receiver temperature is negative ({receiver_temperature:.6g} K); "
            "calibration data may be inconsistent",
        )
    return CalibrationResult(gain, receiver_temperature, warnings)


def tsys_from_nedt(
    nedt_k: float,
    bandwidth_hz: float,
    integration_time_s: float,
    gain_stability: float = 0.0,
) -> float:
    """System temperature implied by a reported NEDT.

    Inverts NEDT = T_sys*sqrt(1/(B*tau) + (dG/G)^2).  The gain-fluctuation
    term defaults to zero, the convention used when inferring T_sys from
    published radiometer sensitivities.
    """
    if nedt_k <= 0.0:
        raise DomainError("NEDT must be > 0 K")
    if bandwidth_hz <= 0.0 or integration_time_s <= 0.0:
        raise DomainError("bandwidth and integration time must be > 0")
    if gain_stability < 0.0:
        raise DomainError("gain stability must be >= 0")
    return nedt_k / math.sqrt(
        1.0 / (bandwidth_hz * integration_time_s) + gain_stability**2
    )
