"""Radar link physics: received power, noise floor, SNR, NESZ, resolution."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .quantities import CODATA

__all__ = [
    "PointTarget",
    "RadarScenario",
    "ResolutionCell",
    "max_range_ratio",
    "nesz",
    "nesz_at_unit_snr",
    "noise_power",
    "processed_received_power",
    "processing_gain_from_pulse",
    "range_resolution",
    "received_power",
    "snr",
]

FOUR_PI_CUBED = (4.0 * math.pi) ** 3


@dataclass(frozen=True)
class PointTarget:
    """Point-target analysis mode: a bare radar cross section sigma in m^2."""

    cross_section_m2: float

    def __post_init__(self) -> None:
        if self.cross_section_m2 < 0.0:
            raise DomainError("radar cross section must be >= 0 m^2")


@dataclass(frozen=True)
class ResolutionCell:
    """Imaging mode: normalised cross section sigma0 over a resolution cell.

    The effective cross section is sigma = sigma0 * cell_area.
    """

    sigma0: float
    cell_area_m2: float

    def __post_init__(self) -> None:
        if self.sigma0 < 0.0:
            raise DomainError("sigma0 must be >= 0")
        if self.cell_area_m2 <= 0.0:
            raise DomainError("resolution cell area must be > 0 m^2")

    @property
    def cross_section_m2(self) -> float:
        return self.sigma0 * self.cell_area_m2


@dataclass(frozen=True)
class RadarScenario:
    """One radar link.

    The target is a tagged alternative, not two nullable fields: pass either a
    :class:`PointTarget` (point-target analysis) or a :class:`ResolutionCell`
    (imaging).  Losses are stored linear and >= 1, with the convention that a
    loss always divides received power; use the ``*_loss_db`` accessors for
    reporting.
    """

    transmit_power_w: float
    transmit_gain: float
    receive_gain: float
    wavelength_m: float
    target: PointTarget | ResolutionCell
    range_m: float
    system_loss: float = 1.0
    propagation_loss: float = 1.0
    processing_gain: float = 1.0
    system_temperature_k: float | None = None
    bandwidth_hz: float | None = None

    def __post_init__(self) -> None:
        for name, value in (
            ("transmit power", self.transmit_power_w),
            ("transmit gain", self.transmit_gain),
            ("receive gain", self.receive_gain),
            ("wavelength", self.wavelength_m),
            ("range", self.range_m),
        ):
            if value <= 0.0:
                raise DomainError(f"{name} must be > 0")
        if self.system_loss < 1.0 or self.propagation_loss < 1.0:
            raise DomainError("linear losses must be >= 1")
        if self.processing_gain < 1.0:
            raise DomainError("processing gain must be >= 1")
        if self.system_temperature_k is not None and self.system_temperature_k < 0.0:
            raise DomainError("system temperature must be >= 0 K")
        if self.bandwidth_hz is not None and self.bandwidth_hz <= 0.0:
            raise DomainError("bandwidth must be > 0 Hz")

    @property
    def system_loss_db(self) -> float:
        return 10.0 * math.log10(self.system_loss)

    @property
    def propagation_loss_db(self) -> float:
        return 10.0 * math.log10(self.propagation_loss)


def _one_way_factor(s: RadarScenario) -> float:
    return (
        s.transmit_power_w
        * s.transmit_gain
        * s.receive_gain
        * s.wavelength_m**2
        / (FOUR_PI_CUBED * s.range_m**4 * s.system_loss * s.propagation_loss)
    )


def received_power(s: RadarScenario) -> float:
    """Received power from the radar equation, in W.

    P_r = P_t*G_t*G_r*lambda^2*sigma / ((4*pi)^3 * R^4 * L_s * L_p).
    Requires the point-target form of the scenario.
    """
    if not isinstance(s.target, PointTarget):
        raise DomainError("received_power needs a point-target scenario (sigma form)")
    return _one_way_factor(s) * s.target.cross_section_m2


def processed_received_power(s: RadarScenario) -> float:
    """Received power over a resolution cell including processing gain, in W.

    P_r,proc = P_t*G_t*G_r*lambda^2*sigma0*A_res*G_proc / ((4*pi)^3*R^4*L_s*L_p).
    """
    if not isinstance(s.target, ResolutionCell):
        raise DomainError(
            "processed_received_power needs a resolution-cell scenario (sigma0 form)"
        )
    return _one_way_factor(s) * s.target.cross_section_m2 * s.processing_gain


def processing_gain_from_pulse(bandwidth_hz: float, pulse_width_s: float) -> float:
    """Pulse-compression gain as the time-bandwidth product B*tau_p."""
    if bandwidth_hz <= 0.0 or pulse_width_s <= 0.0:
        raise DomainError("bandwidth and pulse width must be > 0")
    return bandwidth_hz * pulse_width_s


def noise_power(system_temperature_k: float, bandwidth_hz: float) -> float:
    """Receiver noise power ``P_n = k_B * T_sys * B`` in W."""
    if system_temperature_k < 0.0:
        raise DomainError("system temperature must be >= 0 K")
    if bandwidth_hz <= 0.0:
        raise DomainError("bandwidth must be > 0 Hz")
    return CODATA.boltzmann * system_temperature_k * bandwidth_hz


def snr(received_power_w: float, noise_power_w: float) -> float:
    """Signal-to-noise ratio P_r / P_n (linear)."""
    if noise_power_w <= 0.0:
        raise DomainError("noise power must be > 0 W")
    if received_power_w < 0.0:
        raise DomainError("received power must be >= 0 W")
    return received_power_w / noise_power_w


def nesz(sigma0: float, snr_linear: float) -> float:
    """Noise-equivalent sigma zero: the backscatter giving SNR = 1.

    Literal ratio form NESZ = sigma0 / SNR, where the SNR is the one obtained
    at that sigma0.  Under the linear radar model this coincides with solving
    for the sigma0 that yields unit SNR (see :func:`nesz_at_unit_snr`).
    """
    if snr_linear <= 0.0:
        raise DomainError("SNR must be > 0")
    if sigma0 < 0.0:
        raise DomainError("sigma0 must be >= 0")
    return sigma0 / snr_linear


def nesz_at_unit_snr(s: RadarScenario) -> float:
    """Solve directly for the sigma0 at which the processed SNR equals 1.

    Requires the resolution-cell form with system temperature and bandwidth
    set on the scenario.  Independent of the scenario's own sigma0.
    """
    if not isinstance(s.target, ResolutionCell):
        raise DomainError("nesz_at_unit_snr needs a resolution-cell scenario")
    if s.system_temperature_k is None or s.bandwidth_hz is None:
        raise DomainError("scenario needs system temperature and bandwidth for NESZ")
    p_n = noise_power(s.system_temperature_k, s.bandwidth_hz)
    per_sigma0 = _one_way_factor(s) * s.target.cell_area_m2 * s.processing_gain
    if per_sigma0 <= 0.0:
        raise DomainError("scenario yields no signal response")
    return p_n / per_sigma0


def range_resolution(bandwidth_hz: float) -> float:
    """Slant-range resolution ``delta_R = c / (2B)`` in m."""
    if bandwidth_hz <= 0.0:
        raise DomainError("bandwidth must be > 0 Hz")
    return CODATA.light_speed / (2.0 * bandwidth_hz)


def max_range_ratio(system_temperature_1_k: float, system_temperature_2_k: float) -> float:
    """Maximum-range ratio when T_sys changes from value 1 to value 2.

    R_max scales as T_sys^(-1/4), so the ratio is (T1/T2)^(1/4).
    """
    if system_temperature_1_k <= 0.0 or system_temperature_2_k <= 0.0:
        raise DomainError("temperatures must be > 0 K")
    return (system_temperature_1_k / system_temperature_2_k) ** 0.25
