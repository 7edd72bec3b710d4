"""End-to-end satellite communication link budget in dB arithmetic.

This module is the one place where the engine works in decibels: a link
budget is by construction a ledger of dB gains and losses, and keeping the
chain in dB makes the closure identities exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .quantities import CODATA, frequency_to_wavelength

__all__ = [
    "BOLTZMANN_DB",
    "DEFAULT_EBN0_THRESHOLDS_DB",
    "FslCheck",
    "LinkBudget",
    "LinkReport",
    "c_over_n0",
    "eb_over_n0",
    "eirp",
    "evaluate_link",
    "figure_of_merit",
    "free_space_loss",
    "system_noise_temperature",
    "total_loss",
]

# -10*log10(k_B) rounded to the engineering value used in C/N0 chains.
BOLTZMANN_DB = 228.6

# Indicative required Eb/N0 per modulation/coding scheme, dB.  Overridable
# per budget; these are relative-comparison thresholds, not modem specs.
DEFAULT_EBN0_THRESHOLDS_DB: tuple[tuple[str, float], ...] = (
    ("bpsk_fec_1_2", 3.0),
    ("qpsk_fec_1_2", 4.0),
    ("8psk_fec_3_4", 7.5),
    ("16qam_fec_3_4", 11.0),
)

# Ledger entry names recognised as the free-space-loss term for the
# recomputation diagnostic.
_FSL_NAMES = frozenset({"fsl", "l_fsl", "free_space", "free_space_loss"})


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def eirp(transmit_power_dbw: float, transmit_gain_dbi: float, feeder_loss_db: float) -> float:
    """Effective isotropic radiated power: ``P_T + G_T - L_FTx`` in dBW."""
    for name, value in (
        ("transmit power", transmit_power_dbw),
        ("transmit gain", transmit_gain_dbi),
        ("feeder loss", feeder_loss_db),
    ):
        _require_finite(name, value)
    return transmit_power_dbw + transmit_gain_dbi - feeder_loss_db


def system_noise_temperature(
    antenna_temperature_k: float,
    receiver_temperature_k: float,
    feeder_loss_linear: float,
    reference_temperature_k: float = CODATA.reference_temperature,
) -> float:
    """Receive-chain system noise temperature at the antenna reference plane.

    T_sys = T_a + (L_F - 1)*T_0 + L_F*T_R: the feeder at physical temperature
    T_0 contributes (L_F - 1)*T_0 and also scales the downstream receiver
    noise by its loss.  (The receiver-reference alternative, which divides by
    L_F instead, is deliberately not used.)
    """
    if antenna_temperature_k < 0.0 or receiver_temperature_k < 0.0:
        raise DomainError("temperatures must be >= 0 K")
    if feeder_loss_linear < 1.0:
        raise DomainError("linear feeder loss must be >= 1")
    return (
        antenna_temperature_k
        + (feeder_loss_linear - 1.0) * reference_temperature_k
        + feeder_loss_linear * receiver_temperature_k
    )


def figure_of_merit(receive_gain_dbi: float, system_temperature_k: float) -> float:
    """Receiver figure of merit ``G/T = G_R - 10*log10(T_sys)`` in dB/K."""
    _require_finite("receive gain", receive_gain_dbi)
    if system_temperature_k <= 0.0:
        raise DomainError("system temperature must be > 0 K")
    return receive_gain_dbi - 10.0 * math.log10(system_temperature_k)


def free_space_loss(distance_m: float, frequency_hz: float) -> float:
    """Free-space path loss ``20*log10(4*pi*d/lambda)`` in dB."""
    if distance_m <= 0.0:
        raise DomainError("distance must be > 0 m")
    wavelength = frequency_to_wavelength(frequency_hz)
    return 20.0 * math.log10(4.0 * math.pi * distance_m / wavelength)


def total_loss(ledger: "list[tuple[str, float]] | tuple[tuple[str, float], ...]") -> float:
    """Arithmetic dB sum of an ordered ledger of named losses."""
    sum_db = 0.0
    for name, value in ledger:
        _require_finite(f"loss {name!r}", value)
        if value < 0.0:
            raise DomainError(f"loss {name!r} must be >= 0 dB, got {value:g}")
        sum_db += value
    return sum_db


def c_over_n0(eirp_dbw: float, loss_db: float, g_over_t_db: float) -> float:
    """Carrier-to-noise spectral density: EIRP - L + G/T + 228.6, in dBHz."""
    for name, value in (("EIRP", eirp_dbw), ("loss", loss_db), ("G/T", g_over_t_db)):
        _require_finite(name, value)
    return eirp_dbw - loss_db + g_over_t_db + BOLTZMANN_DB


def eb_over_n0(c_over_n0_dbhz: float, data_rate_bps: float) -> float:
    """Energy per bit to noise density: ``C/N0 - 10*log10(R)`` in dB."""
    _require_finite("C/N0", c_over_n0_dbhz)
    if data_rate_bps <= 0.0:
        raise DomainError("data rate must be > 0 bit/s")
    return c_over_n0_dbhz - 10.0 * math.log10(data_rate_bps)


@dataclass(frozen=True)
class LinkBudget:
    """Inputs of a one-way communication link.

    ``losses_db`` is an ordered ledger of named dB losses.  The free-space
    term is an independent ledger entry, never silently recomputed from
    geometry: when ``path_length_m`` and ``frequency_hz`` are also given, the
    evaluated report carries the recomputed value alongside the ledger value
    and flags any disagreement instead of replacing it.
    """

    transmit_power_dbw: float
    transmit_gain_dbi: float
    transmit_feeder_loss_db: float
    losses_db: tuple[tuple[str, float], ...]
    receive_gain_dbi: float
    antenna_temperature_k: float
    receiver_temperature_k: float
    feeder_loss_linear: float
    data_rate_bps: float
    required_eb_n0_db: tuple[tuple[str, float], ...] = DEFAULT_EBN0_THRESHOLDS_DB
    path_length_m: float | None = None
    frequency_hz: float | None = None

    def __post_init__(self) -> None:
        for name, value in (
            ("transmit power", self.transmit_power_dbw),
            ("transmit gain", self.transmit_gain_dbi),
            ("transmit feeder loss", self.transmit_feeder_loss_db),
            ("receive gain", self.receive_gain_dbi),
        ):
            _require_finite(name, value)
        if self.transmit_feeder_loss_db < 0.0:
            raise DomainError("transmit feeder loss must be >= 0 dB")
        for name, value in self.losses_db:
            if value < 0.0:
                raise DomainError(f"loss {name!r} must be >= 0 dB")
        if self.feeder_loss_linear < 1.0:
            raise DomainError("linear feeder loss must be >= 1")
        if self.data_rate_bps <= 0.0:
            raise DomainError("data rate must be > 0 bit/s")
        if self.antenna_temperature_k < 0.0 or self.receiver_temperature_k < 0.0:
            raise DomainError("temperatures must be >= 0 K")


@dataclass(frozen=True)
class FslCheck:
    """Ledger vs. recomputed free-space loss diagnostic."""

    ledger_db: float
    recomputed_db: float
    difference_db: float
    flagged: bool


@dataclass(frozen=True)
class LinkReport:
    """Derived link figures; every field is recomputable from the budget alone."""

    eirp_dbw: float
    total_loss_db: float
    system_temperature_k: float
    g_over_t_db_per_k: float
    c_over_n0_dbhz: float
    eb_over_n0_db: float
    margins_db: tuple[tuple[str, float], ...]
    fsl_check: FslCheck | None = None

    def closes(self, modulation: str) -> bool:
        """True when the stated modulation has non-negative margin."""
        for name, margin in self.margins_db:
            if name == modulation:
                return margin >= 0.0
        raise DomainError(f"no threshold named {modulation!r} in this report")

    @property
    def margins(self) -> dict[str, float]:
        return dict(self.margins_db)


def evaluate_link(
    budget: LinkBudget,
    fsl_flag_threshold_db: float = 0.5,
) -> LinkReport:
    """Evaluate a budget end to end and check its free-space-loss entry.

    The disagreement flag is raised when the ledger FSL and the value
    recomputed from (distance, frequency) differ by more than
    ``fsl_flag_threshold_db``.
    """
    eirp_dbw = eirp(
        budget.transmit_power_dbw,
        budget.transmit_gain_dbi,
        budget.transmit_feeder_loss_db,
    )
    loss_db = total_loss(budget.losses_db)
    t_sys = system_noise_temperature(
        budget.antenna_temperature_k,
        budget.receiver_temperature_k,
        budget.feeder_loss_linear,
    )
    g_over_t = figure_of_merit(budget.receive_gain_dbi, t_sys)
    cn0 = c_over_n0(eirp_dbw, loss_db, g_over_t)
    ebn0 = eb_over_n0(cn0, budget.data_rate_bps)
    margins = tuple(
        (name, ebn0 - required) for name, required in budget.required_eb_n0_db
    )

    fsl_check = None
    if budget.path_length_m is not None and budget.frequency_hz is not None:
        ledger_fsl = next(
            (value for name, value in budget.losses_db if name.lower() in _FSL_NAMES),
            None,
        )
        if ledger_fsl is not None:
            recomputed = free_space_loss(budget.path_length_m, budget.frequency_hz)
            difference = recomputed - ledger_fsl
            fsl_check = FslCheck(
                ledger_db=ledger_fsl,
                recomputed_db=recomputed,
                difference_db=difference,
                flagged=abs(difference) > fsl_flag_threshold_db,
            )

    return LinkReport(
        eirp_dbw=eirp_dbw,
        total_loss_db=loss_db,
        system_temperature_k=t_sys,
        g_over_t_db_per_k=g_over_t,
        c_over_n0_dbhz=cn0,
        eb_over_n0_db=ebn0,
        margins_db=margins,
        fsl_check=fsl_check,
    )
