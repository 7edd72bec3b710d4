"""Intrinsic noise floors and field-calibration primitives of atomic
(Rydberg-state) electric-field sensors."""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass

from . import fieldmetrics
from .errors import DomainError
from .quantities import CODATA

__all__ = [
    "ATOMIC_DIPOLE_UNIT",
    "RydbergSensorBudget",
    "ac_stark_shift",
    "compare_to_classical",
    "dipole_moment",
    "field_from_rabi",
    "photon_shot_noise_nep",
    "qpn_nef",
    "rabi_from_field",
]

# e * a_0 in C*m; transition dipole moments between neighbouring high-n
# states are conveniently quoted in multiples of this.
ATOMIC_DIPOLE_UNIT = 1.602176634e-19 * 5.29177210903e-11


def dipole_moment(multiple_of_e_a0: float) -> float:
    """Dipole moment in C*m from a multiple of e*a_0."""
    if multiple_of_e_a0 <= 0.0:
        raise DomainError("dipole moment must be > 0")
    return multiple_of_e_a0 * ATOMIC_DIPOLE_UNIT


@dataclass(frozen=True)
class RydbergSensorBudget:
    """Parameters that set an atomic sensor's intrinsic noise floors.

    Attributes:
        dipole_moment_cm: transition dipole moment (C*m).
        atom_count: number of atoms contributing to the signal.
        coherence_time_s: duration over which the quantum state keeps a
            well-defined phase.
        probe_power_w: detected average probe power (optional).
        probe_frequency_hz: probe laser frequency (optional).
    """

    dipole_moment_cm: float
    atom_count: float
    coherence_time_s: float
    probe_power_w: float | None = None
    probe_frequency_hz: float | None = None

    def __post_init__(self) -> None:
        if self.dipole_moment_cm <= 0.0:
            raise DomainError("dipole moment must be > 0 C*m")
        if self.atom_count <= 0.0:
            raise DomainError("atom count must be > 0")
        if self.coherence_time_s <= 0.0:
            raise DomainError("coherence time must be > 0 s")
        if self.probe_power_w is not None and self.probe_power_w < 0.0:
            raise DomainError("probe power must be >= 0 W")
        if self.probe_frequency_hz is not None and self.probe_frequency_hz <= 0.0:
            raise DomainError("probe frequency must be > 0 Hz")


def qpn_nef(
    dipole_moment_cm: float,
    atom_count: float,
    coherence_time_s: float,
    integration_time_s: float | None = None,
) -> float:
    """Quantum-projection-noise field floor, V/m/sqrt(Hz).

    NEF_qpn = (h/d) / sqrt(N * tau_coh), the measurement-collapse limit of an
    atomic field sensor.  Valid when the integration time exceeds the
    coherence time; passing a shorter ``integration_time_s`` triggers a
    warning because the expression then underestimates the floor.
    """
    if dipole_moment_cm <= 0.0:
        raise DomainError("dipole moment must be > 0 C*m")
    if atom_count <= 0.0 or coherence_time_s <= 0.0:
        raise DomainError("atom count and coherence time must be > 0")
    if integration_time_s is not None and integration_time_s < coherence_time_s:
        _warnings.warn(
            "integration time is below the coherence time; the projection-noise "
            "expression assumes integration over at least one coherence time",
            stacklevel=2,
        )
    return (CODATA.planck / dipole_moment_cm) / math.sqrt(atom_count * coherence_time_s)


def photon_shot_noise_nep(probe_power_w: float, probe_frequency_hz: float) -> float:
    """Shot-noise power spectral density of the probe readout, W/sqrt(Hz).

    P_SN = sqrt(P_probe * h * nu_p) for detected average probe power P_probe.
    """
    if probe_power_w < 0.0:
        raise DomainError("probe power must be >= 0 W")
    if probe_frequency_hz <= 0.0:
        raise DomainError("probe frequency must be > 0 Hz")
    return math.sqrt(probe_power_w * CODATA.planck * probe_frequency_hz)


def rabi_from_field(
    field_v_per_m: float,
    dipole_moment_cm: float,
    alignment_cosine: float = 1.0,
) -> float:
    """Rabi (angular) frequency driven by a co-aligned field: Omega = d*E/hbar.

    This is the SI-traceable calibration primitive: the dipole moment is
    calculable, so a measured splitting fixes the field amplitude without an
    external standard.  ``alignment_cosine`` scales the scalar product for a
    field not aligned with the dipole.
    """
    if dipole_moment_cm <= 0.0:
        raise DomainError("dipole moment must be > 0 C*m")
    if field_v_per_m < 0.0:
        raise DomainError("field amplitude must be >= 0 V/m")
    if not -1.0 <= alignment_cosine <= 1.0:
        raise DomainError("alignment cosine must be in [-1, 1]")
    return dipole_moment_cm * field_v_per_m * alignment_cosine / CODATA.reduced_planck


def field_from_rabi(
    rabi_rad_per_s: float,
    dipole_moment_cm: float,
    alignment_cosine: float = 1.0,
) -> float:
    """Field amplitude from a measured Rabi frequency; inverse of
    :func:`rabi_from_field`."""
    if dipole_moment_cm <= 0.0:
        raise DomainError("dipole moment must be > 0 C*m")
    if rabi_rad_per_s < 0.0:
        raise DomainError("Rabi frequency must be >= 0 rad/s")
    if alignment_cosine == 0.0 or not -1.0 <= alignment_cosine <= 1.0:
        raise DomainError("alignment cosine must be in [-1, 1] and non-zero")
    return rabi_rad_per_s * CODATA.reduced_planck / (dipole_moment_cm * alignment_cosine)


def ac_stark_shift(
    rabi_rad_per_s: float,
    detuning_rad_per_s: float,
    proportionality: float = 0.25,
) -> float:
    """Off-resonant level shift ``k * |Omega|^2 / Delta`` in rad/s.

    Only the |Omega|^2/Delta scaling is physically fixed; the prefactor
    depends on the level structure.  The default 1/4 is the standard
    two-level far-detuned convention, supplied as a convention rather than a
    measured constant, and callers should override it for their own system.
    """
    if detuning_rad_per_s == 0.0:
        raise DomainError("detuning must be non-zero (resonant case has no Stark shift)")
    return proportionality * abs(rabi_rad_per_s) ** 2 / detuning_rad_per_s


def compare_to_classical(
    sensor_nef: float,
    gain: float,
    frequency_hz: float,
    rho2: float = 1.0,
    eta_0: float | None = None,
) -> float:
    """Noise temperature a classical receiver would need to match this NEF.

    Thin wrapper over :func:`rfsense.fieldmetrics.tsys_from_nef` for
    benchmarking an atomic sensor against amplifier noise temperatures under
    an assumed coupling (G, f, rho^2).
    """
    return fieldmetrics.tsys_from_nef(sensor_nef, gain, frequency_hz, rho2, eta_0)
