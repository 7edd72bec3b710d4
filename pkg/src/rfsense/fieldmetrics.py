"""Noise-equivalent field framework: conversions among noise temperature,
effective aperture, gain, SEFD, and equivalent free-space field, plus the
cavity field-enhancement chain.

The central quantity is the input-referred equivalent free-space electric
field spectral density of a receiver,

    E_free = sqrt(k_B * T_sys * eta_0 / (rho^2 * A_e))   [V/m/sqrt(Hz)],

the plane-wave field per sqrt(Hz) that would deliver the system noise power
through the effective aperture for a single receiving polarisation.  It lets
heterogeneous receivers (dishes, radiometers, atomic field probes) be
compared on one axis.  Inverting a field sensitivity back to (T_sys, A_e) is
not unique without a coupling model, so the inverse conversions here always
require explicit gain (or aperture), frequency, and polarisation coupling.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass

from .errors import DomainError
from .quantities import CODATA, default_eta0, frequency_to_wavelength

__all__ = [
    "CavityCoupling",
    "ReceiverReference",
    "aperture_from_diameter",
    "aperture_from_gain",
    "default_polarisation_coupling",
    "enhancement_factor_cavity",
    "local_field_requirement",
    "meets_classical_reference",
    "nef_from_aperture",
    "nef_from_gain",
    "sefd",
    "trx_from_noise_figure",
    "tsys_from_nef",
]

# Aperture efficiency assumed when deriving effective area from dish size
# and no measured efficiency is available.
DEFAULT_APERTURE_EFFICIENCY = 0.65


def default_polarisation_coupling(coherence: str) -> float:
    """Conventional rho^2 for a coherence class, overridable everywhere.

    Polarisation-matched coherent systems couple the full field power
    (rho^2 = 1); a single-channel receiver of unpolarised emission couples
    half of it (rho^2 = 1/2).
    """
    if coherence == "coherent":
        return 1.0
    if coherence == "incoherent":
        return 0.5
    raise DomainError(
        f"coherence must be 'coherent' or 'incoherent', got {coherence!r}"
    )


@dataclass(frozen=True)
class ReceiverReference:
    """A classical receiver reference: T_sys plus an aperture description.

    The aperture may be given directly (``effective_aperture_m2``) or as a
    linear gain with its frequency; when both are supplied they must agree
    through A_e = G*lambda^2/(4*pi) to 1e-9 relative.  ``rho2`` is the
    polarisation power coupling: 1 for a polarisation-matched coherent
    signal, 1/2 for unpolarised emission on a single linear channel.
    """

    system_temperature_k: float
    effective_aperture_m2: float | None = None
    gain: float | None = None
    frequency_hz: float | None = None
    rho2: float = 1.0

    def __post_init__(self) -> None:
        if self.system_temperature_k <= 0.0:
            raise DomainError("system temperature must be > 0 K")
        if not 0.0 < self.rho2 <= 1.0:
            raise DomainError("polarisation coupling rho^2 must be in (0, 1]")
        has_aperture = self.effective_aperture_m2 is not None
        has_gain = self.gain is not None and self.frequency_hz is not None
        if not has_aperture and not has_gain:
            raise DomainError("need an effective aperture, or a gain with frequency")
        if has_aperture and self.effective_aperture_m2 <= 0.0:
            raise DomainError("effective aperture must be > 0 m^2")
        if self.gain is not None and self.gain <= 0.0:
            raise DomainError("gain must be > 0")
        if self.frequency_hz is not None and self.frequency_hz <= 0.0:
            raise DomainError("frequency must be > 0 Hz")
        if has_aperture and has_gain:
            implied = aperture_from_gain(self.gain, self.frequency_hz)
            if abs(implied - self.effective_aperture_m2) > 1e-9 * self.effective_aperture_m2:
                raise DomainError(
                    "aperture and gain disagree: "
                    f"A_e={self.effective_aperture_m2:g} m^2 vs "
                    f"G*lambda^2/(4*pi)={implied:g} m^2"
                )

    def aperture_m2(self) -> float:
        if self.effective_aperture_m2 is not None:
            return self.effective_aperture_m2
        return aperture_from_gain(self.gain, self.frequency_hz)


@dataclass(frozen=True)
class CavityCoupling:
    """A single-mode cavity coupling an incident field to the sensing volume.

    ``q_loaded`` is canonical; external/internal quality factors are kept
    when known and must then satisfy 1/Q_L = 1/Q_e + 1/Q_i to 1e-9 relative.
    ``rf_efficiency`` is the transfer efficiency from the antenna port into
    the cavity input and ``mode_volume_m3`` the electric-energy volume of the
    probed mode.
    """

    frequency_hz: float
    q_loaded: float
    rf_efficiency: float
    mode_volume_m3: float
    q_external: float | None = None
    q_internal: float | None = None

    def __post_init__(self) -> None:
        if self.frequency_hz <= 0.0:
            raise DomainError("centre frequency must be > 0 Hz")
        if self.q_loaded <= 0.0:
            raise DomainError("loaded quality factor must be > 0")
        if not 0.0 < self.rf_efficiency <= 1.0:
            raise DomainError("RF transfer efficiency must be in (0, 1]")
        if self.mode_volume_m3 <= 0.0:
            raise DomainError("mode volume must be > 0 m^3")
        if (self.q_external is None) != (self.q_internal is None):
            raise DomainError("give both or neither of Q_e and Q_i")
        if self.q_external is not None:
            if self.q_external <= 0.0 or self.q_internal <= 0.0:
                raise DomainError("quality factors must be > 0")
            combined = 1.0 / (1.0 / self.q_external + 1.0 / self.q_internal)
            if abs(combined - self.q_loaded) > 1e-9 * self.q_loaded:
                raise DomainError(
                    f"1/Q_L = 1/Q_e + 1/Q_i violated: Q_L={self.q_loaded:g} "
                    f"but combination gives {combined:g}"
                )

    @classmethod
    def from_quality_factors(
        cls,
        frequency_hz: float,
        q_external: float,
        q_internal: float,
        rf_efficiency: float,
        mode_volume_m3: float,
    ) -> "CavityCoupling":
        if q_external <= 0.0 or q_internal <= 0.0:
            raise DomainError("quality factors must be > 0")
        q_loaded = 1.0 / (1.0 / q_external + 1.0 / q_internal)
        return cls(frequency_hz, q_loaded, rf_efficiency, mode_volume_m3,
                   q_external, q_internal)

    @classmethod
    def from_loaded_q(
        cls,
        frequency_hz: float,
        q_loaded: float,
        rf_efficiency: float,
        mode_volume_m3: float,
    ) -> "CavityCoupling":
        return cls(frequency_hz, q_loaded, rf_efficiency, mode_volume_m3)

    @classmethod
    def from_bandwidth(
        cls,
        frequency_hz: float,
        admitted_bandwidth_hz: float,
        rf_efficiency: float,
        mode_volume_m3: float,
    ) -> "CavityCoupling":
        """Choose Q_L = f_0/B so the linewidth admits the signal bandwidth."""
        if admitted_bandwidth_hz <= 0.0:
            raise DomainError("admitted bandwidth must be > 0 Hz")
        return cls(frequency_hz, frequency_hz / admitted_bandwidth_hz,
                   rf_efficiency, mode_volume_m3)

    @property
    def linewidth_hz(self) -> float:
        """Cavity linewidth f_0/Q_L."""
        return self.frequency_hz / self.q_loaded


def sefd(
    system_temperature_k: float,
    effective_aperture_m2: float,
    rho2: float = 1.0,
) -> float:
    """System equivalent flux density ``k_B*T_sys/(rho^2*A_e)`` in W/m^2/Hz.

    The incident power flux density that yields SNR = 1 in 1 Hz.  For an
    unpolarised signal on one linear polarisation (rho^2 = 1/2) this reduces
    to the common form 2*k_B*T_sys/A_e.
    """
    _check_field_inputs(system_temperature_k, effective_aperture_m2, rho2)
    if system_temperature_k == 0.0:
        return 0.0
    return CODATA.boltzmann * system_temperature_k / (rho2 * effective_aperture_m2)


def nef_from_aperture(
    system_temperature_k: float,
    effective_aperture_m2: float,
    rho2: float = 1.0,
    eta_0: float | None = None,
) -> float:
    """Equivalent free-space field at SNR = 1, from T_sys and aperture.

    E_free = sqrt(k_B*T_sys*eta_0/(rho^2*A_e)) = sqrt(SEFD*eta_0), in
    V/m/sqrt(Hz).
    """
    if eta_0 is None:
        eta_0 = default_eta0()
    _check_field_inputs(system_temperature_k, effective_aperture_m2, rho2)
    if system_temperature_k <= 0.0:
        raise DomainError("system temperature must be > 0 K")
    return math.sqrt(
        CODATA.boltzmann * system_temperature_k * eta_0
        / (rho2 * effective_aperture_m2)
    )


def nef_from_gain(
    system_temperature_k: float,
    gain: float,
    frequency_hz: float,
    rho2: float = 1.0,
    eta_0: float | None = None,
) -> float:
    """Equivalent free-space field at SNR = 1, gain-based form.

    NEF = sqrt(4*pi*f^2*k_B*T_sys*eta_0 / (c^2*G*rho2)) in V/m/sqrt(Hz);
    for rho^2 = 1/2 this is the 8*pi form, a factor sqrt(2) above the
    polarisation-matched value.  Algebraically identical to
    ``nef_from_aperture`` with A_e = G*lambda^2/(4*pi).
    """
    if eta_0 is None:
        eta_0 = default_eta0()
    if system_temperature_k <= 0.0:
        raise DomainError("system temperature must be > 0 K")
    if gain <= 0.0:
        raise DomainError("gain must be > 0")
    if frequency_hz <= 0.0:
        raise DomainError("frequency must be > 0 Hz")
    if not 0.0 < rho2 <= 1.0:
        raise DomainError("polarisation coupling rho^2 must be in (0, 1]")
    c = CODATA.light_speed
    return math.sqrt(
        4.0 * math.pi * frequency_hz**2 * CODATA.boltzmann * system_temperature_k
        * eta_0 / (c**2 * gain * rho2)
    )


def tsys_from_nef(
    nef_v_per_m_sqrt_hz: float,
    gain: float,
    frequency_hz: float,
    rho2: float = 1.0,
    eta_0: float | None = None,
) -> float:
    """Noise temperature implied by a field sensitivity; inverse of
    :func:`nef_from_gain`.

    The mapping needs the full coupling assumption (G, f, rho^2) because a
    bare NEF does not determine (T_sys, A_e) uniquely.
    """
    if eta_0 is None:
        eta_0 = default_eta0()
    if nef_v_per_m_sqrt_hz <= 0.0:
        raise DomainError("NEF must be > 0")
    if gain <= 0.0:
        raise DomainError("gain must be > 0")
    if frequency_hz <= 0.0:
        raise DomainError("frequency must be > 0 Hz")
    if not 0.0 < rho2 <= 1.0:
        raise DomainError("polarisation coupling rho^2 must be in (0, 1]")
    c = CODATA.light_speed
    return (
        nef_v_per_m_sqrt_hz**2 * c**2 * gain * rho2
        / (4.0 * math.pi * frequency_hz**2 * CODATA.boltzmann * eta_0)
    )


def aperture_from_gain(gain: float, frequency_hz: float) -> float:
    """Effective aperture ``A_e = G*lambda^2/(4*pi)`` in m^2."""
    if gain <= 0.0:
        raise DomainError("gain must be > 0")
    wavelength = frequency_to_wavelength(frequency_hz)
    return gain * wavelength**2 / (4.0 * math.pi)


def aperture_from_diameter(
    diameter_m: float,
    aperture_efficiency: float = DEFAULT_APERTURE_EFFICIENCY,
) -> float:
    """Effective aperture of a circular dish: ``eta_ap * pi * (D/2)^2``."""
    if diameter_m <= 0.0:
        raise DomainError("diameter must be > 0 m")
    if not 0.0 < aperture_efficiency <= 1.0:
        raise DomainError("aperture efficiency must be in (0, 1]")
    return aperture_efficiency * math.pi * (diameter_m / 2.0) ** 2


def trx_from_noise_figure(
    noise_figure_db: float,
    reference_temperature_k: float = CODATA.reference_temperature,
) -> float:
    """Receiver noise temperature from a noise figure:
    ``T_Rx = (10^(NF/10) - 1) * T_0``."""
    if noise_figure_db < 0.0:
        raise DomainError("noise figure must be >= 0 dB")
    return (10.0 ** (noise_figure_db / 10.0) - 1.0) * reference_temperature_k


def enhancement_factor_cavity(
    cavity: CavityCoupling,
    effective_aperture_m2: float,
    eta_0: float | None = None,
) -> float:
    """Field enhancement of a critically coupled cavity fed from an aperture.

    beta = sqrt(eta_c) * sqrt(2*Q_L/omega_0) * sqrt(A_e/(2*eta_0*eps_0*V_eff)),
    the dimensionless ratio of the RMS field in the probed mode volume to the
    incident free-space field at the aperture.
    """
    if eta_0 is None:
        eta_0 = default_eta0()
    if effective_aperture_m2 <= 0.0:
        raise DomainError("effective aperture must be > 0 m^2")
    omega_0 = 2.0 * math.pi * cavity.frequency_hz
    return (
        math.sqrt(cavity.rf_efficiency)
        * math.sqrt(2.0 * cavity.q_loaded / omega_0)
        * math.sqrt(
            effective_aperture_m2
            / (2.0 * eta_0 * CODATA.vacuum_permittivity * cavity.mode_volume_m3)
        )
    )


def local_field_requirement(
    reference: ReceiverReference,
    enhancement: float,
    eta_0: float | None = None,
) -> float:
    """Local field spectral density at the sensor matching a classical reference.

    E_loc = beta * E_free, where E_free is the reference receiver's
    equivalent free-space NEF.  An enhancement below 1 (attenuation) is
    allowed but flagged with a warning, since the point of the structure is
    to relax the sensor's local requirement.
    """
    if enhancement <= 0.0:
        raise DomainError("enhancement factor must be > 0")
    if enhancement < 1.0:
        _warnings.warn(
            f"enhancement factor {enhancement:g} < 1 attenuates the field",
            stacklevel=2,
        )
    free = nef_from_aperture(
        reference.system_temperature_k,
        reference.aperture_m2(),
        reference.rho2,
        eta_0,
    )
    return enhancement * free


def meets_classical_reference(
    sensor_local_nef: float,
    local_field_requirement_value: float,
) -> bool:
    """True when the sensor's local NEF meets or beats the local requirement."""
    if sensor_local_nef <= 0.0 or local_field_requirement_value <= 0.0:
        raise DomainError("field spectral densities must be > 0")
    return sensor_local_nef <= local_field_requirement_value


def _check_field_inputs(system_temperature_k, effective_aperture_m2, rho2) -> None:
    if system_temperature_k < 0.0:
        raise DomainError("system temperature must be >= 0 K")
    if effective_aperture_m2 <= 0.0:
        raise DomainError("effective aperture must be > 0 m^2")
    if not 0.0 < rho2 <= 1.0:
        raise DomainError("polarisation coupling rho^2 must be in (0, 1]")
