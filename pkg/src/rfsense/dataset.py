"""Instrument dataset pipeline: ingest the bundled spaceborne-receiver table,
resolve derived fields from their method tags, compute per-row equivalent
free-space fields, and synthesize per-category parameter ranges with
propagated engineering margins.

Dataset CSV schema (UTF-8, comma-separated, header required)::

    instrument, mission, category, coherence, f0_ghz, bandwidth_hz,
    bandwidth_method, aperture_method, a_e_m2, a_phys_m2, eta_ap, gain_dbi,
    t_a_k, t_a_flag, t_rx_k, t_rx_method, nf_db, t_sys_k, t_sys_method,
    nedt_k, tau_s, rho2, reference

Empty cells mean "not provided"; method tags constrain which cells must be
present.  An empty ``rho2`` cell takes the conventional value for the row's
coherence tag (1 coherent, 1/2 incoherent).  An optional trailing
``e_free_reported`` column carries the field value quoted by the dataset's
source for cross-checking; mismatches between it and the recomputed value
are surfaced as diagnostics, never silently corrected.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from typing import Iterable, Sequence

from .errors import DomainError, SchemaError
from .fieldmetrics import (
    DEFAULT_APERTURE_EFFICIENCY,
    aperture_from_gain,
    default_polarisation_coupling,
    nef_from_aperture,
    trx_from_noise_figure,
)
from .radiometry import tsys_from_nedt

__all__ = [
    "CategoryRange",
    "Diagnostic",
    "InstrumentRecord",
    "ParseResult",
    "bundled_dataset_path",
    "consistency_diagnostics",
    "derive_record",
    "derive_records",
    "emit_plot_data",
    "load_bundled_dataset",
    "parse_instruments",
    "round_to_sig_figs",
    "serialize_instruments",
    "synthesize_all",
    "synthesize_ranges",
]

REQUIRED_COLUMNS = (
    "instrument", "mission", "category", "coherence", "f0_ghz",
    "bandwidth_hz", "bandwidth_method", "aperture_method", "a_e_m2",
    "a_phys_m2", "eta_ap", "gain_dbi", "t_a_k", "t_a_flag", "t_rx_k",
    "t_rx_method", "nf_db", "t_sys_k", "t_sys_method", "nedt_k", "tau_s",
    "rho2", "reference",
)
OPTIONAL_COLUMNS = ("e_free_reported",)

COHERENCE_TAGS = ("coherent", "incoherent")
BANDWIDTH_METHODS = ("RF", "noise", "chirp")
APERTURE_METHODS = ("direct", "phys", "gain")
T_A_FLAGS = ("measured", "assumed", "coh-eq")
T_RX_METHODS = ("direct", "NF")
T_SYS_METHODS = ("sum", "NEDT")

LOWER_MARGIN = 0.8
UPPER_MARGIN = 1.2

# Default coordinates of the microwave-to-optical converter marker on the
# bandwidth/field plane: inferred sensitivity 4 nV/cm/sqrt(Hz) expressed in
# V/m/sqrt(Hz); the bandwidth coordinate is representative and caller-set.
CONVERTER_MARKER_NAME = "mw-optical-converter"
CONVERTER_MARKER_NEF = 4e-7
CONVERTER_MARKER_BANDWIDTH_HZ = 1e7


@dataclass(frozen=True)
class InstrumentRecord:
    """One instrument row, raw values plus method/provenance tags.

    ``e_free_vm_sqrthz`` is filled by :func:`derive_record`;
    ``e_free_reported`` is the source-quoted value kept for cross-checks.
    """

    instrument: str
    mission: str
    category: str
    coherence: str
    f0_ghz: float
    bandwidth_hz: float
    bandwidth_method: str
    aperture_method: str
    a_e_m2: float | None
    a_phys_m2: float | None
    eta_ap: float | None
    gain_dbi: float | None
    t_a_k: float | None
    t_a_flag: str | None
    t_rx_k: float | None
    t_rx_method: str | None
    nf_db: float | None
    t_sys_k: float | None
    t_sys_method: str
    nedt_k: float | None
    tau_s: float | None
    rho2: float
    reference: str
    e_free_reported: float | None = None
    e_free_vm_sqrthz: float | None = None

    @property
    def f0_hz(self) -> float:
        return self.f0_ghz * 1e9

    @property
    def is_derived(self) -> bool:
        return (
            self.a_e_m2 is not None
            and self.t_sys_k is not None
            and self.e_free_vm_sqrthz is not None
        )


@dataclass(frozen=True)
class Diagnostic:
    """A named, row-attributed problem found while processing the dataset."""

    row: int
    instrument: str
    message: str

    def __str__(self) -> str:
        return f"row {self.row} ({self.instrument}): {self.message}"


@dataclass(frozen=True)
class ParseResult:
    records: tuple[InstrumentRecord, ...]
    diagnostics: tuple[Diagnostic, ...]


@dataclass(frozen=True)
class CategoryRange:
    """Synthesised parameter bounds for one receiver category.

    Frequency bounds are the raw extrema (no margin); temperature, aperture
    and bandwidth bounds carry the 0.8x/1.2x margins; the field bounds are
    recomputed from the perturbed temperature and aperture bounds so the
    physical coupling between parameters is preserved.
    """

    category: str
    f0_min_hz: float
    f0_max_hz: float
    a_e_min_m2: float
    a_e_max_m2: float
    t_sys_min_k: float
    t_sys_max_k: float
    bandwidth_min_hz: float
    bandwidth_max_hz: float
    e_free_min: float
    e_free_max: float
    members: int

    def __post_init__(self) -> None:
        pairs = (
            (self.f0_min_hz, self.f0_max_hz),
            (self.a_e_min_m2, self.a_e_max_m2),
            (self.t_sys_min_k, self.t_sys_max_k),
            (self.bandwidth_min_hz, self.bandwidth_max_hz),
            (self.e_free_min, self.e_free_max),
        )
        for low, high in pairs:
            if low > high:
                raise DomainError(f"range bounds out of order: {low:g} > {high:g}")


def round_to_sig_figs(value: float, figures: int = 2) -> float:
    """Round to ``figures`` significant digits with half-up ties."""
    if figures < 1:
        raise DomainError("significant figures must be >= 1")
    if value == 0.0 or not math.isfinite(value):
        return value
    exponent = math.floor(math.log10(abs(value)))
    quantum = Decimal(1).scaleb(exponent - figures + 1)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _parse_cell(text: str | None) -> float | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return None
    return float(text)  # ValueError propagates to the row handler


def _tag(text: str | None) -> str | None:
    text = (text or "").strip()
    return text or None


def parse_instruments(document: str) -> ParseResult:
    """Parse a dataset CSV document into instrument records.

    Malformed rows are collected into the diagnostics list rather than
    silently dropped; a missing required column raises :class:`SchemaError`
    naming the column.
    """
    reader = csv.DictReader(io.StringIO(document))
    if reader.fieldnames is None:
        raise SchemaError("document has no header row")
    header = [name.strip() for name in reader.fieldnames]
    missing = [name for name in REQUIRED_COLUMNS if name not in header]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")
    unknown = [
        name for name in header
        if name not in REQUIRED_COLUMNS and name not in OPTIONAL_COLUMNS
    ]
    if unknown:
        raise SchemaError(f"unknown column(s): {', '.join(unknown)}")

    records: list[InstrumentRecord] = []
    diagnostics: list[Diagnostic] = []
    for row_number, row in enumerate(reader, start=2):
        name = (row.get("instrument") or "").strip()
        try:
            records.append(_parse_row(row))
        except (DomainError, ValueError) as exc:
            diagnostics.append(Diagnostic(row_number, name or "<unnamed>", str(exc)))
    return ParseResult(tuple(records), tuple(diagnostics))


def _parse_row(row: dict) -> InstrumentRecord:
    def bad(message: str) -> DomainError:
        return DomainError(message)

    coherence = _tag(row.get("coherence"))
    if coherence not in COHERENCE_TAGS:
        raise bad(f"coherence must be one of {COHERENCE_TAGS}, got {coherence!r}")
    bandwidth_method = _tag(row.get("bandwidth_method"))
    if bandwidth_method not in BANDWIDTH_METHODS:
        raise bad(f"bandwidth_method must be one of {BANDWIDTH_METHODS}, got {bandwidth_method!r}")
    aperture_method = _tag(row.get("aperture_method"))
    if aperture_method not in APERTURE_METHODS:
        raise bad(f"aperture_method must be one of {APERTURE_METHODS}, got {aperture_method!r}")
    t_sys_method = _tag(row.get("t_sys_method"))
    if t_sys_method not in T_SYS_METHODS:
        raise bad(f"t_sys_method must be one of {T_SYS_METHODS}, got {t_sys_method!r}")

    f0_ghz = _parse_cell(row.get("f0_ghz"))
    if f0_ghz is None or f0_ghz <= 0.0:
        raise bad("f0_ghz must be present and > 0")
    bandwidth_hz = _parse_cell(row.get("bandwidth_hz"))
    if bandwidth_hz is None or bandwidth_hz <= 0.0:
        raise bad("bandwidth_hz must be present and > 0")
    rho2 = _parse_cell(row.get("rho2"))
    if rho2 is None:
        rho2 = default_polarisation_coupling(coherence)
    if not 0.0 < rho2 <= 1.0:
        raise bad("rho2 must be in (0, 1]")

    a_e = _parse_cell(row.get("a_e_m2"))
    a_phys = _parse_cell(row.get("a_phys_m2"))
    eta_ap = _parse_cell(row.get("eta_ap"))
    gain_dbi = _parse_cell(row.get("gain_dbi"))
    if a_e is None:
        if aperture_method == "direct":
            raise bad("aperture_method 'direct' needs a_e_m2")
        if aperture_method == "phys" and a_phys is None:
            raise bad("aperture_method 'phys' needs a_phys_m2 (or a pre-derived a_e_m2)")
        if aperture_method == "gain" and gain_dbi is None:
            raise bad("aperture_method 'gain' needs gain_dbi (or a pre-derived a_e_m2)")

    t_a = _parse_cell(row.get("t_a_k"))
    t_a_flag = _tag(row.get("t_a_flag"))
    if t_a is not None and t_a_flag is None:
        t_a_flag = "measured"
    if t_a_flag is not None and t_a_flag not in T_A_FLAGS:
        raise bad(f"t_a_flag must be one of {T_A_FLAGS}, got {t_a_flag!r}")

    t_rx = _parse_cell(row.get("t_rx_k"))
    nf_db = _parse_cell(row.get("nf_db"))
    t_rx_method = _tag(row.get("t_rx_method"))
    if t_rx_method is None and (t_rx is not None or nf_db is not None):
        t_rx_method = "NF" if (t_rx is None and nf_db is not None) else "direct"
    if t_rx_method is not None and t_rx_method not in T_RX_METHODS:
        raise bad(f"t_rx_method must be one of {T_RX_METHODS}, got {t_rx_method!r}")
    if t_rx_method == "NF" and t_rx is None and nf_db is None:
        raise bad("t_rx_method 'NF' needs nf_db (or a pre-derived t_rx_k)")

    t_sys = _parse_cell(row.get("t_sys_k"))
    nedt_k = _parse_cell(row.get("nedt_k"))
    tau_s = _parse_cell(row.get("tau_s"))
    if t_sys is None:
        if t_sys_method == "NEDT" and (nedt_k is None or tau_s is None):
            raise bad("t_sys_method 'NEDT' needs nedt_k and tau_s (or a pre-derived t_sys_k)")
        if t_sys_method == "sum":
            t_rx_resolvable = t_rx is not None or nf_db is not None
            if t_a is None or not t_rx_resolvable:
                raise bad("t_sys_method 'sum' needs t_a_k and a resolvable t_rx")

    return InstrumentRecord(
        instrument=(row.get("instrument") or "").strip(),
        mission=(row.get("mission") or "").strip(),
        category=(row.get("category") or "").strip(),
        coherence=coherence,
        f0_ghz=f0_ghz,
        bandwidth_hz=bandwidth_hz,
        bandwidth_method=bandwidth_method,
        aperture_method=aperture_method,
        a_e_m2=a_e,
        a_phys_m2=a_phys,
        eta_ap=eta_ap,
        gain_dbi=gain_dbi,
        t_a_k=t_a,
        t_a_flag=t_a_flag,
        t_rx_k=t_rx,
        t_rx_method=t_rx_method,
        nf_db=nf_db,
        t_sys_k=t_sys,
        t_sys_method=t_sys_method,
        nedt_k=nedt_k,
        tau_s=tau_s,
        rho2=rho2,
        reference=(row.get("reference") or "").strip(),
        e_free_reported=_parse_cell(row.get("e_free_reported")),
    )


def serialize_instruments(records: Iterable[InstrumentRecord]) -> str:
    """Serialize records back to the dataset CSV schema (RFC-4180)."""
    out = io.StringIO()
    columns = REQUIRED_COLUMNS + OPTIONAL_COLUMNS
    writer = csv.writer(out)
    writer.writerow(columns)

    def cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, float):
            return repr(value)
        return str(value)

    for r in records:
        writer.writerow([
            r.instrument, r.mission, r.category, r.coherence, cell(r.f0_ghz),
            cell(r.bandwidth_hz), r.bandwidth_method, r.aperture_method,
            cell(r.a_e_m2), cell(r.a_phys_m2), cell(r.eta_ap), cell(r.gain_dbi),
            cell(r.t_a_k), cell(r.t_a_flag), cell(r.t_rx_k), cell(r.t_rx_method),
            cell(r.nf_db), cell(r.t_sys_k), cell(r.t_sys_method), cell(r.nedt_k),
            cell(r.tau_s), cell(r.rho2), r.reference, cell(r.e_free_reported),
        ])
    return out.getvalue()


def derive_record(record: InstrumentRecord, eta_0: float | None = None) -> InstrumentRecord:
    """Resolve the derived fields of one record.

    Fills the effective aperture via its method tag (direct value; physical
    area times aperture efficiency, default 0.65; or gain through
    A_e = G*lambda^2/(4*pi)), the receiver temperature via the noise-figure
    rule where tagged, the system temperature via the sum or NEDT rule, and
    the per-row equivalent free-space field.  Idempotent: deriving an
    already-derived record returns an equal record.
    """
    try:
        a_e = record.a_e_m2
        if a_e is None:
            if record.aperture_method == "phys" and record.a_phys_m2 is not None:
                eta = record.eta_ap if record.eta_ap is not None else DEFAULT_APERTURE_EFFICIENCY
                a_e = eta * record.a_phys_m2
            elif record.aperture_method == "gain" and record.gain_dbi is not None:
                a_e = aperture_from_gain(10.0 ** (record.gain_dbi / 10.0), record.f0_hz)
            else:
                raise DomainError("no aperture value available")
        if a_e <= 0.0:
            raise DomainError(f"derived aperture must be > 0 m^2, got {a_e:g}")

        t_rx = record.t_rx_k
        if t_rx is None and record.t_rx_method == "NF" and record.nf_db is not None:
            t_rx = trx_from_noise_figure(record.nf_db)

        t_sys = record.t_sys_k
        if t_sys is None:
            if record.t_sys_method == "NEDT":
                if record.nedt_k is None or record.tau_s is None:
                    raise DomainError("NEDT rule needs nedt_k and tau_s")
                t_sys = tsys_from_nedt(record.nedt_k, record.bandwidth_hz, record.tau_s)
            else:
                if record.t_a_k is None or t_rx is None:
                    raise DomainError("cannot form T_sys = T_A + T_Rx: missing term")
                t_sys = record.t_a_k + t_rx
        if t_sys <= 0.0:
            raise DomainError(f"derived system temperature must be > 0 K, got {t_sys:g}")

        e_free = nef_from_aperture(t_sys, a_e, record.rho2, eta_0)
    except DomainError as exc:
        raise DomainError(f"{record.instrument}: {exc}") from exc

    return replace(
        record,
        a_e_m2=a_e,
        t_rx_k=t_rx,
        t_sys_k=t_sys,
        e_free_vm_sqrthz=e_free,
    )


def derive_records(
    records: Iterable[InstrumentRecord],
    eta_0: float | None = None,
) -> tuple[tuple[InstrumentRecord, ...], tuple[Diagnostic, ...]]:
    """Derive every record, collecting failures as diagnostics."""
    derived: list[InstrumentRecord] = []
    diagnostics: list[Diagnostic] = []
    for index, record in enumerate(records, start=1):
        try:
            derived.append(derive_record(record, eta_0))
        except DomainError as exc:
            diagnostics.append(Diagnostic(index, record.instrument, str(exc)))
    return tuple(derived), tuple(diagnostics)


def consistency_diagnostics(
    records: Iterable[InstrumentRecord],
    rel_tol: float = 0.10,
) -> tuple[Diagnostic, ...]:
    """Compare recomputed field values against source-quoted ones.

    The recomputation from each row's own (T_sys, A_e, rho^2) is the oracle;
    rows whose quoted value deviates by more than ``rel_tol`` relative are
    reported as dataset diagnostics.  These mark internal inconsistencies of
    the source table, not pipeline failures, and must stay visible.
    """
    diagnostics: list[Diagnostic] = []
    for index, record in enumerate(records, start=1):
        if record.e_free_reported is None or record.e_free_vm_sqrthz is None:
            continue
        reported = record.e_free_reported
        computed = record.e_free_vm_sqrthz
        relative = abs(computed - reported) / reported
        if relative > rel_tol:
            diagnostics.append(Diagnostic(
                index,
                record.instrument,
                f"quoted field {reported:.3g} V/m/sqrt(Hz) deviates from the value "
                f"recomputed from (T_sys, A_e, rho^2) = {computed:.3g} by "
                f"{relative * 100:.1f}% (> {rel_tol * 100:.0f}%)",
            ))
    return tuple(diagnostics)


def synthesize_ranges(
    records: Sequence[InstrumentRecord],
    category: str,
    sig_figs: int | None = 2,
    eta_0: float | None = None,
) -> CategoryRange:
    """Synthesize the parameter range of one category.

    Takes per-parameter extrema over the category's records, expands the
    temperature, aperture and bandwidth bounds by 0.8x/1.2x (frequency keeps
    its nominal extrema), recomputes the field bounds from the perturbed
    temperature/aperture bounds, and rounds everything except frequency to
    ``sig_figs`` significant digits (half-up).  Pass ``sig_figs=None`` to
    skip rounding.
    """
    members = [r for r in records if r.category == category]
    if not members:
        raise DomainError(f"no records in category {category!r}")
    not_derived = [r.instrument for r in members if not r.is_derived]
    if not_derived:
        raise DomainError(
            f"records not fully derived in category {category!r}: "
            + ", ".join(not_derived)
        )
    rho2_values = {r.rho2 for r in members}
    if len(rho2_values) > 1:
        offenders = ", ".join(f"{r.instrument} (rho2={r.rho2:g})" for r in members)
        raise DomainError(f"mixed rho2 within category {category!r}: {offenders}")
    rho2 = members[0].rho2

    t_min = min(r.t_sys_k for r in members) * LOWER_MARGIN
    t_max = max(r.t_sys_k for r in members) * UPPER_MARGIN
    a_min = min(r.a_e_m2 for r in members) * LOWER_MARGIN
    a_max = max(r.a_e_m2 for r in members) * UPPER_MARGIN
    bw_min = min(r.bandwidth_hz for r in members) * LOWER_MARGIN
    bw_max = max(r.bandwidth_hz for r in members) * UPPER_MARGIN
    e_min = nef_from_aperture(t_min, a_max, rho2, eta_0)
    e_max = nef_from_aperture(t_max, a_min, rho2, eta_0)

    if sig_figs is not None:
        t_min, t_max = round_to_sig_figs(t_min, sig_figs), round_to_sig_figs(t_max, sig_figs)
        a_min, a_max = round_to_sig_figs(a_min, sig_figs), round_to_sig_figs(a_max, sig_figs)
        bw_min, bw_max = round_to_sig_figs(bw_min, sig_figs), round_to_sig_figs(bw_max, sig_figs)
        e_min, e_max = round_to_sig_figs(e_min, sig_figs), round_to_sig_figs(e_max, sig_figs)

    return CategoryRange(
        category=category,
        f0_min_hz=min(r.f0_hz for r in members),
        f0_max_hz=max(r.f0_hz for r in members),
        a_e_min_m2=a_min,
        a_e_max_m2=a_max,
        t_sys_min_k=t_min,
        t_sys_max_k=t_max,
        bandwidth_min_hz=bw_min,
        bandwidth_max_hz=bw_max,
        e_free_min=e_min,
        e_free_max=e_max,
        members=len(members),
    )


def synthesize_all(
    records: Sequence[InstrumentRecord],
    sig_figs: int | None = 2,
    eta_0: float | None = None,
) -> tuple[CategoryRange, ...]:
    """Synthesize every category, in first-appearance order."""
    seen: list[str] = []
    for record in records:
        if record.category not in seen:
            seen.append(record.category)
    return tuple(
        synthesize_ranges(records, category, sig_figs, eta_0) for category in seen
    )


def emit_plot_data(
    ranges: Sequence[CategoryRange],
    markers: Sequence[tuple[str, float, float]] = (),
    include_converter_marker: bool = True,
    converter_bandwidth_hz: float = CONVERTER_MARKER_BANDWIDTH_HZ,
    converter_nef: float = CONVERTER_MARKER_NEF,
    thermal_reference_field: float | None = None,
) -> dict:
    """Build the bandwidth/field plot-data document.

    One rectangle per category (bandwidth span by field span, corner values
    passed through bit-exactly), plus named point markers.  The converter
    marker is included by default at its quoted sensitivity with a
    caller-supplied bandwidth coordinate.  The 290 K free-space thermal
    reference line has no closed form here and is therefore a configurable
    constant: supply ``thermal_reference_field`` to include it.
    """
    rectangles = [
        {
            "category": r.category,
            "bw_min": r.bandwidth_min_hz,
            "bw_max": r.bandwidth_max_hz,
            "e_min": r.e_free_min,
            "e_max": r.e_free_max,
        }
        for r in ranges
    ]
    marker_rows = [
        {"name": name, "bandwidth": bandwidth_hz, "e_field": e_field}
        for name, bandwidth_hz, e_field in markers
    ]
    if include_converter_marker:
        if converter_bandwidth_hz <= 0.0 or converter_nef <= 0.0:
            raise DomainError("converter marker coordinates must be > 0")
        marker_rows.append({
            "name": CONVERTER_MARKER_NAME,
            "bandwidth": converter_bandwidth_hz,
            "e_field": converter_nef,
        })
    document = {"rectangles": rectangles, "markers": marker_rows}
    if thermal_reference_field is not None:
        if thermal_reference_field <= 0.0:
            raise DomainError("thermal reference field must be > 0")
        document["reference_lines"] = [
            {"name": "thermal-290K", "e_field": thermal_reference_field}
        ]
    return document


def bundled_dataset_path():
    """Path-like handle to the dataset CSV shipped with the package."""
    return resources.files("rfsense").joinpath("data/instruments.csv")


def load_bundled_dataset() -> ParseResult:
    """Parse the bundled instrument dataset."""
    return parse_instruments(bundled_dataset_path().read_text(encoding="utf-8"))
