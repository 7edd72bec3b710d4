"""Sensitivity figures of merit for spaceborne RF/microwave receivers and
atomic field sensors: radiometry, radar, link budgets, noise-equivalent
field conversions, cavity field enhancement, and the instrument-range
dataset pipeline."""

from . import (
    cli,
    dataset,
    fieldmetrics,
    linkbudget,
    quantities,
    radar,
    radiometry,
    rydberg,
)
from .errors import DomainError, SchemaError, SingularFitError, UnitMismatchError

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "SchemaError",
    "SingularFitError",
    "UnitMismatchError",
    "cli",
    "dataset",
    "fieldmetrics",
    "linkbudget",
    "quantities",
    "radar",
    "radiometry",
    "rydberg",
]
