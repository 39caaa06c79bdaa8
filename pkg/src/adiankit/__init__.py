"""adiankit: Adian presentations, van Kampen diagrams, and machine-checkable
idempotency certificates for positively presented inverse semigroups."""

from . import diagram, munn, presentation, witness
from .errors import (
    AdianKitError,
    BuildError,
    EmptyBoundaryError,
    PreconditionError,
    SchemaError,
)

__all__ = [
    "diagram",
    "munn",
    "presentation",
    "witness",
    "AdianKitError",
    "BuildError",
    "EmptyBoundaryError",
    "PreconditionError",
    "SchemaError",
]

__version__ = "0.1.0"
