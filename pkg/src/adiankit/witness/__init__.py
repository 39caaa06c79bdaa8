"""Certificates that diagram boundary words are idempotents: generation,
independent verification, and the JSON certificate format."""

from .certificate import (
    Certificate,
    DropFactor,
    DropIdempotents,
    DyckBase,
    ProductFactor,
    ProductOfIdempotents,
    RelationSubst,
    Step,
    WitnessReport,
    WitnessStatistics,
    certificate_from_json,
    certificate_to_json,
    compute_statistics,
)
from .generate import witness_idempotent, witness_simple_component
from .verify import verify, verify_with_trace

__all__ = [
    "Certificate",
    "DropFactor",
    "DropIdempotents",
    "DyckBase",
    "ProductFactor",
    "ProductOfIdempotents",
    "RelationSubst",
    "Step",
    "WitnessReport",
    "WitnessStatistics",
    "certificate_from_json",
    "certificate_to_json",
    "compute_statistics",
    "witness_idempotent",
    "witness_simple_component",
    "verify",
    "verify_with_trace",
]
