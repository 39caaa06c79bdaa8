"""Exception types shared across the toolkit."""


class AdianKitError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(AdianKitError):
    """A document (JSON file, word text, certificate) does not match its schema."""


class BuildError(AdianKitError):
    """A diagram constructor rejected its inputs (label mismatch, mirror pair,
    non-boundary attachment, ...)."""


class PreconditionError(AdianKitError):
    """An operation was called outside its stated preconditions."""


class EmptyBoundaryError(AdianKitError):
    """The diagram consists of a single vertex; its boundary word is empty and
    denotes no semigroup element."""
