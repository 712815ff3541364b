"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes, so new error conditions
should subclass one of the three categories rather than raising bare
exceptions.
"""


class ZentailError(Exception):
    """Base class for all package errors."""


class ConfigError(ZentailError):
    """Invalid configuration: bad run config, scheme, aspect, or flag values."""


class DataError(ZentailError):
    """Invalid or inconsistent data: malformed files, quota shortfalls,
    unknown labels, missing scores."""


class TransportError(ZentailError):
    """External scoring service unreachable or misbehaving at the HTTP level."""


class ProtocolError(TransportError):
    """External scoring service reachable but its response violates the
    wire protocol (wrong ids, lengths, or out-of-range probabilities)."""
