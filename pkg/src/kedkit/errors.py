"""Errors shared by the exhaustive oracles."""

MAX_SUBSETS = 10**8


class OracleGuardError(RuntimeError):
    """Instance too large for an exhaustive oracle."""
