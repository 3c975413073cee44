"""Exceptions shared across the package."""


class RamifiedPrimeError(ValueError):
    """A computation was requested at a prime in the ramified set."""


class UnsupportedRequestError(ValueError):
    """The request is well-formed but outside what this tool computes."""


class EnumerationBoundError(ValueError):
    """A brute-force enumeration would exceed its safety bound."""


class PoleError(ValueError):
    """An L-value was requested at a pole."""


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
