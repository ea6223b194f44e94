"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Invalid input: bad (m, n), mismatched field contexts, and the like."""


class GeometryError(DomainError):
    """Input does not define the requested geometric object."""


class VerificationError(RuntimeError):
    """An internal cross-check (exact vs numeric) failed; never swallowed."""
