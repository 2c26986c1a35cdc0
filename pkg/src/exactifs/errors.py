"""Exception hierarchy shared by all modules."""


class ExactIFSError(Exception):
    """Base class for errors raised by this package."""


class InvalidInput(ExactIFSError, ValueError):
    """Malformed literal, config or argument."""


class BudgetExceeded(ExactIFSError):
    """An exponential enumeration would exceed the configured word budget."""

    def __init__(self, needed, budget, what="words"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what} required: {needed} > budget {budget}")


class PreconditionError(ExactIFSError):
    """An operation was called outside its documented domain."""


class CertificateError(ExactIFSError):
    """A certificate or combination record failed exact verification."""
