"""Exception types shared by the package."""


class ValidationError(ValueError):
    """Bad user input: an inadmissible class, a malformed matrix file, etc."""


class InvariantError(RuntimeError):
    """An internal certificate failed.

    Raised when a constructed object does not satisfy the invariants that
    the construction guarantees.  Carries a ``details`` dict so callers
    (the CLI in particular) can dump a diagnostic bundle.
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details
