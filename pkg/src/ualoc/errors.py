"""Exception hierarchy shared by every ualoc module."""


class UalocError(Exception):
    """Base class for library errors."""


class AlgebraError(UalocError, ValueError):
    """An algebra, term or relation violates a structural invariant."""


class SignatureError(AlgebraError):
    """Two algebras (or a term and an algebra) do not share a signature."""


class ParseError(AlgebraError):
    """Malformed algebra file. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(UalocError):
    """An operation was called outside the hypotheses it relies on."""


class ResourceBoundError(UalocError):
    """A configured search or size bound was exceeded.

    Callers that report tri-state verdicts turn this into ``unknown``;
    it is never folded into a negative answer.
    """

    def __init__(self, what: str, bound: int, needed: int | None = None):
        self.what = what
        self.bound = bound
        self.needed = needed
        msg = f"{what}: bound {bound} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)
