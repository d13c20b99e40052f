"""Exception hierarchy shared by every layer of the library."""


class ComodError(Exception):
    """Base class for library errors."""


class ResourceLimitError(ComodError):
    """A Groebner computation exceeded its reduction budget."""


class CapabilityError(ComodError):
    """The operation is not supported for this algebroid or input."""


class IntegrityError(ComodError):
    """A computation produced data contradicting a declared property."""


class ParseError(ComodError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class ValidationError(ComodError):
    """Input data violates a structural axiom; ``report`` holds the details."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
