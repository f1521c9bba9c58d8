"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command-line
front end never needs a translation table.
"""


class PolystackError(Exception):
    exit_code = 5


class ParseError(PolystackError):
    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(PolystackError):
    """A polytope or lattice fails one of its structural invariants."""

    exit_code = 3


class UnsupportedInput(PolystackError):
    exit_code = 4


class UnsupportedVertexCount(UnsupportedInput):
    pass


class UnsupportedSpec(UnsupportedInput):
    pass


class SizeLimitExceeded(UnsupportedInput):
    pass


class InputIsSimplex(UnsupportedInput):
    pass


class SelectorError(UnsupportedInput):
    """A facet selector does not resolve to exactly one facet."""


class RegionEmptyOrUnsupported(UnsupportedInput):
    """No admissible point could be produced for a pseudo-stacking step."""


class VerificationFailure(PolystackError):
    exit_code = 5


class NormalizationFailed(VerificationFailure):
    pass


class ConstructionError(PolystackError):
    """A pipeline step failed; ``step`` is the 1-based step index."""

    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 5)
        super().__init__(f"step {step}: {cause}")
