"""Exception hierarchy shared by the library and the CLI."""


class JtpError(Exception):
    """Base class for every error raised by jtphom."""


class PreconditionError(JtpError, ValueError):
    """An input violates a documented precondition (CLI exit code 3)."""


class SingularInput(PreconditionError):
    pass


class ParamOutOfRange(PreconditionError):
    pass


class NotAnInvolution(PreconditionError):
    pass


class DomainError(PreconditionError):
    pass


class NonPositiveValue(PreconditionError):
    pass


class NonUnitalBeta(PreconditionError):
    pass


class NotUnitary(PreconditionError):
    pass


class ClassificationError(JtpError):
    """The classifier could not produce a canonical form (CLI exit code 4)."""


class NotAHomomorphism(ClassificationError):
    pass


class UnrecognizedMultiplicative(ClassificationError):
    pass


class InconsistentProbes(ClassificationError):
    pass


class MissingProbe(InconsistentProbes):
    """A transcript-backed map was asked for an input it does not contain."""


class FormatError(JtpError, ValueError):
    """A document does not match its schema (CLI exit code 2)."""
