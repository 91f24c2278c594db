"""Exception hierarchy.

Errors split three ways so the CLI can map them onto exit codes:
``ParseError`` (bad input text), ``PreconditionError`` (well-formed input the
theory does not apply to) and ``TheoremViolation`` (an internal inconsistency,
i.e. a bug).
"""


class EvkError(Exception):
    """Base class for all package errors."""


class ParseError(EvkError):
    pass


class PreconditionError(EvkError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class OrderMismatch(PreconditionError):
    pass


class ConflictingDuplicate(PreconditionError):
    pass


class SupportNotSymmetric(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class NotWeaklyIrreducible(PreconditionError):
    pass


class NotCombinatoriallySymmetric(PreconditionError):
    pass


class NotThreeUniform(PreconditionError):
    pass


class NotSubpattern(PreconditionError):
    pass


class NotConnected(PreconditionError):
    pass


class BadParameters(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    """Raised when an exhaustive enumeration would exceed its size cap."""


class BudgetExceeded(PreconditionError):
    """Raised when a combinatorial search exhausts its node budget."""


class NoConvergence(EvkError):
    pass


class TheoremViolation(EvkError):
    """A proven inequality or identity failed; indicates a bug."""


class BoundViolated(TheoremViolation):
    pass
