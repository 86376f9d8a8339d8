"""Exception hierarchy.

``DomainError`` subclasses signal a violated precondition on otherwise
well-formed inputs; ``FormatError`` signals unparseable text.
"""


class OTFSMError(Exception):
    pass


class DomainError(OTFSMError):
    pass


class FormatError(OTFSMError):
    pass


class AlphabetMismatchError(DomainError):
    pass


class DegreeError(DomainError):
    pass


class UnknownSymbolError(DomainError):
    pass


class RejectError(DomainError):
    """The machine does not accept the given input."""


class PositiveMarkError(DomainError):
    pass


class EmptySurfaceError(DomainError):
    """The surface transducer has no path from the initial to the final state."""


class TruncationError(DomainError):
    """Enumeration hit the length bound, so the candidate set is not finite-certified."""


class MalformedMachineError(DomainError):
    pass
