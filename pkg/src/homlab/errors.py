"""Exception hierarchy shared by all homlab modules."""


class HomLabError(Exception):
    """Base class for all homlab errors."""


class FormatError(HomLabError):
    """Malformed input data: bad graph/group text, out-of-range indices."""


class GroupAxiomError(FormatError):
    """A Cayley table violates a group axiom.

    Carries the name of the failed axiom and a witness tuple of element
    indices demonstrating the failure.
    """

    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        detail = f" at witness {witness}" if witness is not None else ""
        super().__init__(f"group axiom violated: {axiom}{detail}")


class CapabilityError(HomLabError):
    """The requested computation exceeds a documented size bound."""


class VerificationError(HomLabError):
    """An identity or invariant that must hold failed to hold.

    This signals a defect in the engine (or a falsified theorem), never
    a bad input.  Carries the offending report when available.
    """

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
