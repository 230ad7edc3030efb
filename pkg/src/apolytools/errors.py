"""Exception hierarchy shared by every module."""


class ApolyError(Exception):
    """Base class for all library errors."""


class RingMismatchError(ApolyError, ValueError):
    pass


class DomainError(ApolyError, ValueError):
    """Operation not supported over the given coefficient domain."""


class BadPrimeError(ApolyError, ValueError):
    """The prime divides a denominator or content and cannot be used."""

    def __init__(self, p, reason):
        super().__init__(f"bad prime {p}: {reason}")
        self.p = p
        self.reason = reason


class BudgetExceeded(ApolyError):
    """A computation hit its configured resource cap.

    Never raised for a silently truncated result: the partial state is
    discarded and ``stats`` records how far it got.
    """

    def __init__(self, what, stats=None):
        super().__init__(what)
        self.stats = dict(stats or {})


class PresentationError(ApolyError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class PolynomialSyntaxError(ApolyError, ValueError):
    pass
