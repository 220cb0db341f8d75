"""Exception hierarchy shared by every module of the package."""


class PureDeriveError(Exception):
    """Base class for all errors raised by purederive."""


class ShapeMismatch(PureDeriveError, ValueError):
    pass


class RingMismatch(PureDeriveError, ValueError):
    pass


class IllFormedMap(PureDeriveError, ValueError):
    """A generator matrix does not carry relations into relations."""


class NotExact(PureDeriveError, ValueError):
    pass


class InvalidComplex(PureDeriveError, ValueError):
    def __init__(self, degree, reason):
        super().__init__(f"invalid complex at degree {degree}: {reason}")
        self.degree = degree
        self.reason = reason


class PrereqPurityFails(PureDeriveError):
    def __init__(self, degree):
        super().__init__(f"complex is not pure exact at degree {degree}")
        self.degree = degree


class PrereqFails(PureDeriveError):
    def __init__(self, condition):
        super().__init__(f"precondition failed: {condition}")
        self.condition = condition


class UnsupportedInjectiveBase(PureDeriveError):
    """Pure injective envelopes are only available for finite modules."""


class NotPureQuasiIso(PureDeriveError):
    pass


class LiftSearchFailed(PureDeriveError):
    """Raised when a lifting system that must be solvable has no solution."""


class InconsistentCriteria(PureDeriveError):
    """Independent evaluations of equivalent criteria disagree."""


class ParseError(PureDeriveError, ValueError):
    def __init__(self, message, line=None, column=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
        self.line = line
        self.column = column
        self.field = field


class ValidationError(PureDeriveError, ValueError):
    def __init__(self, name, reason):
        super().__init__(f"{name}: {reason}")
        self.name = name
        self.reason = reason


class UnsupportedOperation(PureDeriveError):
    pass


class UnknownCommand(PureDeriveError):
    pass
