"""Exception hierarchy shared by every module."""


class PolyknotError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(PolyknotError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if position is not None:
            detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class NoConvergence(PolyknotError):
    pass


class IndexOutOfRange(PolyknotError):
    pass


class NotQuasitoric(PolyknotError):
    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message)


class NotCoprime(PolyknotError):
    pass


class OutOfFamily(PolyknotError):
    pass


class NotAKnot(PolyknotError):
    pass


class DegenerateIntersection(PolyknotError):
    pass


class TemplateSearchFailed(PolyknotError):
    pass


class HeightSeparationFailure(PolyknotError):
    pass


class InconsistentRoles(PolyknotError):
    pass


class GaussMismatch(PolyknotError):
    pass


class TooManyCrossings(PolyknotError):
    pass


class InconsistentPD(PolyknotError):
    pass


class NonIntegerExponents(PolyknotError):
    pass


class SingularLabeling(PolyknotError):
    pass


class NoMatch(PolyknotError):
    pass
