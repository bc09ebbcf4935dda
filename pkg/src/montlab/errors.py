"""Exception types raised across the package."""


class MontlabError(Exception):
    pass


class DomainError(MontlabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedDimensionError(MontlabError, ValueError):
    pass


class WrongSpaceError(MontlabError, TypeError):
    """A sphere point set was passed where a torus set is required, or vice versa."""


class EvaluationError(MontlabError, ArithmeticError):
    pass


class RegimeError(MontlabError, ValueError):
    """Asymptotic bound requested outside the regime where it is valid."""


class CalibrationError(MontlabError, RuntimeError):
    pass


class StateError(MontlabError, RuntimeError):
    pass


class NotPositiveDefiniteError(MontlabError, ValueError):
    pass


class SpecError(MontlabError, ValueError):
    """Unsupported generator kind / dimension combination."""


class PointSetParseError(MontlabError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
