"""Exception hierarchy shared by every evaluator.

Errors split into two families so the CLI can map them onto exit codes:
numerical non-convergence (:class:`NotConverged`) versus everything that is a
problem with the inputs (:class:`QZetaInputError` and subclasses).
"""


class QZetaError(Exception):
    """Base class for all library errors."""


class QZetaInputError(QZetaError, ValueError):
    """Inputs outside the domain of an operation."""


class NotConverged(QZetaError, ArithmeticError):
    """A truncated series exhausted its term budget before meeting tolerance."""

    def __init__(self, message, terms_used=None, tail_bound=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.tail_bound = tail_bound


class BranchCut(QZetaInputError):
    pass


class CountTooLarge(QZetaInputError):
    pass


class InvalidRegion(QZetaInputError):
    pass


class RegionViolation(InvalidRegion):
    """A verification was requested outside the hypotheses of its identity."""

    def __init__(self, condition):
        super().__init__(condition)
        self.condition = condition


class ZeroZ(InvalidRegion):
    pass


class PoleAtOne(QZetaInputError):
    pass


class UnsupportedDomain(QZetaInputError):
    pass


class Divergent(QZetaInputError):
    pass


class QPole(QZetaInputError):
    pass


class ZetaPoleInSeries(QZetaInputError):
    pass


class IntegrandFailure(QZetaError):
    """The integrand raised at a Jackson node; carries the node index and point."""

    def __init__(self, n, point, cause):
        super().__init__(f"integrand failed at n={n}, a={point!r}: {cause}")
        self.n = n
        self.point = point
        self.cause = cause
