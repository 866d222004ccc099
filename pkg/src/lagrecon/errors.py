"""Exception types shared across the package."""


class PoleError(ZeroDivisionError):
    """A weight-function denominator vanishes at the requested point."""


class SingularSystemError(ArithmeticError):
    """The fixed-point linear system used as an oracle has no unique solution."""


class CertificationError(RuntimeError):
    """An exact certificate could not be produced.

    For the root and convexity certificates this indicates a bug rather than
    a legitimate outcome, so callers should let it propagate.
    """


class NotPositiveError(ValueError):
    """A subdivision fails the positive-subdivision precondition."""
