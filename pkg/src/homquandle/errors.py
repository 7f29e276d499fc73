"""Exception types raised across the package.

Every error derives from :class:`HomQuandleError`, itself a ``ValueError``,
so callers that only care about "bad input" can catch one thing.
"""

from __future__ import annotations


class HomQuandleError(ValueError):
    pass


# group construction

class NotAssociative(HomQuandleError):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) at a={a}, b={b}, c={c}")


class NoIdentity(HomQuandleError):
    pass


class NoInverse(HomQuandleError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotABijection(HomQuandleError):
    pass


class ClosureTooLarge(HomQuandleError):
    pass


class BadModulus(HomQuandleError):
    pass


class NotASubgroup(HomQuandleError):
    pass


class NotAnAutomorphism(HomQuandleError):
    pass


# quandles

class NotAQuandle(HomQuandleError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"quandle axioms violated: {report.summary()}")


class TripletInvalid(HomQuandleError):
    pass


class TooLarge(HomQuandleError):
    pass


class NotHomogeneous(HomQuandleError):
    pass


class StabilizerNotFixed(HomQuandleError):
    pass


# embeddings

class NotInner(HomQuandleError):
    pass


class WitnessMismatch(HomQuandleError):
    pass


class InvariantBreach(RuntimeError):
    """An exhaustive re-check contradicted a proven identity (internal fault)."""


# clifford / geometry

class DimensionMismatch(HomQuandleError):
    pass


class NotUnit(HomQuandleError):
    pass


class NotGrade1(HomQuandleError):
    pass


class NotOrthogonal(HomQuandleError):
    pass


class OddElement(HomQuandleError):
    pass


class ThetaPi(HomQuandleError):
    def __init__(self, theta):
        self.theta = theta
        super().__init__(
            f"theta={theta!r} is pi: Fix(sigma) is larger than SO(2) there, so the "
            "SO(3) map is not injective; use the Spin(3) route (spherical_embed with n=2, "
            "or `geom sphere --n 2`)"
        )


class CapExceeded(HomQuandleError):
    pass
