"""Exception types shared across the workbench."""


class NotDivisible(ArithmeticError):
    """Exact division failed: the dividend is not a multiple of the divisor."""


class ZeroPolynomial(ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class NegativePowerAtZero(ValueError):
    """Substituting 0 into a variable that occurs with a negative exponent."""


class DirectionNotExchangeable(ValueError):
    """A mutation or exchange was requested in a frozen direction."""


class LaurentViolation(RuntimeError):
    """An exchange step produced a non-Laurent quotient.

    This cannot happen for a genuine seed; it fires only when a seed has
    been corrupted, so it is kept as an internal tripwire.
    """


class FreezeAll(ValueError):
    """Freezing every exchangeable direction would leave an empty cluster."""


class InvalidIndex(ValueError):
    """A variable index is outside the seed's valid range."""


class NotNormalized(ValueError):
    """The requested pivot cannot start a normalized acyclic order."""


class NotLaurentInCluster(ValueError):
    """An element admits no Laurent expression in the requested cluster."""


class RankNotTwo(ValueError):
    """Alternating-period detection only applies to rank-2 seeds."""


class NotASource(ValueError):
    """The chosen direction is not a source of the exchange digraph."""


class NoNegativeEntry(ValueError):
    """No column entry below the source is negative; no certificate needed."""


class NotIsolated(ValueError):
    """The principal part of the exchange matrix is not zero."""


class ParseError(ValueError):
    """A seed file or polynomial expression failed to parse."""


class ValidationError(ValueError):
    """A parsed seed violates the seed invariants."""
