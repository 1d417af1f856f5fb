"""Exception hierarchy.

``InputError`` subclasses signal bad arguments or domain violations and are
also ``ValueError``s, so generic callers can catch either.  ``InternalError``
subclasses indicate a bug in this package (a solver that should always
converge failed, an invariant broke) and are ``RuntimeError``s.
"""


class CpammError(Exception):
    """Base class for every error raised by this package."""


class InputError(CpammError, ValueError):
    """Invalid argument or domain violation."""


class InternalError(CpammError, RuntimeError):
    """Invariant violation inside the package; indicates a bug."""


# -- pool engine ---------------------------------------------------------

class NonPositiveReserve(InputError):
    """Pool reserves must be strictly positive."""


class InactivePool(InputError):
    """Operation requires an active (non-empty) pool."""


class InvalidFee(InputError):
    """Fee rate must lie in [0, 1)."""


class InvalidRate(InputError):
    """Exchange rate must be strictly positive."""


class NonPositiveInput(InputError):
    """Argument must be strictly positive."""


class NonPositiveAmount(InputError):
    """Trade or share amount must be strictly positive."""


class SpreadOutOfRange(InputError):
    """Spread cap outside the valid domain for the trade direction."""


class RateMismatch(InputError):
    """Deposit ratio or pool rate deviates from the required value."""


class InsufficientShares(InputError):
    """Provider does not own enough shares."""


class NonPositivePrice(InputError):
    """Market price must be strictly positive."""


# -- analytics and simulation --------------------------------------------

class NonPositiveDelta(InputError):
    """Relative price change must be strictly positive."""


class InvalidStep(InputError):
    """Integration step must be strictly positive."""


class EmptyWindow(InputError):
    """Measurement window must have positive length."""


class NoConvergence(InternalError):
    """Root finder hit its iteration cap; the equation is monotone, so this
    signals a solver bug rather than a hard instance."""


# -- scenario scripts and reporting --------------------------------------

class ScriptError(InputError):
    """Malformed scenario script or script-level invariant violation."""


class DomainError(InputError):
    """Figure grid leaves the mathematical domain of its curves."""
