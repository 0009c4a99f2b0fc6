"""Exception hierarchy shared by all modules."""


class CylGaborError(Exception):
    """Base class for library errors."""


class DomainError(CylGaborError, ValueError):
    """Argument outside the supported domain."""


class ConvergenceError(CylGaborError, RuntimeError):
    """A truncated series could not certify the requested tolerance.

    Attributes
    ----------
    tail : float or None
        Tail estimate attained before giving up.
    """

    def __init__(self, msg, tail=None):
        super().__init__(msg)
        self.tail = tail


class UnsupportedOrderError(DomainError):
    """Polynomial or derivative order above the supported ceiling."""


class RequiresDecayError(CylGaborError, ValueError):
    """A window or function lacks the decay declaration needed for truncation."""


class ConstructionError(CylGaborError, ValueError):
    """Invalid object construction (duplicate indices, non-unit window, ...)."""


class NotAFrameError(CylGaborError, RuntimeError):
    """The Zak-domain frame operator is singular to working precision.

    Attributes
    ----------
    sigma_min : float
        Smallest Zak-domain singular value found.
    """

    def __init__(self, msg, sigma_min):
        super().__init__(msg)
        self.sigma_min = sigma_min


class InvalidTranslationError(DomainError):
    """Weyl translation incompatible with the declared quasi-periodicity."""


class DensityPreconditionError(DomainError):
    """Node set too dense for the requested interpolation order.

    Attributes
    ----------
    density : float
        Measured upper density.
    """

    def __init__(self, msg, density):
        super().__init__(msg)
        self.density = density


class UndefinedSeparationError(DomainError):
    """Separation requested for fewer than two points."""
