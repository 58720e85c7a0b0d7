"""Exception types shared across the package."""


class LevyKernelError(Exception):
    """Base class for all numerical-evaluation errors raised here."""


class PoleHit(LevyKernelError):
    """Gamma function requested at (or within tolerance of) a pole."""


class StripViolation(LevyKernelError):
    """Contour abscissa or Mellin argument outside its strip of validity."""


class NoDecay(LevyKernelError):
    """Integrand fails the sampled decay check along the contour."""


class NonConvergent(LevyKernelError):
    """Successive refinements did not reach the requested tolerance."""


class OrderExceeded(LevyKernelError):
    """A derivative order beyond what the symbol provides was requested."""


class ParityError(LevyKernelError):
    """Leading-term formula requested in the wrong parity regime of beta."""


class DomainError(LevyKernelError):
    """Operation called outside its mathematical domain of validity."""
