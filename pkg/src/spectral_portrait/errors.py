"""Exception hierarchy shared across the package."""


class SpectralPortraitError(Exception):
    """Base class for all package errors."""


class NoRootInDomain(SpectralPortraitError):
    """Turning-point continuation left the analyzed domain or failed to converge."""


class BranchJump(SpectralPortraitError):
    """Branch continuation of the phase integrand lost track of the sheet."""


class Overflow(SpectralPortraitError):
    """Unscaled evaluation would exceed the floating-point exponent range."""


class ConvergenceFailure(SpectralPortraitError):
    """Newton or bisection refinement did not converge."""


class StallError(SpectralPortraitError):
    """Stokes-line tracing step size collapsed."""


class BisectionBracketFailure(SpectralPortraitError):
    """The defining function of a curve does not change sign on the search interval."""


class MultipleIntersections(SpectralPortraitError):
    """More than one knot candidate found where uniqueness is guaranteed."""


class NoIntersection(SpectralPortraitError):
    """Curves expected to intersect do not, on the traced range."""


class DomainError(SpectralPortraitError):
    """Parameters outside the range the asymptotic formulas support."""


class EmptyWindow(SpectralPortraitError):
    """No quantization index yields a root on the retained arc."""


class SingularB(SpectralPortraitError):
    """Right-hand matrix of a generalized pencil is numerically singular."""


class SingularPencil(SpectralPortraitError):
    """Both solution paths for the generalized eigenproblem failed."""


class NoConvergence(SpectralPortraitError):
    """Eigenvalue iteration failed to converge."""


class ConfigError(SpectralPortraitError):
    """Invalid run configuration."""
