"""Exception hierarchy shared by all modules, with CLI exit codes.

Exit-code contract: 0 ok, 1 config, 2 spectral-gap ambiguity,
3 conditioning, 4 time-window, 5 quadrature.
"""

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_GAP = 2
EXIT_CONDITIONING = 3
EXIT_WINDOW = 4
EXIT_QUADRATURE = 5


class ThresholdLabError(Exception):
    """Base class for all package-specific failures."""

    exit_code = EXIT_CONFIG


class ConfigError(ThresholdLabError):
    """Malformed or inconsistent run configuration."""

    exit_code = EXIT_CONFIG


class GapAmbiguity(ThresholdLabError):
    """Kernel detection failed: eigenvalues fall inside the guard band.

    Signals that the rank threshold must be recalibrated or the grid
    refined before a kernel dimension can be trusted.
    """

    exit_code = EXIT_GAP

    def __init__(self, message, offending=(), eps_rank=None, gap_factor=None):
        super().__init__(message)
        self.offending = tuple(offending)
        self.eps_rank = eps_rank
        self.gap_factor = gap_factor


class NearSingular(ThresholdLabError):
    """A shifted operator A(z)+S is too ill-conditioned to invert."""

    exit_code = EXIT_CONDITIONING

    def __init__(self, message, cond_estimate=None):
        super().__init__(message)
        self.cond_estimate = cond_estimate


class BNotInvertible(ThresholdLabError):
    """The reduced operator on the projected subspace is singular.

    At the first level this means the next stage of the inversion
    hierarchy is required (a nontrivial second kernel).
    """

    exit_code = EXIT_CONDITIONING


class ConditioningFailure(ThresholdLabError):
    """No admissible spectral-band radius passed the conditioning sweep."""

    exit_code = EXIT_CONDITIONING


class EmptyEigenspace(ThresholdLabError):
    """An eigenprojection was requested but the detected eigenspace is empty."""

    exit_code = EXIT_CONFIG


class WindowTooShort(ThresholdLabError):
    """The usable time window collapsed below one decade.

    Usually means the simulation box is too small: the revival time is
    reached before a decade of decay can be observed. Enlarge L.
    """

    exit_code = EXIT_WINDOW


class QuadratureError(ThresholdLabError):
    """Oscillatory quadrature exceeded its budget or failed to converge."""

    exit_code = EXIT_QUADRATURE


class InstabilityError(ThresholdLabError):
    """A propagator lost unitarity beyond tolerance."""

    exit_code = EXIT_QUADRATURE
