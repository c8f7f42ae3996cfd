"""Exception types shared across the package."""


class FracLabError(Exception):
    """Base class for all package errors."""


class NonFiniteInputError(FracLabError, ValueError):
    """Input array contains NaN or infinity."""


class LengthMismatchError(FracLabError, ValueError):
    """Paired sequences have incompatible lengths."""


class GammaPoleError(FracLabError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class PowerFitError(FracLabError, ValueError):
    """Power-law fit rejected (too few points, sign changes, zeros)."""


class EdgeDecayError(FracLabError, ValueError):
    """Function does not decay sufficiently at the box edge for a spectral op.

    Carries the measured relative edge magnitude in ``edge_magnitude``.
    """

    def __init__(self, msg, edge_magnitude):
        super().__init__(msg)
        self.edge_magnitude = edge_magnitude


class QuadratureConvergenceError(FracLabError, RuntimeError):
    """Quadrature failed to converge below tolerance at maximum refinement.

    Carries ``best_estimate`` and the achieved ``mismatch``.
    """

    def __init__(self, msg, best_estimate, mismatch):
        super().__init__(msg)
        self.best_estimate = best_estimate
        self.mismatch = mismatch


class ExtrapolationError(FracLabError, RuntimeError):
    """Limit extrapolation at the boundary did not stabilize."""


class EigenbasisError(FracLabError, RuntimeError):
    """Eigen-expansion does not cover the requested data."""


class ConfigError(FracLabError, ValueError):
    """Invalid experiment configuration."""


class UnknownExperimentError(FracLabError, KeyError):
    """Experiment name not in the registry."""
