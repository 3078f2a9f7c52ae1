"""Exception hierarchy shared by the library and the CLI.

ValidationError subclasses map to CLI exit code 2, DomainError subclasses to
exit code 3; oracle hard-check failures use exit code 4 without an exception.
"""


class DickeIsingError(Exception):
    """Base class for all library errors."""


class ValidationError(DickeIsingError, ValueError):
    """Invalid input parameters."""


class ChainTooShort(ValidationError):
    """Fewer than two dipoles: the chain has no bond."""


class NonPositiveFrequency(ValidationError):
    """Transition frequency must be positive."""


class OutOfNormalPhase(ValidationError):
    """|eta| > 0.25 lies outside the normal phase covered by this library."""


class DomainError(DickeIsingError):
    """Operation left its domain of validity at runtime."""


class DegenerateNormalization(DomainError):
    """A Bogoliubov normalization denominator underflowed."""


class ComplexEnergy(DomainError):
    """Dispersion radicand went negative (outside the normal phase)."""


class NoConvergence(DomainError):
    """Iterative solver did not reach the requested residual."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


class ParamsMismatch(DomainError):
    """A precomputed solution was built for different chain parameters."""


class ComplexPolariton(DomainError):
    """Lower-polariton radicand went negative (no-go bound violated)."""


class DegenerateBranches(DomainError):
    """Upper and lower polaritons are numerically degenerate."""


class ResonanceDivergence(DomainError):
    """Perturbative polariton formulas evaluated too close to resonance."""


class NoCrossing(DomainError):
    """Cavity and matter branches do not cross inside the zone."""


class TooLarge(DomainError):
    """Requested dense diagonalization exceeds the configured cap."""


class CutoffUnconverged(DomainError):
    """Doubling the photon Fock cutoff moved the low-lying gaps."""
