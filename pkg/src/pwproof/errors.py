"""
Exception hierarchy for pwproof.

Hard errors (invalid arithmetic, transcription bugs, singular linear
algebra) are distinguished from proof failures: a ``ProofFailure`` means a
rigorous check did not go through and is reported, not crashed on.
"""

from typing import Any, Dict, Optional


class PwProofError(Exception):
    """Base class for all pwproof errors."""


class IntervalError(PwProofError, ArithmeticError):
    """Invalid interval (lo > hi or NaN endpoint)."""


class IntervalOverflowError(IntervalError, OverflowError):
    """An endpoint left the finite binary64 range."""


class IntervalDomainError(IntervalError, ValueError):
    """Operation undefined on the given interval (e.g. division by [-1, 1])."""


class ExactDataError(PwProofError):
    """An exact identity between the problem matrices failed."""


class NewtonError(PwProofError):
    """Base class for zero-finder failures."""


class SingularJacobianError(NewtonError):
    """The Jacobian became singular during the Newton iteration."""

    def __init__(self, iteration: int, message: str = ""):
        self.iteration = iteration
        super().__init__(message or f"singular Jacobian at iteration {iteration}")


class NonConvergenceError(NewtonError):
    """Newton did not reach the residual tolerance."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(last residual {residual:.3e})"
        )


class SingularMatrixError(NewtonError):
    """LU factorization hit a zero pivot."""


class EigenbasisError(PwProofError):
    """The approximate eigenbasis cannot be certified."""


class ProofFailure(PwProofError):
    """
    A rigorous verification step did not succeed.

    Attributes:
        stage: Pipeline stage name ("newton", "radii", "positivity", "floquet")
        diagnostics: JSON-friendly details (offending cell, bounds, ...)
    """

    def __init__(
        self,
        stage: str,
        message: str,
        diagnostics: Optional[Dict[str, Any]] = None,
    ):
        self.stage = stage
        self.message = message
        self.diagnostics = diagnostics or {}
        super().__init__(f"[{stage}] {message}")


class ConfigError(PwProofError, ValueError):
    """Invalid configuration value."""


class FigureError(PwProofError, ValueError):
    """Figure data could not be produced or read."""


class CertificateError(PwProofError, ValueError):
    """Malformed proof certificate."""
