"""
pwproof - Computer-assisted proof of a stable crossing periodic orbit.

The orbit solves the piecewise-linear fourth-order system
x' = M x + sign(x1) b obtained from traveling waves of a signed
Kuramoto-Sivashinsky equation with absorption. The proof runs in four
stages: Newton, radii polynomial, mesh positivity and Floquet multipliers.

Usage:
    from pwproof import run_prove, ProofConfig

    # Full proof, certificate to results/certificate.json
    cert = run_prove(ProofConfig())
    assert cert.proven

    # Individual stages
    from pwproof import newton_refine, prove_existence, DEFAULT_SEED
    a_bar = newton_refine(DEFAULT_SEED).a
    bounds = prove_existence(a_bar, r_star=0.01)
"""

__version__ = "0.1.0"

from pwproof.certificate import ProofCertificate, run_prove  # noqa: E402
from pwproof.config import (  # noqa: E402
    DEFAULT_SEED,
    FigureConfig,
    FontConfig,
    ProofConfig,
    WaveConfig,
)
from pwproof.errors import (  # noqa: E402
    IntervalDomainError,
    IntervalError,
    IntervalOverflowError,
    ProofFailure,
    PwProofError,
)
from pwproof.floquet import StabilityVerdict, analyze_monodromy, stability_verdict  # noqa: E402
from pwproof.interval import Interval, iv_exp  # noqa: E402
from pwproof.newton import newton_refine  # noqa: E402
from pwproof.orbit import PeriodicOrbit, verify_positivity  # noqa: E402
from pwproof.radii import prove_existence  # noqa: E402

__all__ = [
    # Pipeline
    "run_prove",
    "ProofCertificate",
    # Configuration
    "ProofConfig",
    "WaveConfig",
    "FigureConfig",
    "FontConfig",
    "DEFAULT_SEED",
    # Stages
    "newton_refine",
    "prove_existence",
    "verify_positivity",
    "analyze_monodromy",
    "stability_verdict",
    "StabilityVerdict",
    "PeriodicOrbit",
    # Intervals
    "Interval",
    "iv_exp",
    # Errors
    "PwProofError",
    "IntervalError",
    "IntervalOverflowError",
    "IntervalDomainError",
    "ProofFailure",
]
