"""
Proof pipeline and its JSON certificate.

Stages run in order newton -> radii -> positivity -> floquet. A stage that
fails is recorded, later stages are marked skipped, and the certificate is
written either way. Every binary64 value is stored as a hex-float string and
every interval as ``[lo_hex, hi_hex]``, so a certificate reads back
bit-exactly.

Example:
    cert = run_prove(ProofConfig(mesh_size=300))
    assert cert.proven
"""

import json
import logging
import os
import platform
import re
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, List, Optional

import numpy as np

from .config import ProofConfig
from .errors import CertificateError, ProofFailure, PwProofError
from .floquet import Disc, StabilityVerdict, analyze_monodromy, stability_verdict
from .interval import Interval
from .newton import newton_refine
from .orbit import build_full_orbit, cells_frame, simulate_switching, verify_positivity
from .radii import prove_existence

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "pwproof-certificate/1"
STAGES = ("newton", "radii", "positivity", "floquet")

OK = "ok"
FAILED = "failed"
SKIPPED = "skipped"

_HEX_FLOAT = re.compile(r"^-?0x[0-9a-f]+(\.[0-9a-f]*)?p[+-]\d+$")


# === Encoding helpers ===


def _hex(x: float) -> str:
    return float(x).hex()


def _unhex(s: str) -> float:
    return float.fromhex(s)


def _encode_any(value: Any) -> Any:
    """Floats to hex strings, recursively; everything else JSON-native."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (float, np.floating)):
        return _hex(float(value))
    if isinstance(value, Interval):
        return value.hex()
    if isinstance(value, dict):
        return {str(k): _encode_any(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_encode_any(v) for v in value]
    return str(value)


def _decode_any(value: Any) -> Any:
    if isinstance(value, str) and _HEX_FLOAT.match(value):
        return _unhex(value)
    if isinstance(value, dict):
        return {k: _decode_any(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode_any(v) for v in value]
    return value


# === Sections ===


@dataclass
class NewtonRecord:
    seed: List[float]
    iterations: int
    residuals: List[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": [_hex(x) for x in self.seed],
            "iterations": self.iterations,
            "residuals": [_hex(x) for x in self.residuals],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "NewtonRecord":
        return cls(
            seed=[_unhex(x) for x in d["seed"]],
            iterations=int(d["iterations"]),
            residuals=[_unhex(x) for x in d["residuals"]],
        )


@dataclass
class RadiiRecord:
    """Radii bounds plus the certified box around a_bar."""

    Y0: float
    Z1: float
    Z2: float
    r_star: float
    r0_min: float
    r0_max: float
    L_positive: Optional[bool]
    box: List[Interval]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Y0": _hex(self.Y0),
            "Z1": _hex(self.Z1),
            "Z2": _hex(self.Z2),
            "r_star": _hex(self.r_star),
            "r0_min": _hex(self.r0_min),
            "r0_max": _hex(self.r0_max),
            "L_positive": self.L_positive,
            "box": [x.hex() for x in self.box],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "RadiiRecord":
        return cls(
            Y0=_unhex(d["Y0"]),
            Z1=_unhex(d["Z1"]),
            Z2=_unhex(d["Z2"]),
            r_star=_unhex(d["r_star"]),
            r0_min=_unhex(d["r0_min"]),
            r0_max=_unhex(d["r0_max"]),
            L_positive=d["L_positive"],
            box=[Interval.from_hex(x) for x in d["box"]],
        )


@dataclass
class MeshRecord:
    size: int
    verdict: str
    k1: Optional[int] = None
    k2: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"size": self.size, "k1": self.k1, "k2": self.k2, "verdict": self.verdict}

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "MeshRecord":
        return cls(size=int(d["size"]), verdict=d["verdict"], k1=d["k1"], k2=d["k2"])


@dataclass
class FloquetRecord:
    S41: Interval
    monodromy: List[List[Interval]]
    discs: List[Disc]
    trivial_disc_index: Optional[int]
    det: Interval
    liouville: Interval
    liouville_ok: bool
    spectral_product_ok: bool
    overlap: bool
    verdict: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S41": self.S41.hex(),
            "monodromy": [[x.hex() for x in row] for row in self.monodromy],
            "discs": [
                {"center": _hex(d.center), "radius": _hex(d.radius)} for d in self.discs
            ],
            "trivial_disc_index": self.trivial_disc_index,
            "det": self.det.hex(),
            "liouville": self.liouville.hex(),
            "liouville_ok": self.liouville_ok,
            "spectral_product_ok": self.spectral_product_ok,
            "overlap": self.overlap,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "FloquetRecord":
        return cls(
            S41=Interval.from_hex(d["S41"]),
            monodromy=[[Interval.from_hex(x) for x in row] for row in d["monodromy"]],
            discs=[
                Disc(center=_unhex(x["center"]), radius=_unhex(x["radius"]))
                for x in d["discs"]
            ],
            trivial_disc_index=d["trivial_disc_index"],
            det=Interval.from_hex(d["det"]),
            liouville=Interval.from_hex(d["liouville"]),
            liouville_ok=bool(d["liouville_ok"]),
            spectral_product_ok=bool(d["spectral_product_ok"]),
            overlap=bool(d["overlap"]),
            verdict=d["verdict"],
        )


@dataclass
class OracleRecord:
    """Non-rigorous reference integration; informational only."""

    crossing_times: List[float]
    return_distance: float
    period_error: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "crossing_times": [_hex(x) for x in self.crossing_times],
            "return_distance": _hex(self.return_distance),
            "period_error": _hex(self.period_error),
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "OracleRecord":
        return cls(
            crossing_times=[_unhex(x) for x in d["crossing_times"]],
            return_distance=_unhex(d["return_distance"]),
            period_error=_unhex(d["period_error"]),
        )


def build_environment() -> Dict[str, str]:
    from . import __version__

    return {
        "build": f"pwproof {__version__}",
        "python": platform.python_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


@dataclass
class ProofCertificate:
    """
    Auditable record of a proof run.

    Attributes:
        status: "proven" or "failed"
        failed_stage: Name of the stage that failed, if any
        failure: Message and diagnostics of the failure
        stages: Stage name -> "ok" / "failed" / "skipped", in pipeline order
    """

    version: str = SCHEMA_VERSION
    status: str = "failed"
    failed_stage: Optional[str] = None
    failure: Optional[Dict[str, Any]] = None
    stages: Dict[str, str] = field(default_factory=lambda: {s: SKIPPED for s in STAGES})
    a_bar: Optional[List[float]] = None
    newton: Optional[NewtonRecord] = None
    radii: Optional[RadiiRecord] = None
    mesh: Optional[MeshRecord] = None
    floquet: Optional[FloquetRecord] = None
    oracle: Optional[OracleRecord] = None
    environment: Dict[str, str] = field(default_factory=dict)

    @property
    def proven(self) -> bool:
        return self.status == "proven"

    def mark_ok(self, stage: str) -> None:
        self.stages[stage] = OK

    def mark_failed(self, exc: ProofFailure) -> None:
        self.status = "failed"
        self.failed_stage = exc.stage
        self.failure = {"message": exc.message, "diagnostics": exc.diagnostics}
        self.stages[exc.stage] = FAILED

    # === Serialization ===

    def to_dict(self) -> Dict[str, Any]:
        def section(record: Any) -> Any:
            return None if record is None else record.to_dict()

        return {
            "version": self.version,
            "status": self.status,
            "failed_stage": self.failed_stage,
            "failure": _encode_any(self.failure),
            "stages": dict(self.stages),
            "a_bar": None if self.a_bar is None else [_hex(x) for x in self.a_bar],
            "newton": section(self.newton),
            "radii": section(self.radii),
            "mesh": section(self.mesh),
            "floquet": section(self.floquet),
            "oracle": section(self.oracle),
            "environment": dict(self.environment),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "ProofCertificate":
        def section(key: str, record: Any) -> Any:
            return None if d.get(key) is None else record.from_dict(d[key])

        try:
            return cls(
                version=d["version"],
                status=d["status"],
                failed_stage=d.get("failed_stage"),
                failure=_decode_any(d.get("failure")),
                stages=dict(d["stages"]),
                a_bar=None if d.get("a_bar") is None else [_unhex(x) for x in d["a_bar"]],
                newton=section("newton", NewtonRecord),
                radii=section("radii", RadiiRecord),
                mesh=section("mesh", MeshRecord),
                floquet=section("floquet", FloquetRecord),
                oracle=section("oracle", OracleRecord),
                environment=dict(d.get("environment", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ProofCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise CertificateError("certificate must be a JSON object")
        return cls.from_dict(data)

    def write(self, path: str) -> None:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as f:
            f.write(self.to_json())
            f.write("\n")
        logger.info("Saved: %s", path)

    @classmethod
    def read(cls, path: str) -> "ProofCertificate":
        with open(path) as f:
            return cls.from_json(f.read())


# === Pipeline ===


@contextmanager
def _stage(name: str) -> Iterator[None]:
    """Report any pwproof error raised inside as a failure of stage ``name``."""
    try:
        yield
    except ProofFailure:
        raise
    except PwProofError as exc:
        raise ProofFailure(name, f"{type(exc).__name__}: {exc}") from exc


def _run_oracle(cert: ProofCertificate, a_bar: np.ndarray) -> None:
    x0 = np.array([0.0, a_bar[1], a_bar[2], a_bar[3]])
    run = simulate_switching(x0, crossings=2)
    if len(run.times) < 2:
        logger.warning("reference integration did not close the orbit")
        return
    cert.oracle = OracleRecord(
        crossing_times=list(run.times),
        return_distance=float(np.max(np.abs(run.states[-1] - x0))),
        period_error=abs(run.elapsed - 2.0 * float(a_bar[0])),
    )
    logger.info(
        "reference integration: return distance %.3e, period error %.3e",
        cert.oracle.return_distance,
        cert.oracle.period_error,
    )


def run_prove(config: Optional[ProofConfig] = None, write: bool = True) -> ProofCertificate:
    """
    Run all proof stages and write the certificate.

    Any pwproof error inside a stage is recorded as that stage's failure, so
    the certificate is written with partial results either way.

    Args:
        config: Proof settings (defaults if None)
        write: Write the certificate to config.output_path()

    Returns:
        The certificate; ``cert.proven`` tells whether every stage passed
    """
    config = config or ProofConfig()
    cert = ProofCertificate(environment=build_environment())

    try:
        with _stage("newton"):
            result = newton_refine(config.seed, config.max_iter, config.tol)
            a_bar = result.a
            cert.a_bar = [float(x) for x in a_bar]
            cert.newton = NewtonRecord(
                seed=list(config.seed),
                iterations=result.iterations,
                residuals=list(result.residuals),
            )
            if not a_bar[0] > 0.0:
                raise ProofFailure(
                    "newton", "zero has non-positive duration", {"a_bar": cert.a_bar}
                )
        cert.mark_ok("newton")

        with _stage("radii"):
            bounds = prove_existence(a_bar, config.r_star)
            box = bounds.box(a_bar)
            cert.radii = RadiiRecord(
                Y0=bounds.Y0,
                Z1=bounds.Z1,
                Z2=bounds.Z2,
                r_star=bounds.r_star,
                r0_min=bounds.r0_min,
                r0_max=bounds.r0_max,
                L_positive=bounds.L_positive,
                box=list(box),
            )
        cert.mark_ok("radii")

        with _stage("positivity"):
            cert.mesh = MeshRecord(size=config.mesh_size, verdict=FAILED)
            seg = verify_positivity(box, box[0], config.mesh_size, workers=config.workers)
            cert.mesh = MeshRecord(size=config.mesh_size, verdict=OK, k1=seg.k1, k2=seg.k2)
            if config.cells_output:
                os.makedirs(os.path.dirname(config.cells_output) or ".", exist_ok=True)
                cells_frame(seg).to_csv(
                    config.cells_output, index=False, float_format="%.17g"
                )
                logger.info("Saved: %s", config.cells_output)
        cert.mark_ok("positivity")

        orbit = build_full_orbit(seg, a_bar)
        _run_oracle(cert, orbit.center)

        with _stage("floquet"):
            report = analyze_monodromy(box[0], box[1])
            verdict = stability_verdict(report)
            cert.floquet = FloquetRecord(
                S41=report.S[3, 0],
                monodromy=[list(row) for row in report.X_period],
                discs=list(report.discs),
                trivial_disc_index=report.trivial_disc_index,
                det=report.det_enclosure,
                liouville=report.liouville,
                liouville_ok=report.liouville_ok,
                spectral_product_ok=report.spectral_product_ok,
                overlap=report.overlap,
                verdict=verdict.value,
            )
            if not report.liouville_ok:
                raise ProofFailure(
                    "floquet",
                    "determinant enclosure misses the Liouville value",
                    {"det": report.det_enclosure.hex(), "liouville": report.liouville.hex()},
                )
            if not report.spectral_product_ok:
                raise ProofFailure(
                    "floquet",
                    "product of the disc segments misses the determinant",
                    {"det": report.det_enclosure.hex()},
                )
            if report.trivial_disc_index is None:
                raise ProofFailure("floquet", "no multiplier disc contains 1")
            if verdict is not StabilityVerdict.STABLE:
                raise ProofFailure("floquet", f"stability {verdict.value}")
        logger.info("floquet: verdict %s", verdict.value)
        cert.mark_ok("floquet")
        cert.status = "proven"

    except ProofFailure as exc:
        logger.error("proof failed: %s", exc)
        cert.mark_failed(exc)

    if write:
        cert.write(config.output_path())
    return cert
