"""
Command-line interface for pwproof.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional, Tuple

from . import __version__


def _floats(text: str, n: Optional[int] = None) -> Tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}")
    if n is not None and len(values) != n:
        raise argparse.ArgumentTypeError(f"expected {n} values, got {len(values)}")
    return values


def _seed(text: str) -> Tuple[float, ...]:
    return _floats(text, 4)


def _pair(text: str) -> Tuple[float, ...]:
    return _floats(text, 2)


def build_parser() -> argparse.ArgumentParser:
    from .config import DEFAULT_SEED

    seed_text = ",".join(str(x) for x in DEFAULT_SEED)
    parser = argparse.ArgumentParser(
        prog="pwproof",
        description="pwproof - Computer-assisted proof of a stable crossing periodic orbit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
        Examples:
            # Full proof, certificate to results/certificate.json
            pwproof prove

            # Coarser mesh, custom certificate path
            pwproof prove --mesh 100 --out cert.json

            # Figure data and SVG
            pwproof figures orbit --out orbit.csv --svg orbit.svg
            pwproof figures wave --c 1 --times 0,1,2 --out wave.csv

        For more control, use the Python API:
            from pwproof import run_prove, ProofConfig
        """,
    )
    parser.add_argument("--version", action="version", version=f"pwproof {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="Warnings only")

    sub = parser.add_subparsers(dest="command")

    prove = sub.add_parser("prove", help="Run the full proof and write a certificate")
    prove.add_argument("--mesh", type=int, default=300, help="Mesh size (default: 300)")
    prove.add_argument(
        "--rstar", type=float, default=0.01, help="Trust radius r* (default: 0.01)"
    )
    prove.add_argument(
        "--seed", type=_seed, default=DEFAULT_SEED, help=f"Newton seed (default: {seed_text})"
    )
    prove.add_argument("--out", help="Certificate path")
    prove.add_argument("--cells", help="Write cell enclosures to this CSV")
    prove.add_argument("--workers", type=int, default=1, help="Processes for the mesh")

    newton = sub.add_parser("newton", help="Compute the approximate zero")
    newton.add_argument(
        "--seed", type=_seed, default=DEFAULT_SEED, help=f"Newton seed (default: {seed_text})"
    )
    newton.add_argument("--max-iter", type=int, default=50)
    newton.add_argument("--tol", type=float, default=1e-13)

    figures = sub.add_parser("figures", help="Emit figure data as CSV")
    figures.add_argument("kind", choices=["orbit", "wave"])
    figures.add_argument("--cert", help="Certificate to read (default: resolved path)")
    figures.add_argument("--samples", type=int, help="Number of samples")
    figures.add_argument("--c", type=float, help="Wave speed (default: 1)")
    figures.add_argument("--times", type=_floats, help="Snapshot times t1,t2,...")
    figures.add_argument("--xi-range", type=_pair, help="xi interval lo,hi")
    figures.add_argument("--out", required=True, help="Output CSV path")
    figures.add_argument("--svg", help="Also render an SVG")

    plot = sub.add_parser("plot", help="Render a CSV as SVG")
    plot.add_argument("data", help="Input CSV file")
    plot.add_argument("-o", "--output", required=True, help="Output SVG path")
    plot.add_argument("--x", help="Column on the x axis")
    plot.add_argument("--y", help="Column on the y axis")

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _prove(args: argparse.Namespace) -> int:
    from .certificate import run_prove
    from .config import ProofConfig

    config = ProofConfig(
        mesh_size=args.mesh,
        r_star=args.rstar,
        seed=args.seed,
        output=args.out,
        cells_output=args.cells,
        workers=args.workers,
    )
    cert = run_prove(config)
    if cert.proven:
        print(f"proven: certificate {config.output_path()}")
        return 0
    print(f"failed at stage {cert.failed_stage}: {cert.failure['message']}", file=sys.stderr)
    return 1


def _newton(args: argparse.Namespace) -> int:
    from .newton import newton_refine

    result = newton_refine(args.seed, args.max_iter, args.tol)
    for name, x in zip(("L", "a2", "a3", "a4"), result.a):
        print(f"{name} = {float(x).hex()}  {float(x):.16e}")
    print(f"iterations = {result.iterations}, residual = {result.residual:.3e}")
    return 0


def _load_certificate(path: Optional[str]):
    from .certificate import ProofCertificate, run_prove
    from .config import ProofConfig, resolve_certificate_path

    path = resolve_certificate_path(path)
    if os.path.exists(path):
        return ProofCertificate.read(path)
    logging.getLogger(__name__).info("no certificate at %s, running the proof", path)
    return run_prove(ProofConfig(), write=False)


def _figures(args: argparse.Namespace) -> int:
    from .config import WaveConfig
    from .figures import emit_orbit_figure_data, emit_svg, emit_wave_snapshots

    cert = _load_certificate(args.cert)
    if args.kind == "orbit":
        emit_orbit_figure_data(cert, args.samples or 401, output=args.out)
    else:
        given = {
            "c": args.c,
            "times": args.times,
            "xi_range": args.xi_range,
            "samples": args.samples,
        }
        options = {k: v for k, v in given.items() if v is not None}
        defaults = [k for k, v in given.items() if v is None]
        emit_wave_snapshots(cert, WaveConfig(defaults=defaults, **options), output=args.out)

    if args.svg:
        emit_svg(args.out, args.svg)
    return 0


def _plot(args: argparse.Namespace) -> int:
    from .figures import emit_svg

    emit_svg(args.data, args.output, x=args.x, y=args.y)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 0

    _configure_logging(args)
    handlers = {
        "prove": _prove,
        "newton": _newton,
        "figures": _figures,
        "plot": _plot,
    }

    # Import here to avoid slow startup
    from .errors import PwProofError

    try:
        return handlers[args.command](args)
    except (PwProofError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
