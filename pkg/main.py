#!/usr/bin/env python3
"""
Surgery Space

Main entry point for solving Dehn fillings of A*, scanning surgery space,
running the theorem verifiers and drawing the octagon figure.

Usage:
    python main.py solve --side beta --p 0 --q 2        # Solve one filling
    python main.py scan --p-range -6:6:3 --q-range -6:6:3
    python main.py verify thm2 --samples 64            # Run a verifier
    python main.py octagon --omega 0.5,0.5 --tiles 2   # Draw the octagon
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.markup import escape

from src.core import config
from src.core.log import setup_logging
from src.errors import (
    CouplingMismatch,
    DegenerateJacobian,
    NoConvergence,
    StepCollapse,
    SurgerySpaceError,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NO_CONVERGENCE = 2
EXIT_INVALID_INPUT = 3

NON_CONVERGENCE_ERRORS = (NoConvergence, DegenerateJacobian, StepCollapse, CouplingMismatch)

RANGE_OPTIONS = ("--p-range", "--q-range")

VERIFY_TARGETS = ("thm1", "thm2", "thm3", "consistency", "octagon", "corollary", "continuation")

logger = logging.getLogger("surgery_space")
console = Console()


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_INVALID_INPUT."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID_INPUT, f"{self.prog}: error: {message}\n")


def join_range_values(argv: List[str]) -> List[str]:
    """Attach range values to their option so a leading minus is not read as a flag."""
    joined: List[str] = []
    pending = None
    for arg in argv:
        if pending is not None:
            joined.append(f"{pending}={arg}")
            pending = None
        elif arg in RANGE_OPTIONS:
            pending = arg
        else:
            joined.append(arg)
    if pending is not None:
        joined.append(pending)
    return joined


def exit_code_for(error: Exception) -> int:
    if isinstance(error, NON_CONVERGENCE_ERRORS):
        return EXIT_NO_CONVERGENCE
    return EXIT_INVALID_INPUT


def load_cli_settings(args):
    from src.models.settings import load_settings

    path = args.config
    if path is None and config.DEFAULT_SETTINGS_FILE.exists():
        path = config.DEFAULT_SETTINGS_FILE
    settings = load_settings(path)
    if getattr(args, "tol", None) is not None:
        settings = settings.model_copy(update={"newton_tol": args.tol})
    return settings


def parse_complex(text: str) -> complex:
    """Parse ``re,im`` into a complex number."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected re,im, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def solve_record(result, other_param: complex, settings):
    """Build a SolveRecord for one side, with the other side's parameter fixed."""
    from src.core.shapes import classify_orientation, shapes_from_params
    from src.core.surgery import core_geodesic
    from src.core.volume import volume
    from src.errors import NotPrimitive
    from src.models.holonomy import Side
    from src.models.reports import ComplexValue, SolveRecord
    from src.models.shapes import ParamPoint

    if result.side is Side.ALPHA:
        point = ParamPoint(result.param, other_param)
    else:
        point = ParamPoint(other_param, result.param)
    s = shapes_from_params(point, settings.degeneracy_eps)

    core, cone_order = None, None
    if result.filling.is_integral:
        try:
            geodesic = core_geodesic(result.filling, result.log_hol, reduce_common_factor=True)
            core, cone_order = ComplexValue.of(geodesic.complex_length), geodesic.cone_order
        except NotPrimitive:
            pass

    f = result.filling
    return SolveRecord(
        side=result.side.value,
        p=None if f.complete else f.p,
        q=None if f.complete else f.q,
        param=ComplexValue.of(result.param),
        u=ComplexValue.of(result.log_hol.u),
        v=ComplexValue.of(result.log_hol.v),
        branch_u=result.log_hol.branch_u,
        branch_v=result.log_hol.branch_v,
        residual=result.residual,
        iterations=result.iterations,
        restarts=result.restarts,
        volume=volume(s),
        core_length=core,
        cone_order=cone_order,
        orientation=classify_orientation(s, settings.flat_eps).as_string(),
    )


def cmd_solve(args) -> int:
    """Solve the filling equation on one side or both."""
    from src.core.config import COMPLETE_POINT
    from src.core.reporting import solve_table
    from src.core.surgery import joint_solve, solve_filling
    from src.models.holonomy import Side
    from src.models.surgery import FillingCoeffs

    settings = load_cli_settings(args)
    f = FillingCoeffs(args.p, args.q)

    if args.side == "both":
        p2 = args.p if args.p2 is None else args.p2
        q2 = args.q if args.q2 is None else args.q2
        alpha, beta = joint_solve(f, FillingCoeffs(p2, q2), settings)
        records = [solve_record(alpha, beta.param, settings), solve_record(beta, alpha.param, settings)]
    else:
        result = solve_filling(f, Side(args.side), settings=settings)
        records = [solve_record(result, COMPLETE_POINT, settings)]

    if args.json:
        payload = records[0].model_dump() if len(records) == 1 else [r.model_dump() for r in records]
        print(json.dumps(payload, indent=2))
    else:
        console.print(solve_table(records))
    return EXIT_OK


def cmd_scan(args) -> int:
    """Scan a (p, q) grid and write the CSV."""
    from src.core.reporting import scan_summary
    from src.core.scan import ScanConfig, ScanRunner, parse_range, write_scan_csv

    settings = load_cli_settings(args)
    scan = ScanConfig(
        side=args.side,
        p_values=parse_range(args.p_range),
        q_values=parse_range(args.q_range),
        threads=args.threads,
    )
    records = ScanRunner(scan, settings).run()
    path = write_scan_csv(records, args.out)

    if args.json:
        print(json.dumps({"rows": len(records), "path": str(path)}, indent=2))
    else:
        console.print(scan_summary(records))
        console.print(f"Scan written to: {path}")
    return EXIT_OK


def run_verifier(target: str, args, settings):
    from src.core import verifiers

    samples = args.samples
    seed = args.seed
    if target == "thm1":
        return verifiers.verify_isolation(grid=args.grid, seed=seed, settings=settings)
    if target == "thm2":
        return verifiers.verify_theorem2(n_samples=samples or 64, settings=settings)
    if target == "thm3":
        radii = [float(r) for r in args.radii.split(",")] if args.radii else verifiers.DEFAULT_RADII
        return verifiers.verify_theorem3(radii=radii, settings=settings)
    if target == "consistency":
        return verifiers.verify_consistency(n_samples=samples or 10000, seed=seed, settings=settings)
    if target == "octagon":
        return verifiers.verify_octagon(n_samples=samples or 1000, seed=seed)
    if target == "corollary":
        return verifiers.verify_corollary(settings=settings)
    return verifiers.verify_cut_plane_logs(n_samples=samples or 50, seed=seed, settings=settings)


def cmd_verify(args) -> int:
    """Run one verifier and report pass/fail."""
    from src.core.reporting import print_verification

    settings = load_cli_settings(args)
    report = run_verifier(args.target, args, settings)

    if args.json:
        print(json.dumps(report.summary(), indent=2, default=str))
    else:
        print_verification(report, console)

    if args.report is not None:
        report_path = Path(args.report) if args.report else config.REPORTS_DIR / f"{args.target}.json"
        report_path.parent.mkdir(parents=True, exist_ok=True)
        with open(report_path, "w", encoding="utf-8") as f:
            f.write(report.model_dump_json(indent=2))
        logger.info("Report saved to %s", report_path)

    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_octagon(args) -> int:
    """Draw the octagon construction for one interior point."""
    from src.core.octagon import octagon_construct
    from src.templates.figure_renderer import FigureRenderer

    omega = parse_complex(args.omega)
    cfg = octagon_construct(omega)
    out = args.out
    if out is None:
        config.ensure_directories()
        out = config.DEFAULT_OCTAGON_SVG
    FigureRenderer().render_octagon(cfg, tiles=args.tiles, output_path=out)

    if args.json:
        print(json.dumps({"path": str(out), "omega": [omega.real, omega.imag], "tiles": args.tiles}, indent=2))
    else:
        console.print(f"Octagon figure written to: {out}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "octagon": cmd_octagon,
}


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        description="Dehn surgery space of the 4-cusped manifold A*",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py solve --side beta --p 0 --q 2
  python main.py solve --side both --p 3 --q 1 --p2 3 --q2 1 --json
  python main.py scan --side beta --p-range -6:6:3 --q-range -6:6:3 --out scan.csv --threads 4
  python main.py verify consistency --samples 10000 --seed 7
  python main.py octagon --omega 0.9,0.1 --tiles 2 --out octagon.svg
        """
    )
    parser.add_argument("--config", default=None, help="YAML settings file (default: config/solver.yaml)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    common = CliParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output on stdout")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Solve command
    solve_parser = subparsers.add_parser("solve", parents=[common], help="Solve a Dehn filling")
    solve_parser.add_argument("--side", choices=("alpha", "beta", "both"), default="beta", help="Cusp pair to fill")
    solve_parser.add_argument("--p", type=float, required=True, help="Surgery coefficient p (alpha side for both)")
    solve_parser.add_argument("--q", type=float, required=True, help="Surgery coefficient q (alpha side for both)")
    solve_parser.add_argument("--p2", type=float, default=None, help="beta-side p when --side both")
    solve_parser.add_argument("--q2", type=float, default=None, help="beta-side q when --side both")
    solve_parser.add_argument("--tol", type=float, default=None, help="Newton residual tolerance")

    # Scan command
    scan_parser = subparsers.add_parser("scan", parents=[common], help="Scan a grid of fillings to CSV")
    scan_parser.add_argument("--side", choices=("alpha", "beta", "both"), default="beta", help="Cusp pair to fill")
    scan_parser.add_argument("--p-range", required=True, help="start:stop:step")
    scan_parser.add_argument("--q-range", required=True, help="start:stop:step")
    scan_parser.add_argument("-o", "--out", default=None, help="Output CSV (default: results/scans/scan.csv)")
    scan_parser.add_argument("--threads", type=int, default=1, help="Worker threads")

    # Verify command
    verify_parser = subparsers.add_parser("verify", parents=[common], help="Run a theorem verifier")
    verify_parser.add_argument("target", choices=VERIFY_TARGETS, help="What to verify")
    verify_parser.add_argument("--samples", type=int, default=None, help="Number of samples")
    verify_parser.add_argument("--seed", type=int, default=0, help="Sampling seed")
    verify_parser.add_argument("--grid", type=int, default=5, help="Filling grid side for thm1")
    verify_parser.add_argument("--radii", default=None, help="Comma-separated radii for thm3")
    verify_parser.add_argument(
        "--report", nargs="?", const="", default=None,
        help="Also save the JSON report (default file: results/reports/<target>.json)",
    )

    # Octagon command
    octagon_parser = subparsers.add_parser("octagon", parents=[common], help="Draw the octagon tiling figure")
    octagon_parser.add_argument("--omega", required=True, help="Interior point as re,im")
    octagon_parser.add_argument("--tiles", type=int, default=1, help="Copies per side of the tiling block")
    octagon_parser.add_argument("-o", "--out", default=None, help="Output SVG (default: results/figures/octagon.svg)")

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map failures onto exit codes."""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(join_range_values(list(argv)))
    setup_logging(verbose=args.verbose)

    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help()
        return EXIT_INVALID_INPUT

    try:
        return handler(args)
    except (SurgerySpaceError, ValueError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        if args.json:
            print(json.dumps({"error": type(e).__name__, "message": str(e)}))
        else:
            console.print(f"[bold red]{type(e).__name__}:[/bold red] {escape(str(e))}")
        return exit_code_for(e)


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
