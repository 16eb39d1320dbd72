"""
Console rendering of solve results and verification reports.
"""

from typing import Iterable, Optional

from rich.box import ROUNDED
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..models.reports import ScanRecord, SolveRecord, VerificationReport


def _cplx(value) -> str:
    return f"{value.re:.12g} {'+' if value.im >= 0 else '-'} {abs(value.im):.12g}i"


def solve_table(records: Iterable[SolveRecord]) -> Table:
    table = Table(title="Filling solutions", box=ROUNDED)
    for column in ("side", "(p, q)", "parameter", "u", "v", "branches", "residual", "iters", "volume", "core length"):
        table.add_column(column)
    for r in records:
        coeffs = "complete" if r.p is None else f"({r.p:g}, {r.q:g})"
        core = _cplx(r.core_length) if r.core_length else ""
        if r.core_length and r.cone_order and r.cone_order > 1:
            core += f" (order {r.cone_order})"
        table.add_row(
            r.side,
            coeffs,
            _cplx(r.param),
            _cplx(r.u),
            _cplx(r.v),
            f"{r.branch_u}, {r.branch_v}",
            f"{r.residual:.2e}",
            str(r.iterations),
            "" if r.volume is None else f"{r.volume:.12f}",
            core,
        )
    return table


def verification_table(report: VerificationReport) -> Table:
    table = Table(title=f"Verification: {report.theorem}", box=ROUNDED)
    table.add_column("check")
    table.add_column("samples", justify="right")
    table.add_column("max residual", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("result")
    for check in report.checks:
        result = Text("pass", style="green") if check.passed else Text(f"FAIL ({check.failures})", style="bold red")
        table.add_row(check.name, str(check.samples), f"{check.max_residual:.3e}", f"{check.tolerance:.1e}", result)
    return table


def convergence_table(report: VerificationReport) -> Optional[Table]:
    """Radius sweep rows recorded by the infinite-circle verifier."""
    rows = report.notes.get("convergence_table")
    if not rows:
        return None
    table = Table(title="Large-circle convergence", box=ROUNDED)
    for column in ("theta", "r", "p", "q", "distance", "shape error", "edge"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(
            f"{row['theta']:.4f}",
            f"{row['r']:g}",
            f"{row['p']:.6f}",
            f"{row['q']:.6f}",
            f"{row['distance']:.3e}",
            f"{row['shape_error']:.3e}",
            row["edge"],
        )
    return table


def print_verification(report: VerificationReport, console: Console = None):
    console = console or Console()
    console.print(verification_table(report))
    extra = convergence_table(report)
    if extra is not None:
        console.print(extra)
    if report.offending:
        offenders = Table(title="Offending samples", box=ROUNDED)
        offenders.add_column("check")
        offenders.add_column("sample")
        offenders.add_column("residual", justify="right")
        for o in report.offending:
            offenders.add_row(o.check, o.sample, f"{o.residual:.3e}")
        console.print(offenders)
    if report.skipped:
        console.print(f"[yellow]{len(report.skipped)} samples skipped[/yellow]")

    status = "[bold green]PASS[/bold green]" if report.passed else "[bold red]FAIL[/bold red]"
    console.print(
        Panel(
            f"{status}  samples={report.sample_count}  max residual={report.max_residual:.3e}"
            + (f"  seed={report.seed}" if report.seed is not None else ""),
            title=report.theorem,
            box=ROUNDED,
        )
    )


def scan_summary(records: Iterable[ScanRecord]) -> Table:
    counts = {}
    for record in records:
        counts[record.status] = counts.get(record.status, 0) + 1
    table = Table(title="Scan summary", box=ROUNDED)
    table.add_column("status")
    table.add_column("rows", justify="right")
    for status, count in sorted(counts.items()):
        table.add_row(status, str(count))
    return table
