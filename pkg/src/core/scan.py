"""
Grid scans of surgery space.

Each grid point is solved independently by a pool of worker threads; rows
are stored by grid index and written in row-major order, so the output does
not depend on the thread count.
"""

import csv
import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from queue import Empty, Queue
from typing import Callable, Dict, List, Optional, Tuple, Union

from ..errors import (
    DegenerateJacobian,
    DegenerateShape,
    NoConvergence,
    NotPrimitive,
    SingularSystem,
    StepCollapse,
    SurgerySpaceError,
)
from ..models.holonomy import Side
from ..models.reports import ComplexValue, ScanRecord
from ..models.settings import DEFAULT_SETTINGS, SolverSettings
from ..models.shapes import ParamPoint
from ..models.surgery import FillingCoeffs, SolveResult
from . import config
from .shapes import classify_orientation, shapes_from_params
from .surgery import core_geodesic, solve_filling
from .volume import volume

logger = logging.getLogger(__name__)

SCAN_FIELDS = [
    "p1", "q1", "p2", "q2", "re_alpha", "im_alpha", "re_beta", "im_beta",
    "volume", "core_len_alpha", "core_len_beta", "residual", "orient", "status",
]

STATUS_OK = "ok"
STATUS_NO_CONVERGE = "no-converge"
STATUS_DEGENERATE = "degenerate"

SCAN_SIDES = ("alpha", "beta", "both")


def parse_range(text: str) -> List[float]:
    """
    Parse ``start:stop:step`` into the inclusive list of grid values.

    Raises:
        ValueError: On malformed input, non-positive step or stop < start
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be start:stop:step, got {text!r}")
    start, stop, step = (float(x) for x in parts)
    if step <= 0:
        raise ValueError(f"range step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"range stop {stop} is below start {start}")
    count = int(round((stop - start) / step))
    return [start + k * step for k in range(count + 1)]


@dataclass
class ScanConfig:
    """Grid and execution parameters of one scan."""

    side: str = "beta"
    p_values: List[float] = field(default_factory=list)
    q_values: List[float] = field(default_factory=list)
    threads: int = 1

    def __post_init__(self):
        if self.side not in SCAN_SIDES:
            raise ValueError(f"side must be one of {SCAN_SIDES}, got {self.side!r}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    @property
    def grid(self) -> List[Tuple[float, float]]:
        """Grid points in row-major order (p outer, q inner)."""
        return [(p, q) for p in self.p_values for q in self.q_values]


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else "{:.17g}".format(value)


def record_row(record: ScanRecord) -> Dict[str, str]:
    """Flatten a ScanRecord into CSV fields."""
    alpha, beta = record.alpha, record.beta
    return {
        "p1": _fmt(record.p1),
        "q1": _fmt(record.q1),
        "p2": _fmt(record.p2),
        "q2": _fmt(record.q2),
        "re_alpha": _fmt(alpha.re if alpha else None),
        "im_alpha": _fmt(alpha.im if alpha else None),
        "re_beta": _fmt(beta.re if beta else None),
        "im_beta": _fmt(beta.im if beta else None),
        "volume": _fmt(record.volume),
        "core_len_alpha": _fmt(record.core_len_alpha),
        "core_len_beta": _fmt(record.core_len_beta),
        "residual": _fmt(record.residual),
        "orient": record.orient,
        "status": record.status,
    }


def _core_length(result: SolveResult) -> Optional[float]:
    if not result.filling.is_integral:
        return None
    try:
        return core_geodesic(result.filling, result.log_hol).length
    except NotPrimitive:
        return None


class ScanRunner:
    """Solves every grid point of a ScanConfig."""

    def __init__(self, scan: ScanConfig, settings: SolverSettings = DEFAULT_SETTINGS):
        self.scan = scan
        self.settings = settings
        self._lock = threading.Lock()
        self._done = 0

    def evaluate(self, p: float, q: float) -> ScanRecord:
        """Solve one grid point; failures become a row status, never an exception."""
        filled = {"alpha": self.scan.side in ("alpha", "both"), "beta": self.scan.side in ("beta", "both")}
        coords = {
            "p1": p if filled["alpha"] else None,
            "q1": q if filled["alpha"] else None,
            "p2": p if filled["beta"] else None,
            "q2": q if filled["beta"] else None,
        }
        try:
            f = FillingCoeffs(p, q)
            complete = FillingCoeffs.complete_structure()
            alpha = solve_filling(f if filled["alpha"] else complete, Side.ALPHA, settings=self.settings)
            beta = solve_filling(f if filled["beta"] else complete, Side.BETA, settings=self.settings)
            s = shapes_from_params(ParamPoint(alpha.param, beta.param), self.settings.degeneracy_eps)
        except (NoConvergence, DegenerateJacobian, StepCollapse) as e:
            logger.debug("Scan point (%g, %g) did not converge: %s", p, q, e)
            return ScanRecord(**coords, status=STATUS_NO_CONVERGE)
        except (DegenerateShape, SingularSystem, ValueError) as e:
            logger.debug("Scan point (%g, %g) is degenerate: %s", p, q, e)
            return ScanRecord(**coords, status=STATUS_DEGENERATE)
        except SurgerySpaceError as e:
            logger.warning("Scan point (%g, %g) failed with %s: %s", p, q, type(e).__name__, e)
            return ScanRecord(**coords, status=STATUS_DEGENERATE)

        return ScanRecord(
            **coords,
            alpha=ComplexValue.of(alpha.param),
            beta=ComplexValue.of(beta.param),
            volume=volume(s),
            core_len_alpha=_core_length(alpha) if filled["alpha"] else None,
            core_len_beta=_core_length(beta) if filled["beta"] else None,
            residual=max(alpha.residual, beta.residual),
            orient=classify_orientation(s, self.settings.flat_eps).as_string(),
            status=STATUS_OK,
        )

    def run(self, progress_callback: Callable[[int, int, str], None] = None) -> List[ScanRecord]:
        """
        Evaluate the grid with the configured number of worker threads.

        Args:
            progress_callback: Optional callback(current, total, message)

        Returns:
            One record per grid point in row-major order
        """
        grid = self.scan.grid
        total = len(grid)
        results: List[Optional[ScanRecord]] = [None] * total
        self._done = 0

        work_queue = Queue()
        for idx in range(total):
            work_queue.put(idx)

        def worker():
            while True:
                try:
                    idx = work_queue.get_nowait()
                except Empty:
                    break  # Queue is empty
                p, q = grid[idx]
                record = self.evaluate(p, q)
                with self._lock:
                    results[idx] = record
                    self._done += 1
                    done = self._done
                if progress_callback:
                    progress_callback(done, total, f"[{record.status}] ({p:g}, {q:g})")

        threads = []
        for _ in range(min(self.scan.threads, max(total, 1))):
            t = threading.Thread(target=worker, daemon=True)
            t.start()
            threads.append(t)
        for t in threads:
            t.join()

        counts: Dict[str, int] = {}
        for record in results:
            counts[record.status] = counts.get(record.status, 0) + 1
        logger.info("Scanned %d points on the %s side: %s", total, self.scan.side, counts)
        return results


def write_scan_csv(records: List[ScanRecord], path: Union[str, Path, None] = None) -> Path:
    """Write scan rows with the fixed header and 17-significant-digit floats."""
    if path is None:
        config.ensure_directories()
        path = config.DEFAULT_SCAN_CSV
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=SCAN_FIELDS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record_row(record))
    logger.info("Wrote %d scan rows to %s", len(records), path)
    return path


def run_scan(
    scan: ScanConfig,
    path: Union[str, Path, None] = None,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Tuple[List[ScanRecord], Path]:
    """Evaluate a grid and write it to CSV."""
    records = ScanRunner(scan, settings).run()
    return records, write_scan_csv(records, path)
