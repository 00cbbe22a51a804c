"""Measurement sweeps, special-case verification, and CSV/SVG output."""
from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SpecError, SweepIOError
from .linalg import random_unitary
from .measurement import CanonicalParams, apply_local_unitary, build_basis, special_basis
from .search import DELTA_TOL, DESK_DETECTOR_SPEC, GridSpec, candidate_chunks, maximize_delta

CSV_COLUMNS = ("a", "b", "c", "d", "u", "v", "x", "y",
               "entropy_bound", "best_CL", "delta", "positive", "evaluations")


@dataclass(frozen=True)
class SweepRecord:
    measurement_params: CanonicalParams
    entropy_bound: float
    best_CL: float
    delta: float
    positive: bool
    evaluations: int

    def row(self) -> list[str]:
        vals = [repr(float(t)) for t in self.measurement_params.as_array()]
        vals += [repr(self.entropy_bound), repr(self.best_CL), repr(self.delta),
                 "true" if self.positive else "false", str(self.evaluations)]
        return vals


def evaluate_point(params: CanonicalParams, det_spec: GridSpec = DESK_DETECTOR_SPEC) -> SweepRecord:
    result = maximize_delta(build_basis(params), det_spec)
    best = result.best
    return SweepRecord(params, best.entropy_bound, best.lower_bound, best.delta,
                       result.positive, result.evaluations)


def _evaluate_row(args):
    row, det_spec = args
    return evaluate_point(CanonicalParams.from_array(row, wrap=True), det_spec)


def default_workers() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("ENTCOST_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise SpecError(f"ENTCOST_THREADS={cap!r} is not an integer") from None
    return n


def measurement_points(meas_spec: GridSpec):
    for block in candidate_chunks(meas_spec):
        yield from block


def iter_sweep(meas_spec: GridSpec, det_spec: GridSpec, workers: int = 1):
    """Yield one ``SweepRecord`` per measurement point, in grid order."""
    if not isinstance(meas_spec, GridSpec) or not isinstance(det_spec, GridSpec):
        raise SpecError("sweep needs GridSpec objects for measurements and detectors")
    if workers < 1:
        raise SpecError("workers must be at least 1")
    jobs = ((row, det_spec) for row in measurement_points(meas_spec))
    if workers == 1:
        yield from map(_evaluate_row, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() returns results in submission order regardless of scheduling
        yield from pool.map(_evaluate_row, jobs, chunksize=4)


def _open_for_write(path):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="")
    except OSError as exc:
        raise SweepIOError(f"cannot write {path}: {exc}") from exc


def run_sweep(meas_spec: GridSpec, det_spec: GridSpec = DESK_DETECTOR_SPEC, workers: int | None = None,
              out="sweep.csv", svg=None) -> dict:
    """Search detectors for every measurement point and stream records to ``out``.

    Returns ``{"n_points", "n_strict", "max_delta", "runtime"}``.
    """
    workers = default_workers() if workers is None else workers
    t0 = time.perf_counter()
    records = []
    fh = _open_for_write(out)
    try:
        with fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for rec in iter_sweep(meas_spec, det_spec, workers):
                writer.writerow(rec.row())
                records.append(rec)
    except OSError as exc:
        raise SweepIOError(f"failed writing {out}: {exc}") from exc
    if svg is not None and records:
        emit_scatter_svg(records, svg)
    return {
        "n_points": len(records),
        "n_strict": sum(r.positive for r in records),
        "max_delta": max((r.delta for r in records), default=float("nan")),
        "runtime": time.perf_counter() - t0,
    }


def emit_csv(records, path) -> None:
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    fh = _open_for_write(path)
    try:
        with fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            writer.writerows(r.row() for r in records)
    except OSError as exc:
        raise SweepIOError(f"failed writing {path}: {exc}") from exc


def read_csv(path) -> list[SweepRecord]:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
                raise SpecError(f"{path} does not have the sweep CSV header")
            return [
                SweepRecord(
                    CanonicalParams.from_array([float(row[k]) for k in CSV_COLUMNS[:8]]),
                    float(row["entropy_bound"]), float(row["best_CL"]), float(row["delta"]),
                    row["positive"] == "true", int(row["evaluations"]),
                )
                for row in reader
            ]
    except OSError as exc:
        raise SweepIOError(f"cannot read {path}: {exc}") from exc


# -- SVG scatter ------------------------------------------------------------------

WIDTH, HEIGHT = 800, 600
MARGIN = dict(left=80, right=30, top=30, bottom=70)


def scatter_svg(records) -> str:
    """Production bound against entropy bound, with the line y = x."""
    records = list(records)
    if not records:
        raise ValueError("no records to plot")
    ymax = 1.05 * max(max(r.best_CL for r in records), max(r.entropy_bound for r in records), 1e-12)
    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    y0, y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]

    def sx(v):
        return x0 + (x1 - x0) * v

    def sy(v):
        return y0 + (y1 - y0) * v / ymax

    out = io.StringIO()
    w = out.write
    w('<?xml version="1.0" encoding="UTF-8"?>\n')
    w(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
      f'viewBox="0 0 {WIDTH} {HEIGHT}">\n')
    w(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n')
    w(f'<g id="axes" stroke="black" stroke-width="1">'
      f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>\n')
    w('<g id="ticks" font-family="sans-serif" font-size="12">\n')
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        w(f'<line x1="{sx(t):.2f}" y1="{y0}" x2="{sx(t):.2f}" y2="{y0 + 5}" stroke="black"/>'
          f'<text x="{sx(t):.2f}" y="{y0 + 20}" text-anchor="middle">{t:g}</text>\n')
    for k in range(6):
        t = ymax * k / 5
        w(f'<line x1="{x0 - 5}" y1="{sy(t):.2f}" x2="{x0}" y2="{sy(t):.2f}" stroke="black"/>'
          f'<text x="{x0 - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:.3g}</text>\n')
    w('</g>\n')
    w(f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 20}" text-anchor="middle" font-family="sans-serif" '
      f'font-size="14">entropy bound (ebits)</text>\n')
    w(f'<text x="20" y="{(y0 + y1) / 2}" text-anchor="middle" font-family="sans-serif" font-size="14" '
      f'transform="rotate(-90 20 {(y0 + y1) / 2})">C_L lower bound (ebits)</text>\n')
    top = min(1.0, ymax)
    w(f'<line id="entropy-bound" x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(top):.2f}" y2="{sy(top):.2f}" '
      f'stroke="red" stroke-width="1.5"/>\n')
    w('<g id="points" fill="blue">\n')
    for r in records:
        w(f'<circle cx="{sx(r.entropy_bound):.2f}" cy="{sy(r.best_CL):.2f}" r="2"/>\n')
    w('</g>\n</svg>\n')
    return out.getvalue()


def emit_scatter_svg(records, path) -> None:
    text = scatter_svg(records)
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    except OSError as exc:
        raise SweepIOError(f"cannot write {path}: {exc}") from exc


# -- exceptional cases -------------------------------------------------------------

@dataclass(frozen=True)
class SpecialCaseResult:
    case: str
    image: int  # 0 is the basis itself, 1.. are random local-unitary images
    entropy_bound: float
    best_CL: float
    delta: float
    passed: bool


EXPECTED = {
    "product": dict(entropy_bound=0.0, best_CL=0.0),
    "bell": dict(entropy_bound=1.0, best_CL=1.0),
    "case_iii": dict(entropy_bound=0.5, best_CL=0.5),
}


def verify_special_cases(det_spec: GridSpec = DESK_DETECTOR_SPEC, n_images: int = 5,
                         seed: int = 0) -> list[SpecialCaseResult]:
    """Search each exceptional basis and ``n_images`` random local-unitary
    images of it; a case passes when its gap stays within ``DELTA_TOL`` and
    the bounds hit their known values to 1e-6."""
    rng = np.random.default_rng(seed)
    rows = []
    for name, expected in EXPECTED.items():
        base = special_basis(name)
        bases = [base] + [apply_local_unitary(base, random_unitary(2, rng), random_unitary(2, rng))
                          for _ in range(n_images)]
        for k, basis in enumerate(bases):
            best = maximize_delta(basis, det_spec).best
            ok = (best.delta <= DELTA_TOL
                  and abs(best.entropy_bound - expected["entropy_bound"]) <= 1e-6
                  and abs(best.lower_bound - expected["best_CL"]) <= 1e-6)
            rows.append(SpecialCaseResult(name, k, best.entropy_bound, best.lower_bound, best.delta, ok))
    return rows


def parse_angle(text: str) -> float:
    """Parse ``0.3``, ``pi``, ``pi/8``, ``3pi/4`` or ``3*pi/4``."""
    s = text.strip().lower().replace(" ", "").replace("*", "")
    if "pi" not in s:
        return float(s)
    num, _, den = s.partition("pi")
    num = {"": 1.0, "+": 1.0, "-": -1.0}.get(num) or float(num)
    den = float(den.lstrip("/")) if den else 1.0
    return num * math.pi / den
