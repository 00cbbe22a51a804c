"""Command-line interface: ``entcost {sweep,verify,point,plot}``.

Exit codes: 0 success, 1 invalid configuration, 2 I/O failure, 3 failed
special-case verification.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import EntCostError, SpecError, SweepIOError
from .measurement import CanonicalParams, build_basis
from .search import DESK_DETECTOR_SPEC, DESK_MEASUREMENT_SPEC, GridSpec, maximize_delta
from .sweep import default_workers, emit_scatter_svg, parse_angle, read_csv, run_sweep, verify_special_cases

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

SPEC_FIELDS = {
    "angle_step": parse_angle,
    "phase_step": parse_angle,
    "x_step": parse_angle,
    "mode": str,
    "n_samples": int,
    "seed": int,
    "refine_iters": int,
    "refine_shrink": float,
}


def read_config(path) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    conf = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise SweepIOError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SpecError(f"{path}:{lineno}: expected key = value")
        conf[key.strip().replace("-", "_")] = value.strip()
    return conf


def _spec_from(prefix: str, base: GridSpec, conf: dict, args) -> GridSpec:
    changes = {}
    for name, conv in SPEC_FIELDS.items():
        key = f"{prefix}_{name}"
        raw = getattr(args, key, None)
        if raw is None:
            raw = conf.get(key)
        if raw is None and name == "seed":
            raw = getattr(args, "seed", None) or conf.get("seed")
        if raw is not None:
            try:
                changes[name] = conv(raw) if isinstance(raw, str) else raw
            except ValueError as exc:
                raise SpecError(f"bad value for {key}: {raw!r}") from exc
    return replace(base, **changes)


def _add_spec_args(p, prefix, what):
    g = p.add_argument_group(f"{what} grid")
    for name in SPEC_FIELDS:
        flag = f"--{prefix}-{name.replace('_', '-')}"
        if name == "mode":
            g.add_argument(flag, dest=f"{prefix}_{name}", choices=("full_grid", "random", "grid_then_refine"))
        else:
            g.add_argument(flag, dest=f"{prefix}_{name}", metavar=name.upper())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are configuration errors, not I/O failures (argparse uses 2)
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entcost", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sweep measurement parameters and search detectors at each point")
    sw.add_argument("--config", help="key = value file; command-line flags take precedence")
    sw.add_argument("--workers", type=int)
    sw.add_argument("--seed", help="seed for random modes (measurement and detector)")
    sw.add_argument("--out", help="CSV output path (default sweep.csv)")
    sw.add_argument("--svg", help="optional SVG scatter output path")
    _add_spec_args(sw, "meas", "measurement")
    _add_spec_args(sw, "det", "detector")

    ve = sub.add_parser("verify", help="check the exceptional bases and their local-unitary images")
    ve.add_argument("--config")
    ve.add_argument("--seed", help="seed for the random local unitaries")
    ve.add_argument("--images", type=int, default=5)
    _add_spec_args(ve, "det", "detector")

    pt = sub.add_parser("point", help="bound a single measurement given its 8 canonical parameters")
    pt.add_argument("params", nargs=8, metavar="a b c d u v x y",
                    help="angles/phases; accepts forms like pi/8")
    pt.add_argument("--config")
    _add_spec_args(pt, "det", "detector")

    pl = sub.add_parser("plot", help="render a sweep CSV as an SVG scatter")
    pl.add_argument("csv")
    pl.add_argument("svg")
    return parser


def _cmd_sweep(args, conf):
    meas = _spec_from("meas", DESK_MEASUREMENT_SPEC, conf, args)
    det = _spec_from("det", DESK_DETECTOR_SPEC, conf, args)
    workers = args.workers if args.workers is not None else int(conf.get("workers", default_workers()))
    out = args.out or conf.get("out", "sweep.csv")
    svg = args.svg or conf.get("svg")
    summary = run_sweep(meas, det, workers=workers, out=out, svg=svg)
    for k, v in summary.items():
        print(f"{k}={v}")
    return EXIT_OK


def _cmd_verify(args, conf):
    det = _spec_from("det", DESK_DETECTOR_SPEC, conf, args)
    seed = int(args.seed or conf.get("seed", 0))
    rows = verify_special_cases(det, n_images=args.images, seed=seed)
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.case:9s} image={r.image} entropy_bound={r.entropy_bound:.9f} "
              f"best_CL={r.best_CL:.9f} delta={r.delta:.3e}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VERIFY


def _cmd_point(args, conf):
    det = _spec_from("det", DESK_DETECTOR_SPEC, conf, args)
    try:
        params = CanonicalParams.from_array([parse_angle(t) for t in args.params])
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    result = maximize_delta(build_basis(params), det)
    b = result.best
    print(f"entropy_bound={b.entropy_bound!r}")
    print(f"avg_detector_entanglement={b.avg_detector_entanglement!r}")
    print(f"cut_entanglement={b.cut_entanglement!r}")
    print(f"best_CL={b.lower_bound!r}")
    print(f"delta={b.delta!r}")
    print(f"positive={str(result.positive).lower()}")
    print(f"evaluations={result.evaluations}")
    if b.detector_params is not None:
        print("detector_params=" + " ".join(repr(float(t)) for t in b.detector_params.as_array()))
    print("detector_perm=" + " ".join(str(k) for k in b.detector_perm))
    return EXIT_OK


def _cmd_plot(args, conf):
    emit_scatter_svg(read_csv(args.csv), args.svg)
    return EXIT_OK


COMMANDS = {"sweep": _cmd_sweep, "verify": _cmd_verify, "point": _cmd_point, "plot": _cmd_plot}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        conf = read_config(args.config) if getattr(args, "config", None) else {}
        return COMMANDS[args.command](args, conf)
    except SweepIOError as exc:
        print(f"entcost: {exc}", file=sys.stderr)
        return EXIT_IO
    except (EntCostError, ValueError) as exc:
        print(f"entcost: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
