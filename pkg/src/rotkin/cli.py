"""``rotkin`` command line: dead-reckon gyro logs, compare integrators, verify.

Exit codes: 0 success, 1 usage/config error, 2 input-format error,
3 numerical failure (including a failed ``verify``).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from rotkin.core import BODY, WORLD, AngularVelocity, RotationMatrix, validate_rotation
from rotkin.errors import (
    GyroFormatError,
    GyroLogError,
    GyroOrderingError,
    GyroParseError,
    InvalidInputError,
    NotOrthogonalError,
    ImproperRotationError,
    RotkinError,
)
from rotkin.kinematics import RECOVERY_TOL
from rotkin.propagation import GyroSample, IntegratorChoice, propagate
from rotkin.suite import format_report, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_NUMERIC = 3

GYRO_HEADER = ["t", "wx", "wy", "wz"]
TRAJ_HEADER = ["t", "r11", "r12", "r13", "r21", "r22", "r23", "r31", "r32", "r33", "orth_defect"]
COMPARE_ORDER = [
    IntegratorChoice.EULER_RAW,
    IntegratorChoice.EULER_REPROJECT,
    IntegratorChoice.EXPMAP_BODY,
    IntegratorChoice.EXPMAP_WORLD,
]


class UsageError(RotkinError):
    pass


@dataclass
class RunConfig:
    input_path: Path
    integrator: IntegratorChoice | None = IntegratorChoice.EXPMAP_BODY
    initial_attitude: RotationMatrix | None = None
    output_format: str = "csv"
    output_path: Path | None = None
    recovery_tolerance: float = RECOVERY_TOL

    def __post_init__(self):
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"unknown output format {self.output_format!r}")
        if self.initial_attitude is None:
            self.initial_attitude = validate_rotation(np.eye(3), BODY, WORLD)


def _fmt(x: float) -> str:
    # repr is the shortest string that round-trips a float64 (at most 17 digits)
    return repr(float(x))


def ingest_gyro_csv(path) -> list[GyroSample]:
    """Read a ``t,wx,wy,wz`` gyro log (seconds, rad/s, body frame).

    Line numbers in errors are 1-based file lines, header included.
    """
    with open(path, encoding="utf-8-sig", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != GYRO_HEADER:
        got = ",".join(rows[0]) if rows else "<empty file>"
        raise GyroFormatError(f"expected header {','.join(GYRO_HEADER)!r}, got {got!r}", 1)
    samples: list[GyroSample] = []
    prev_t = -math.inf
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise GyroParseError(f"expected 4 fields, got {len(row)}", lineno)
        try:
            t, wx, wy, wz = (float(c) for c in row)
        except ValueError:
            raise GyroParseError(f"non-numeric field in {row!r}", lineno) from None
        if not all(math.isfinite(v) for v in (t, wx, wy, wz)):
            raise GyroParseError(f"non-finite field in {row!r}", lineno)
        if not t > prev_t:
            raise GyroOrderingError(f"t = {t!r} does not increase past {prev_t!r}", lineno)
        prev_t = t
        samples.append(GyroSample(t, AngularVelocity((wx, wy, wz), BODY)))
    if not samples:
        raise GyroFormatError("gyro log has no data rows")
    return samples


def format_trajectory(traj, fmt: str) -> str:
    if fmt == "json":
        records = [
            {"t": float(t), "R": M.tolist(), "orth_defect": float(d)}
            for (t, M), d in zip(traj, traj.orth_defect)
        ]
        return json.dumps(records) + "\n"
    lines = [",".join(TRAJ_HEADER)]
    for (t, M), d in zip(traj, traj.orth_defect):
        lines.append(",".join([_fmt(t), *(_fmt(v) for v in M.reshape(-1)), _fmt(d)]))
    return "\n".join(lines) + "\n"


def read_trajectory_csv(path) -> list[tuple[float, np.ndarray, float]]:
    """Parse a trajectory CSV written by ``deadreckon`` back into matrices."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != TRAJ_HEADER:
        raise GyroFormatError("not a rotkin trajectory file", 1)
    out = []
    for row in rows[1:]:
        vals = [float(c) for c in row]
        out.append((vals[0], np.array(vals[1:10]).reshape(3, 3), vals[10]))
    return out


def _write(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run_deadreckon(config: RunConfig) -> int:
    log = ingest_gyro_csv(config.input_path)
    traj = propagate(config.initial_attitude, log, config.integrator)
    _write(format_trajectory(traj, config.output_format), config.output_path)
    return EXIT_OK


def compare_integrators(config: RunConfig) -> list[dict]:
    log = ingest_gyro_csv(config.input_path)
    trajs = {m: propagate(config.initial_attitude, log, m) for m in COMPARE_ORDER}
    ref = trajs[IntegratorChoice.EXPMAP_BODY].final
    return [
        {
            "integrator": m.name,
            "final_distance": float(np.linalg.norm(trajs[m].final - ref)),
            "max_orth_defect": float(np.max(trajs[m].orth_defect)),
        }
        for m in COMPARE_ORDER
    ]


def run_compare(config: RunConfig) -> int:
    rows = compare_integrators(config)
    if config.output_format == "json":
        text = json.dumps(rows) + "\n"
    else:
        lines = ["integrator,final_distance,max_orth_defect"]
        lines += [f"{r['integrator']},{_fmt(r['final_distance'])},{_fmt(r['max_orth_defect'])}" for r in rows]
        text = "\n".join(lines) + "\n"
    _write(text, config.output_path)
    return EXIT_OK


def run_verify(seed: int, output_path: Path | None = None) -> int:
    results = run_suite(seed)
    _write(format_report(seed, results), output_path)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


def _parse_attitude(text: str, tol: float) -> RotationMatrix:
    parts = text.split(",")
    if len(parts) != 9:
        raise UsageError(f"--init-attitude needs 9 comma-separated reals, got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"--init-attitude has a non-numeric entry: {text!r}") from None
    try:
        return validate_rotation(np.array(vals).reshape(3, 3), BODY, WORLD, tol, tol)
    except (NotOrthogonalError, ImproperRotationError, InvalidInputError) as exc:
        raise UsageError(f"--init-attitude is not a rotation: {exc}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotkin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_flags(p):
        p.add_argument("--input", required=True, type=Path, help="gyro CSV with header t,wx,wy,wz")
        p.add_argument("--init-attitude", help="initial BODY->WORLD rotation, 9 reals row-major")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", type=Path, help="output file (default: stdout)")
        p.add_argument("--tolerance", type=float, default=RECOVERY_TOL,
                       help="validation tolerance for the initial attitude")

    dr = sub.add_parser("deadreckon", help="integrate a gyro log into an attitude trajectory")
    io_flags(dr)
    dr.add_argument("--integrator", default="expmap_body",
                    help="euler_raw | euler_reproject | expmap_body | expmap_world")

    cmp_ = sub.add_parser("compare", help="run all integrators and report drift")
    io_flags(cmp_)

    ver = sub.add_parser("verify", help="run the seeded property suite")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--output", type=Path, help="report file (default: stdout)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return run_verify(args.seed, args.output)
    try:
        if not args.input.is_file():
            raise UsageError(f"input file not found: {args.input}")
        integrator = None
        if args.command == "deadreckon":
            integrator = IntegratorChoice.parse(args.integrator)
        init = _parse_attitude(args.init_attitude, args.tolerance) if args.init_attitude else None
        config = RunConfig(args.input, integrator, init, args.format, args.output, args.tolerance)
    except (UsageError, InvalidInputError) as exc:
        print(f"rotkin: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "deadreckon":
            return run_deadreckon(config)
        return run_compare(config)
    except GyroLogError as exc:
        print(f"rotkin: {args.input}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except RotkinError as exc:
        print(f"rotkin: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

if __name__ == "__main__":
    sys.exit(main())
