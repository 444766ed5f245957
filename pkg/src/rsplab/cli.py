"""Command-line driver: ``rsplab <subcommand> ...``.

Every subcommand writes one JSON report. Exit status is 0 when all checks
pass, 1 when any fails, and 2 on usage errors (nothing is written then).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import acceptance, algebras, frames, protocols
from .errors import RSPError
from .frames import FrameFamily
from .linalg import CHECK_TOL, EXACT_TOL, RandomSource, StateVector
from .report import Check, Report

SEED_ENV = "RSPLAB_SEED"
FIDELITY_TOL = 1e-10


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _number_list(text: str) -> list[complex]:
    if text is None or not text.strip():
        return []
    try:
        return [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed numeric list {text!r}") from None


def _real_list(text: str, what: str) -> list[float]:
    values = _number_list(text)
    if any(v.imag != 0 for v in values):
        raise UsageError(f"{what} must be real numbers")
    return [v.real for v in values]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")
    common.add_argument("--output", "-o", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--exact-tol", type=float, default=EXACT_TOL, help="tolerance on exact constructions")
    common.add_argument("--fidelity-tol", type=float, default=FIDELITY_TOL, help="allowed 1 - fidelity")

    parser = argparse.ArgumentParser(prog="rsplab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-family", parents=[common], help="check a frame family")
    p.add_argument("--dim", type=int, choices=(4, 8), required=True)
    p.add_argument("--file", type=Path, default=None, help="external family JSON instead of the built-in table")

    p = sub.add_parser("build-family", parents=[common], help="build a frame from an algebra")
    p.add_argument("--algebra", choices=sorted(algebras.ALGEBRA_DIMS), required=True)

    p = sub.add_parser("dump-table", parents=[common], help="emit a signed multiplication table")
    p.add_argument("--algebra", choices=sorted(algebras.ALGEBRA_DIMS), required=True)

    p = sub.add_parser("demo-minimum", parents=[common], help="one run of the real-coefficient scheme")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--target", required=True, help="comma-separated amplitudes, normalized after parsing")
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("demo-equatorial", parents=[common], help="one run of the equal-magnitude scheme")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--thetas", default="", help="theta_1..theta_{n-1} in radians; theta_0 is 0")
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("scan", parents=[common], help="tabulate realizability for n = 1..M")
    p.add_argument("--max-dim", type=int, required=True)

    sub.add_parser("check-all", parents=[common], help="run every acceptance criterion")
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("exact_tol", "fidelity_tol")}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in cfg.items()}


def _tolerances(args) -> dict:
    if args.command == "check-all":
        # acceptance tolerances are pinned, overrides do not apply
        return {"check": CHECK_TOL, "exact": acceptance.EXACT_TOL, "fidelity": acceptance.FIDELITY_TOL}
    return {"check": CHECK_TOL, "exact": args.exact_tol, "fidelity": args.fidelity_tol}


def _validate(args) -> None:
    if args.seed is None:
        args.seed = _default_seed()
    if not 0 <= args.seed < 2**64:
        raise UsageError("seed must fit in an unsigned 64-bit integer")
    if getattr(args, "trials", 1) < 1:
        raise UsageError("--trials must be at least 1")
    if getattr(args, "dim", 1) < 1:
        raise UsageError("--dim must be at least 1")
    if getattr(args, "max_dim", 1) < 1:
        raise UsageError("--max-dim must be at least 1")


def _frame_checks(report: frames.FrameReport, prefix: str) -> list[Check]:
    return [Check(f"{prefix}:{c.name}", c.passed, c.max_residual) for c in report.conditions]


def cmd_verify_family(args, rep: Report) -> None:
    if args.file is not None:
        try:
            family = FrameFamily.from_dict(json.loads(args.file.read_text()))
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"cannot read family from {args.file}: {exc}") from None
        if family.dim != args.dim:
            raise UsageError(f"--dim {args.dim} but {args.file} holds a {family.dim}-dimensional family")
    else:
        family = frames.reference_family(args.dim)
    rep.checks += _frame_checks(frames.verify_frame_family(family, args.exact_tol), family.label or "family")
    rep.data["family"] = family.to_dict()


def cmd_build_family(args, rep: Report) -> None:
    table = algebras.standard_table(args.algebra)
    family = frames.build_frame_family(table)
    rep.checks += _frame_checks(frames.verify_frame_family(family, args.exact_tol), args.algebra)
    rep.data["family"] = family.to_dict()
    if family.dim in (4, 8):
        rec = frames.reconcile_families(family, frames.reference_family(family.dim))
        documented = all(m.exact or m.mismatched_entries for m in rec.matches)
        rep.checks.append(
            Check(
                "reconciliation",
                documented,
                max(m.max_residual for m in rec.matches),
                "exact" if rec.exact else "mismatches recorded per matrix",
            )
        )
        rep.data["reconciliation"] = rec.to_dict()


def cmd_dump_table(args, rep: Report) -> None:
    table = algebras.standard_table(args.algebra)
    try:
        algebras.check_table_laws(table)
        rep.checks.append(Check("division-algebra laws", True))
    except RSPError as exc:
        rep.checks.append(Check("division-algebra laws", False, detail=str(exc)))
    rep.data["table"] = {"algebra": table.name, "dim": table.dim, "entries": table.entries()}


def _transcript_checks(ts: list[protocols.ProtocolTranscript], args) -> list[Check]:
    worst = max(1 - t.fidelity for t in ts)
    return [Check("fidelity", worst <= args.fidelity_tol, max(worst, 0.0))]


def cmd_demo_minimum(args, rep: Report) -> None:
    values = _number_list(args.target)
    if len(values) != args.dim:
        raise UsageError(f"--target has {len(values)} entries, --dim is {args.dim}")
    if any(v.imag != 0 for v in values):
        raise UsageError("the minimum scheme takes real amplitudes only")
    verdict = frames.realizability_verdict(args.dim)
    if not verdict.realizable:
        raise UsageError(f"dimension gate: n={args.dim} is not in {{1, 2, 4, 8}}. {verdict.obstruction_note}")
    try:
        target = StateVector.from_raw([v.real for v in values])
    except RSPError as exc:
        raise UsageError(str(exc)) from None
    family = frames.standard_family(args.dim)
    ts = [protocols.run_minimum_rsp(target, family, rng) for rng in RandomSource(args.seed).spawn(args.trials)]
    rep.transcripts = [t.to_dict() for t in ts]
    rep.checks += _transcript_checks(ts, args)


def cmd_demo_equatorial(args, rep: Report) -> None:
    rest = _real_list(args.thetas, "--thetas")
    if not rest and args.dim > 1 and not args.thetas.strip():
        rest = [0.0] * (args.dim - 1)
    if len(rest) != args.dim - 1:
        raise UsageError(f"--thetas needs {args.dim - 1} values (theta_1..theta_{{n-1}}), got {len(rest)}")
    t = protocols.EqualMagnitudeTarget.from_relative_phases(rest)
    ts = [protocols.run_equatorial_rsp(t, rng) for rng in RandomSource(args.seed).spawn(args.trials)]
    rep.transcripts = [tr.to_dict() for tr in ts]
    rep.checks += _transcript_checks(ts, args)
    r = protocols.rotation_identity_residual(t)
    rep.checks.append(Check("rotation identity", r <= args.exact_tol, r))


def cmd_scan(args, rep: Report) -> None:
    rows = []
    wrong = []
    for n in range(1, args.max_dim + 1):
        v = frames.realizability_verdict(n)
        rows.append({"dim": n, "realizable": v.realizable, "radon_number": v.radon_number, "note": v.obstruction_note})
        if v.realizable != (n in (1, 2, 4, 8)):
            wrong.append(n)
    rep.data["verdicts"] = rows
    rep.checks.append(Check("verdicts", not wrong, float(len(wrong)), f"wrong at {wrong}" if wrong else ""))


def cmd_check_all(args, rep: Report) -> None:
    rep.checks += acceptance.run_all(args.seed)


COMMANDS = {
    "verify-family": cmd_verify_family,
    "build-family": cmd_build_family,
    "dump-table": cmd_dump_table,
    "demo-minimum": cmd_demo_minimum,
    "demo-equatorial": cmd_demo_equatorial,
    "scan": cmd_scan,
    "check-all": cmd_check_all,
}


def dispatch(args) -> Report:
    """Run one parsed command; raises :class:`UsageError` for bad input."""
    _validate(args)
    rep = Report(command=args.command, config={}, tolerances=_tolerances(args))
    start = time.perf_counter()
    COMMANDS[args.command](args, rep)
    rep.wall_time_s = time.perf_counter() - start
    rep.config = _config(args)
    return rep


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = dispatch(args)
    except UsageError as exc:
        print(f"rsplab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = rep.to_json()
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "check-all":
        for c in rep.checks:
            print(c.line(), file=sys.stderr)
    return 0 if rep.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
