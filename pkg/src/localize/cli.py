"""Command line tools for the operator splitting and its state semantics.

Subcommands:
  decompose    split a PSD operator along a subspace (choice of route)
  lambda       localization weight and the two conditional states
  table        joint location/component probability table
  reconstruct  rebuild a positive-definite state from line-weight probes
  mask         blend an inside-supported state with an outside one
  unmask       undo a blend, recovering weight and both states
  bloch        closed-form qubit sweep as CSV
  verify       run randomized self-verification suites

Outputs are byte-deterministic: JSON is emitted with insertion-ordered keys
and 17-significant-digit floats, and all randomness flows through the seed
(flag ``--seed``, else the LOCALIZE_SEED environment variable, else 42).
Exit codes: 0 success, 1 route disagreement or suite failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

import numpy as np

from .decomp import decompose, decompose_via_inverse, decompose_via_projection
from .errors import AgreementError, DomainError, LocalizationError
from .fileio import (
    dumps_json,
    format_float,
    load_matrix,
    load_probes,
    load_subspace,
    matrix_payload,
    vector_payload,
)
from .linalg import DEFAULT_TOL, ToleranceConfig
from .quantum import (
    mask,
    probability_table,
    qubit_weights,
    reconstruct,
    state_decompose,
    unmask,
)
from .verify import SUITES, run_suite

__all__ = ["build_parser", "main"]

_DEFAULT_SEED = 42


def _tolerances(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        rank_tol=args.tol_rank,
        psd_tol=args.tol_psd,
        agree_tol=args.tol_agree,
    )


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("LOCALIZE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"LOCALIZE_SEED must be an integer, got {env!r}") from exc
    return _DEFAULT_SEED


def _write(args: argparse.Namespace, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)


def _maybe_matrix(arr: np.ndarray | None):
    return None if arr is None else matrix_payload(arr)


def _cmd_decompose(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    operator = load_matrix(args.operator)
    subspace = load_subspace(args.subspace, tol)
    routes = {
        "schur": decompose,
        "projection": decompose_via_projection,
        "inverse": decompose_via_inverse,
    }
    residuals: dict[str, float] = {}
    if args.route == "all":
        dec = decompose(operator, subspace, tol)
        scale = max(1.0, float(np.linalg.norm(operator)))
        for name, other in (
            ("schur_vs_projection", decompose_via_projection),
            ("schur_vs_inverse", decompose_via_inverse),
        ):
            gap = float(np.linalg.norm(dec.inside - other(operator, subspace, tol).inside))
            residuals[name] = gap / scale
        worst = max(residuals.values())
        if worst > tol.agree_tol:
            raise AgreementError(
                f"routes disagree by relative residual {worst:.3e} "
                f"(allowed {tol.agree_tol:.3e})"
            )
    else:
        dec = routes[args.route](operator, subspace, tol)
    payload = {
        "lambda": dec.inside_trace,
        "B": matrix_payload(dec.inside),
        "C": matrix_payload(dec.outside),
        "ran_B_basis": [vector_payload(col) for col in dec.inside_range.basis.T],
        "ran_C_basis": [vector_payload(col) for col in dec.outside_range.basis.T],
        "route_agreement_residuals": residuals,
    }
    _write(args, dumps_json(payload))
    return 0


def _cmd_lambda(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    state = load_matrix(args.state)
    subspace = load_subspace(args.subspace, tol)
    split = state_decompose(state, subspace, tol)
    payload = {
        "lambda": split.weight,
        "inside_state": _maybe_matrix(split.inside),
        "outside_state": _maybe_matrix(split.outside),
    }
    _write(args, dumps_json(payload))
    return 0


def _table_text(table) -> str:
    cells = [
        ("inside", table.joint_v_inside, table.joint_perp_inside),
        ("outside", table.joint_v_outside, table.joint_perp_outside),
    ]
    lines = [f"{'component':<12}{'V':>16}{'V_perp':>16}{'row_sum':>16}"]
    for name, in_v, in_perp in cells:
        lines.append(f"{name:<12}{in_v:>16.9f}{in_perp:>16.9f}{in_v + in_perp:>16.9f}")
    lines.append(
        f"{'column_sum':<12}{table.overlap:>16.9f}{1.0 - table.overlap:>16.9f}{1.0:>16.9f}"
    )
    lines.append("")
    lines.append(
        f"lambda={table.weight:.9f} lambda_perp={table.weight_perp:.9f} "
        f"overlap={table.overlap:.9f} deficiency={table.deficiency:.9f}"
    )
    return "\n".join(lines) + "\n"


def _cmd_table(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    state = load_matrix(args.state)
    subspace = load_subspace(args.subspace, tol)
    table = probability_table(state, subspace, tol)
    if args.format == "text":
        _write(args, _table_text(table))
        return 0
    payload = {
        "lambda": table.weight,
        "lambda_perp": table.weight_perp,
        "overlap": table.overlap,
        "deficiency": table.deficiency,
        "joints": {
            "v_inside": table.joint_v_inside,
            "perp_inside": table.joint_perp_inside,
            "v_outside": table.joint_v_outside,
            "perp_outside": table.joint_perp_outside,
        },
    }
    _write(args, dumps_json(payload))
    return 0


def _cmd_reconstruct(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    _, probes = load_probes(args.probes)
    rebuilt = reconstruct(probes, tol)
    # Emitted in the matrix file format so the output feeds other commands.
    _write(args, dumps_json(matrix_payload(rebuilt)))
    return 0


def _cmd_mask(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    inside = load_matrix(args.inside)
    outside = load_matrix(args.outside)
    subspace = load_subspace(args.subspace, tol)
    blended = mask(inside, outside, args.lam, subspace, tol)
    # Emitted in the matrix file format so unmask can read it back.
    _write(args, dumps_json(matrix_payload(blended)))
    return 0


def _cmd_unmask(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    state = load_matrix(args.state)
    subspace = load_subspace(args.subspace, tol)
    weight, inside, outside = unmask(state, subspace, tol)
    payload = {
        "lambda": weight,
        "inside_state": _maybe_matrix(inside),
        "outside_state": _maybe_matrix(outside),
    }
    _write(args, dumps_json(payload))
    return 0


_PI_FORM = re.compile(r"^(?:(\d+(?:\.\d+)?)\*?)?pi(?:/(\d+(?:\.\d+)?))?$")


def _parse_angle(text: str) -> float:
    """Angles as plain floats or pi expressions: 'pi', 'pi/8', '3pi/4'."""
    token = text.strip().lower().replace(" ", "")
    match = _PI_FORM.match(token)
    if match:
        factor = float(match.group(1)) if match.group(1) else 1.0
        divisor = float(match.group(2)) if match.group(2) else 1.0
        if divisor == 0.0:
            raise DomainError(f"zero divisor in angle {text!r}")
        return factor * np.pi / divisor
    try:
        return float(token)
    except ValueError as exc:
        raise DomainError(f"cannot parse angle {text!r}") from exc


def _parse_list(text: str, parse) -> list[float]:
    items = [piece for piece in text.split(",") if piece.strip()]
    if not items:
        raise DomainError(f"empty value list {text!r}")
    return [parse(piece) for piece in items]


def _cmd_bloch(args: argparse.Namespace) -> int:
    radii = _parse_list(args.radius, float)
    angles = _parse_list(args.theta, _parse_angle)
    rows = ["a,theta,lambda,lambda_perp,deficiency,dx,dy,dz"]
    for radius in radii:
        for angle in angles:
            closed = qubit_weights(radius, angle)
            if closed.leftover_bloch is None:
                dx = dy = dz = float("nan")
            else:
                dx, dy, dz = closed.leftover_bloch
            rows.append(
                ",".join(
                    format_float(value)
                    for value in (
                        radius,
                        angle,
                        closed.weight,
                        closed.weight_perp,
                        closed.deficiency,
                        dx,
                        dy,
                        dz,
                    )
                )
            )
    _write(args, "\n".join(rows) + "\n")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    seed = _resolve_seed(args)
    names = [args.suite] if args.suite else list(SUITES)
    reports = [run_suite(name, args.trials, seed, tol) for name in names]
    lines: list[str] = []
    for report in reports:
        lines.extend(report.summary_lines())
    all_passed = all(report.passed for report in reports)
    lines.append(f"overall: {'PASS' if all_passed else 'FAIL'}")
    summary = "\n".join(lines) + "\n"
    if args.out is not None:
        payload = {
            "passed": all_passed,
            "seed": seed,
            "reports": [report.payload() for report in reports],
        }
        Path(args.out).write_text(dumps_json(payload))
        sys.stdout.write(summary)
    else:
        sys.stdout.write(summary)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localize",
        description="Split PSD operators along subspaces and inspect the state semantics.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=DEFAULT_TOL.rank_tol,
                        help="relative rank cutoff (default %(default)g)")
    common.add_argument("--tol-psd", type=float, default=DEFAULT_TOL.psd_tol,
                        help="relative negativity allowance (default %(default)g)")
    common.add_argument("--tol-agree", type=float, default=DEFAULT_TOL.agree_tol,
                        help="relative route agreement bound (default %(default)g)")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: LOCALIZE_SEED or 42)")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common],
                       help="split a PSD operator along a subspace")
    p.add_argument("--operator", required=True, help="operator matrix file (JSON)")
    p.add_argument("--subspace", required=True, help="subspace file (JSON)")
    p.add_argument("--route", choices=("schur", "projection", "inverse", "all"),
                   default="schur", help="construction route; 'all' cross-checks")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("lambda", parents=[common],
                       help="localization weight and conditional states")
    p.add_argument("--state", required=True, help="density matrix file (JSON)")
    p.add_argument("--subspace", required=True, help="subspace file (JSON)")
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("table", parents=[common],
                       help="joint location/component probability table")
    p.add_argument("--state", required=True, help="density matrix file (JSON)")
    p.add_argument("--subspace", required=True, help="subspace file (JSON)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("reconstruct", parents=[common],
                       help="rebuild a positive-definite state from probes")
    p.add_argument("--probes", required=True, help="probe file (JSON)")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("mask", parents=[common],
                       help="blend an inside-supported state with an outside one")
    p.add_argument("--inside", required=True, help="state supported inside the subspace")
    p.add_argument("--outside", required=True, help="state supported away from the subspace")
    p.add_argument("--lam", required=True, type=float, help="blend weight in (0, 1)")
    p.add_argument("--subspace", required=True, help="subspace file (JSON)")
    p.set_defaults(func=_cmd_mask)

    p = sub.add_parser("unmask", parents=[common], help="undo a blend")
    p.add_argument("--state", required=True, help="blended density matrix file (JSON)")
    p.add_argument("--subspace", required=True, help="subspace file (JSON)")
    p.set_defaults(func=_cmd_unmask)

    p = sub.add_parser("bloch", parents=[common],
                       help="closed-form qubit sweep as CSV")
    p.add_argument("--radius", default="0.1,0.3,0.5,0.7,0.9",
                   help="comma-separated Bloch radii in [0, 1)")
    p.add_argument("--theta", default="pi/8,pi/4,3pi/8,pi/2,5pi/8,3pi/4,7pi/8",
                   help="comma-separated angles; pi expressions allowed")
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("verify", parents=[common],
                       help="run randomized self-verification suites")
    p.add_argument("--suite", choices=sorted(SUITES), default=None,
                   help="run one suite (default: all)")
    p.add_argument("--trials", type=int, default=None,
                   help="trial count override (default: per-suite)")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AgreementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LocalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
