"""Command-line front end.

Thin shell over the library: identity verification, map evaluation, state
construction, decomposition export, and trajectory generation.  All numeric
output is written with 17 significant digits so runs can be diffed exactly.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import jsonio
from .bosonic import PhysParams, gate_decomposition, number_state
from .checks import MUTATIONS, VerifyConfig, run_criteria
from .coherent import CoherentSpec, coherent_series, displacement_generator_gateform, trajectory
from .errors import BosonRegError
from .gates import Circuit, CircuitTerm, circuit_to_json_obj, cnot, cnot_transpose, transpose_theta
from .qubit import SiteOp, op_bit_matrix, op_matrix, op_product
from .register import (
    EventuallyPeriodicSequence,
    LogicFunction,
    computational_map,
    continuum_map,
)

__all__ = ["main", "parse_complex"]


class _UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse `a+bi` style input: 0.5, -1+0.25i, 0.3i, i."""
    cleaned = text.strip().replace(" ", "").lower().replace("i", "j")
    try:
        value = complex(cleaned)
    except ValueError:
        raise _UsageError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise _UsageError("complex argument must be finite")
    return value


def _parse_bits(text: str) -> tuple[int, ...]:
    if any(ch not in "01" for ch in text):
        raise _UsageError(f"bit string may contain only 0 and 1, got {text!r}")
    return tuple(int(ch) for ch in text)


def _emit(text: str, out: str | None) -> None:
    data = text if text.endswith("\n") else text + "\n"
    if out is None:
        sys.stdout.write(data)
    else:
        Path(out).write_text(data, encoding="utf-8")


def _check_config(args: argparse.Namespace) -> None:
    if not 2 <= args.rank <= 64:
        raise _UsageError(f"--rank must be in [2, 64], got {args.rank}")
    for name in ("alpha", "beta", "hbar"):
        value = getattr(args, name)
        if not (math.isfinite(value) and value > 0):
            raise _UsageError(f"--{name} must be positive and finite")
    if not (math.isfinite(args.tol) and args.tol >= 0):
        raise _UsageError("--tol must be a non-negative finite real")


def _params(args: argparse.Namespace) -> PhysParams:
    return PhysParams(args.alpha, args.beta, args.hbar)


def _pick_format(args: argparse.Namespace, default: str, allowed: tuple[str, ...]) -> str:
    chosen = args.format or default
    if chosen not in allowed:
        raise _UsageError(
            f"format {chosen!r} is not supported here (allowed: {', '.join(allowed)})"
        )
    return chosen


# --- algebra-check --------------------------------------------------------


def _pair_matrix(op_site0: SiteOp, op_site1: SiteOp) -> np.ndarray:
    return np.kron(op_bit_matrix(op_site1), op_bit_matrix(op_site0))


def _algebra_groups() -> list[tuple[str, float]]:
    ops = list(SiteOp)
    closure = 0.0
    for a in ops:
        for b in ops:
            table = op_matrix(op_product(a, b))
            closure = max(closure, float(np.max(np.abs(table - op_matrix(a) @ op_matrix(b)))))
    assoc = 0
    for a in ops:
        for b in ops:
            ab = op_product(a, b)
            for c in ops:
                if op_product(ab, c) != op_product(a, op_product(b, c)):
                    assoc += 1

    def circuit_matrix(*factors) -> np.ndarray:
        from .gates import circuit_to_matrix

        return circuit_to_matrix(Circuit(2, (CircuitTerm(1, tuple(factors)),)))

    eye = np.eye(4, dtype=complex)
    c = circuit_matrix(cnot(0, 1))
    ct = circuit_matrix(cnot_transpose(0, 1))
    t0 = circuit_matrix(transpose_theta(0, 1, 0.0))
    involutions = max(
        float(np.max(np.abs(c @ c - eye))), float(np.max(np.abs(ct @ ct - eye)))
    )
    construction = max(
        float(np.max(np.abs(t0 - c @ ct @ c))), float(np.max(np.abs(t0 - ct @ c @ ct)))
    )
    pauli = 0.5 * sum(_pair_matrix(op, op) for op in (SiteOp.S0, SiteOp.S1, SiteOp.S2, SiteOp.S3))
    hop = _pair_matrix(SiteOp.A, SiteOp.APLUS) + _pair_matrix(SiteOp.APLUS, SiteOp.A)
    pairs = _pair_matrix(SiteOp.P0, SiteOp.P0) + _pair_matrix(SiteOp.P1, SiteOp.P1)
    twisted = 1j * (
        _pair_matrix(SiteOp.A, SiteOp.APLUS) - _pair_matrix(SiteOp.APLUS, SiteOp.A)
    )
    t_quarter = circuit_matrix(transpose_theta(0, 1, math.pi / 2.0))
    tensor = max(
        float(np.max(np.abs(t0 - pauli))),
        float(np.max(np.abs(hop - (t0 - pairs)))),
        float(np.max(np.abs(twisted - (t_quarter - pairs)))),
    )
    return [
        ("product-closure", closure),
        ("product-associativity", float(assoc)),
        ("gate-involutions", involutions),
        ("transpose-construction", construction),
        ("tensor-identities", tensor),
    ]


def _cmd_algebra_check(args: argparse.Namespace) -> int:
    _check_config(args)
    fmt = _pick_format(args, "text", ("text", "json"))
    groups = _algebra_groups()
    report = [
        {"name": name, "max_deviation": dev, "passed": dev <= args.tol}
        for name, dev in groups
    ]
    passed = all(entry["passed"] for entry in report)
    if fmt == "json":
        _emit(
            jsonio.dumps(
                {
                    "command": "algebra-check",
                    "tol": args.tol,
                    "groups": report,
                    "passed": passed,
                }
            ),
            args.out,
        )
    else:
        lines = [
            f"{'PASS' if entry['passed'] else 'FAIL'} {entry['name']}"
            f" max_deviation={jsonio.fmt_float(entry['max_deviation'])}"
            for entry in report
        ]
        lines.append(
            f"algebra-check: {'PASS' if passed else 'FAIL'}"
            f" ({len(report)} groups, tol={jsonio.fmt_float(args.tol)})"
        )
        _emit("\n".join(lines), args.out)
    return 0 if passed else 1


# --- map ------------------------------------------------------------------


def _cmd_map(args: argparse.Namespace) -> int:
    _check_config(args)
    fmt = _pick_format(args, "text", ("text", "json"))
    bits = _parse_bits(args.bits)
    if args.mode == "computational":
        if args.period is not None:
            raise _UsageError("--period is only meaningful with --mode continuum")
        if not bits:
            raise _UsageError("computational mode needs at least one bit")
        value = computational_map(bits)
        if fmt == "json":
            _emit(
                jsonio.dumps({"command": "map", "mode": "computational", "value": value}),
                args.out,
            )
        else:
            _emit(str(value), args.out)
        return 0
    period = _parse_bits(args.period) if args.period is not None else ()
    seq = EventuallyPeriodicSequence(bits, period)
    value = continuum_map(seq)
    label = seq.classify().value
    if fmt == "json":
        _emit(
            jsonio.dumps(
                {
                    "command": "map",
                    "mode": "continuum",
                    "numerator": value.numerator,
                    "denominator": value.denominator,
                    "decimal": float(value),
                    "classification": label,
                }
            ),
            args.out,
        )
    else:
        _emit(
            f"{value.numerator}/{value.denominator}"
            f" = {jsonio.fmt_float(float(value))} ({label})",
            args.out,
        )
    return 0


# --- state ----------------------------------------------------------------


def _cmd_state(args: argparse.Namespace) -> int:
    _check_config(args)
    _pick_format(args, "json", ("json",))
    params = _params(args)
    if args.kind == "number":
        try:
            n = int(args.value)
        except ValueError:
            raise _UsageError(f"number state needs an integer level, got {args.value!r}") from None
        if not 0 <= n < args.rank:
            raise _UsageError(f"level {n} outside [0, {args.rank - 1}]")
        state = number_state(n, params, args.rank)
        _emit(jsonio.dumps(state.to_json_obj(kind="number", level=n)), args.out)
        return 0
    z = parse_complex(args.value)
    spec = CoherentSpec(z, params, args.rank, allow_truncation_risk=args.allow_truncation_risk)
    built = coherent_series(spec)
    obj = built.state.to_json_obj(
        kind="coherent",
        z={"re": z.real, "im": z.imag},
        tail_mass=built.tail_mass,
    )
    _emit(jsonio.dumps(obj), args.out)
    return 0


# --- decompose ------------------------------------------------------------


def _cmd_decompose(args: argparse.Namespace) -> int:
    _check_config(args)
    _pick_format(args, "json", ("json",))
    params = _params(args)
    if args.kind == "displacement":
        if args.z is None:
            raise _UsageError("decompose displacement requires --z")
        z = parse_complex(args.z)
        spec = CoherentSpec(
            z, params, args.rank, allow_truncation_risk=args.allow_truncation_risk
        )
        pair = displacement_generator_gateform(spec)
        obj = {
            "command": "decompose",
            "kind": "displacement",
            "rank": args.rank,
            "z": {"re": z.real, "im": z.imag},
            "r": spec.r,
            "theta": spec.theta,
            "full": circuit_to_json_obj(pair.full),
            "reduced": circuit_to_json_obj(pair.reduced),
        }
    else:
        if args.z is not None:
            raise _UsageError("--z applies only to decompose displacement")
        pair = gate_decomposition(args.kind, params, args.rank)
        obj = {
            "command": "decompose",
            "kind": args.kind,
            "rank": args.rank,
            "full": circuit_to_json_obj(pair.full),
            "reduced": circuit_to_json_obj(pair.reduced),
        }
    _emit(jsonio.dumps(obj), args.out)
    return 0


# --- evolve ---------------------------------------------------------------


def _cmd_evolve(args: argparse.Namespace) -> int:
    _check_config(args)
    _pick_format(args, "csv", ("csv",))
    if args.steps < 2:
        raise _UsageError(f"--steps must be at least 2, got {args.steps}")
    if not (math.isfinite(args.t0) and math.isfinite(args.t1)) or args.t1 <= args.t0:
        raise _UsageError("need finite times with --t1 greater than --t0")
    z = parse_complex(args.z)
    spec = CoherentSpec(
        z, _params(args), args.rank, allow_truncation_risk=args.allow_truncation_risk
    )
    times = np.linspace(args.t0, args.t1, args.steps)
    _emit(trajectory(spec, times).to_csv(), args.out)
    return 0


# --- verify ---------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    _check_config(args)
    fmt = _pick_format(args, "text", ("text", "json"))
    cfg = VerifyConfig(
        rank=args.rank, alpha=args.alpha, beta=args.beta, hbar=args.hbar, seed=args.seed
    )
    results = run_criteria(cfg, mutation=args.mutate)
    passed = all(r.passed for r in results)
    total = sum(r.seconds for r in results)
    if fmt == "json":
        obj = {
            "command": "verify",
            "mutation": args.mutate,
            "criteria": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "max_deviation": r.max_deviation,
                    "tolerance": r.tolerance,
                    "detail": r.detail,
                    "seconds": r.seconds,
                }
                for r in results
            ],
            "passed": passed,
            "seconds": total,
        }
        _emit(jsonio.dumps(obj), args.out)
    else:
        lines = []
        for r in results:
            lines.append(
                f"{'PASS' if r.passed else 'FAIL'} {r.name}"
                f" max_deviation={jsonio.fmt_float(r.max_deviation)}"
                f" tolerance={jsonio.fmt_float(r.tolerance)}"
                f" ({r.seconds:.2f}s)"
            )
            if not r.passed:
                lines.append(f"     {r.detail}")
        tally = sum(1 for r in results if r.passed)
        lines.append(
            f"verify: {'PASS' if passed else 'FAIL'}"
            f" ({tally}/{len(results)} criteria passed, {total:.2f}s)"
        )
        _emit("\n".join(lines), args.out)
    return 0 if passed else 1


# --- parser ---------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=32, help="register size, 2..64")
    common.add_argument("--alpha", type=float, default=1.0, help="position scale")
    common.add_argument("--beta", type=float, default=1.0, help="momentum scale")
    common.add_argument("--hbar", type=float, default=1.0, help="action quantum")
    common.add_argument(
        "--tol", type=float, default=1e-10,
        help="tolerance for algebra-check identities (verify uses pinned tolerances)",
    )
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(
        prog="bosonreg",
        description="Finite-rank qubit-register model of the quantized oscillator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra-check", parents=[common],
                       help="verify the operator product table and gate identities")
    p.set_defaults(func=_cmd_algebra_check)

    p = sub.add_parser("map", parents=[common],
                       help="evaluate the computational or continuum map of a bit string")
    p.add_argument("bits", help="bit string, site 0 first (may be empty for pure-period input)")
    p.add_argument("--mode", choices=("computational", "continuum"), default="computational")
    p.add_argument("--period", default=None, help="repeating bit block (continuum mode)")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("state", parents=[common],
                       help="construct a number or coherent state and emit its JSON")
    p.add_argument("kind", choices=("number", "coherent"))
    p.add_argument("value", help="level n for number, z as a+bi for coherent")
    p.add_argument("--allow-truncation-risk", action="store_true",
                   help="bypass the |z|^2 <= rank/4 guard")
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("decompose", parents=[common],
                       help="emit a gate decomposition as circuit JSON (full and reduced)")
    p.add_argument("kind", choices=("position", "momentum", "displacement"))
    p.add_argument("--z", default=None, help="displacement argument as a+bi")
    p.add_argument("--allow-truncation-risk", action="store_true",
                   help="bypass the |z|^2 <= rank/4 guard")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("evolve", parents=[common],
                       help="emit a coherent-state trajectory as CSV")
    p.add_argument("--z", required=True, help="coherent amplitude as a+bi")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--steps", type=int, default=256)
    p.add_argument("--allow-truncation-risk", action="store_true",
                   help="bypass the |z|^2 <= rank/4 guard")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("verify", parents=[common],
                       help="run the full verification suite with pinned tolerances")
    p.add_argument("--mutate", choices=MUTATIONS, default="none",
                   help="inject a deliberate fault to exercise the suite")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"bosonreg: error: {exc}", file=sys.stderr)
        return 2
    except BosonRegError as exc:
        print(f"bosonreg: error: {exc}", file=sys.stderr)
        return 2
