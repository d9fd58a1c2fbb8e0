"""Command-line front end.

Exit status is 0 on success, 1 when a validation or analysis check fails and
2 for usage errors or unreadable/malformed model files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .linalg import DimensionError, NotPSDError, Tolerance, eps_of
from .measurement import (
    OUTCOMES,
    Convention,
    InvalidMeasurementError,
    InvalidStateError,
    Order,
    QuantumState,
    ZeroProbabilityError,
    outcome_distribution,
    require_valid,
    validate_measurement,
)
from .modelfile import ModelError, dump_model, load_model
from .montecarlo import ExperimentConfig, UnsupportedConventionError, convergence_sweep, simulate
from .neumark import common_space_lift, lifted_qq_check, verify_dilation
from .qq import bloch_amplitudes, bloch_grid, max_violation, qq_statistic, zero_manifold_mask

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.12g}"


def num(x: float) -> float:
    """Round to 12 significant digits for machine-readable output."""
    return float(f"{x:.12g}")


def cnum(z: complex) -> float | list[float]:
    z = complex(z)
    return num(z.real) if z.imag == 0 else [num(z.real), num(z.imag)]


def fmt_c(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"


def matrix_json(m) -> list:
    return [[cnum(z) for z in row] for row in np.asarray(m)]


def matrix_text(m, indent: str = "  ") -> str:
    return "\n".join(indent + "[" + ", ".join(fmt_c(z) for z in row) + "]" for row in np.asarray(m))


def _status(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return word
    return f"\033[{32 if ok else 31}m{word}\033[0m"


def _parse_complex(text: str) -> complex:
    t = text.strip().replace(" ", "").replace("i", "j")
    if t in ("j", "+j", "-j"):
        t = t.replace("j", "1j")
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _parse_pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated values, got {text!r}")
    return parts[0].strip(), parts[1].strip()


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(s)) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse sizes {text!r}") from None
    if not sizes or any(n < 1 for n in sizes) or sizes != sorted(sizes):
        raise UsageError("sizes must be a non-empty ascending list of positive integers")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="model file (JSON); 'paper.model' selects the bundled fixture")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--pair", help="names of the two measurements, 'A,B' (default: first two)")
    common.add_argument("--tolerance", type=float, help="override the model tolerance")
    common.add_argument("--emit-model", metavar="PATH", help="write the parsed model back out as JSON")

    conv = argparse.ArgumentParser(add_help=False)
    conv.add_argument("--convention", choices=[c.value for c in Convention])

    parser = argparse.ArgumentParser(prog="qqpovm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check POVM axioms and the state")
    p = sub.add_parser("distribution", parents=[common, conv], help="sequential joint outcome table")
    p.add_argument("--order", choices=[o.value for o in Order], default=Order.A_FIRST.value)
    p = sub.add_parser("qq", parents=[common, conv], help="QQ statistic and operator")
    p.add_argument("--state-override", metavar="ALPHA,BETA", help="pure qubit state amplitudes, e.g. 'i,1'")
    p = sub.add_parser("scan", parents=[common, conv], help="zero-violation states on a Bloch grid")
    p.add_argument("--grid", type=int, default=64)
    sub.add_parser("max", parents=[common, conv], help="maximal violation over all states")
    sub.add_parser("lift", parents=[common], help="Neumark lift and restored QQ-equality")
    p = sub.add_parser("simulate", parents=[common, conv], help="Monte Carlo order experiment")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("sweep", parents=[common, conv], help="Monte Carlo convergence sweep")
    p.add_argument("--sizes", default="100,10000,1000000")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _pair(args, model, tol):
    A, B = model.pair(args.pair and _parse_pair(args.pair))
    require_valid(A, tol)
    require_valid(B, tol)
    return A, B


def _convention(args, model, default: Convention) -> Convention:
    if getattr(args, "convention", None):
        return Convention(args.convention)
    return model.convention or default


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def cmd_validate(args, model, tol) -> int:
    doc = {"command": "validate", "measurements": {}}
    lines = []
    ok = True
    for name, m in model.measurements.items():
        r = validate_measurement(m, tol)
        ok &= r.valid
        doc["measurements"][name] = {
            "valid": r.valid,
            "projective": r.projective,
            "hermitian_residual": num(r.hermitian_residual),
            "min_eigenvalue": num(r.min_eigenvalue),
            "completeness_residual": num(r.completeness_residual),
            "idempotence_residual": num(r.idempotence_residual),
        }
        lines.append(
            f"measurement {name}: {_status(r.valid)} valid={r.valid} projective={r.projective}\n"
            f"  hermitian residual    {fmt(r.hermitian_residual)}\n"
            f"  min eigenvalue        {fmt(r.min_eigenvalue)}\n"
            f"  completeness residual {fmt(r.completeness_residual)}\n"
            f"  idempotence residual  {fmt(r.idempotence_residual)}"
        )
    doc["state_valid"] = True
    doc["valid"] = bool(ok)
    lines.append(f"state: {_status(True)} (dimension {model.dimension})")
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_distribution(args, model, tol) -> int:
    A, B = _pair(args, model, tol)
    c = _convention(args, model, Convention.LITERAL)
    t = outcome_distribution(model.state, A, B, args.order, c, tol)
    first, second = ("A", "B") if t.order is Order.A_FIRST else ("B", "A")
    probs = {f"{first}{o1[0]}{second}{o2[0]}": num(t[(o1, o2)]) for o1 in OUTCOMES for o2 in OUTCOMES}
    doc = {
        "command": "distribution",
        "order": t.order.value,
        "convention": c.value,
        "probabilities": probs,
        "normalization_defect": num(t.normalization_defect),
    }
    lines = [f"order {t.order.value}, convention {c.value}"]
    lines += [f"  p({k}) = {fmt(v)}" for k, v in probs.items()]
    lines.append(f"  normalization defect = {fmt(t.normalization_defect)}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_qq(args, model, tol) -> int:
    A, B = _pair(args, model, tol)
    c = _convention(args, model, Convention.LITERAL)
    state = model.state
    if args.state_override:
        if model.dimension != 2:
            raise UsageError("--state-override needs a qubit model")
        a, b = (_parse_complex(x) for x in _parse_pair(args.state_override))
        try:
            state = QuantumState.from_amplitudes(a, b)
        except InvalidStateError as exc:
            raise UsageError(str(exc)) from None
    r = qq_statistic(state, A, B, c, tol)
    doc = {
        "command": "qq",
        "convention": c.value,
        "statistic": num(r.statistic),
        "combination": num(r.combination),
        "zero_state": r.zero_state,
        "k_operator": matrix_json(r.k_operator),
        "factor": None if r.factor is None else num(r.factor),
        "normalization_defect_a_first": num(r.a_first.normalization_defect),
        "normalization_defect_b_first": num(r.b_first.normalization_defect),
    }
    lines = [
        f"convention {c.value}",
        f"statistic   {fmt(r.statistic)}",
        f"combination {fmt(r.combination)}",
        f"zero state  {r.zero_state}",
        "QQ operator:",
        matrix_text(r.k_operator),
        f"normalization defect (a-first, b-first): "
        f"{fmt(r.a_first.normalization_defect)}, {fmt(r.b_first.normalization_defect)}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_scan(args, model, tol) -> int:
    A, B = _pair(args, model, tol)
    c = _convention(args, model, Convention.LITERAL)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    mask = zero_manifold_mask(A, B, c, args.grid, tol)
    thetas, phis = bloch_grid(args.grid)
    alpha, beta = bloch_amplitudes(args.grid)
    points = [
        {"i": int(i), "j": int(j), "theta": num(thetas[i]), "phi": num(phis[j]),
         "alpha": cnum(alpha[i, j]), "beta": cnum(beta[i, j])}
        for i, j in np.argwhere(mask)
    ]
    doc = {"command": "scan", "convention": c.value, "grid": args.grid, "count": len(points), "points": points}
    lines = [f"{len(points)} of {args.grid * args.grid} grid states have |qq| <= {fmt(eps_of(tol))}"]
    lines += [f"  theta={fmt(p['theta'])} phi={fmt(p['phi'])}" for p in points]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_max(args, model, tol) -> int:
    A, B = _pair(args, model, tol)
    c = _convention(args, model, Convention.LITERAL)
    v = max_violation(A, B, c, tol)
    doc = {"command": "max", "convention": c.value, "value": num(v.value), "maximizer": matrix_json(v.maximizer.rho)}
    lines = [f"convention {c.value}", f"max violation {fmt(v.value)}", "maximizer:", matrix_text(v.maximizer.rho)]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_lift(args, model, tol) -> int:
    A, B = _pair(args, model, tol)
    lift = common_space_lift(A, B, tol)
    certs = {"A": verify_dilation(lift.dilation_a, tol), "B": verify_dilation(lift.dilation_b, tol)}
    check = lifted_qq_check(A, B, model.state, tol)
    restored = abs(check.after) <= eps_of(tol)
    ok = restored and all(cert.passed for cert in certs.values())
    doc = {
        "command": "lift",
        "common_dimension": lift.dim,
        "certificates": {
            k: {"passed": cert.passed, "residuals": {r: num(x) for r, x in cert.residuals.items()}}
            for k, cert in certs.items()
        },
        "ancilla_assignment": {"A": list(lift.dilation_a.ancilla_assignment), "B": list(lift.dilation_b.ancilla_assignment)},
        "before": num(check.before),
        "after": num(check.after),
        "restored": restored,
        "lifted": {"A": {"yes": matrix_json(lift.lifted_a.yes.matrix)}, "B": {"yes": matrix_json(lift.lifted_b.yes.matrix)}},
    }
    lines = [f"common dimension {lift.dim}"]
    for k, cert in certs.items():
        lines.append(f"certificate {k}: {_status(cert.passed)}")
        lines += [f"  {r:<12} {fmt(x)}" for r, x in cert.residuals.items()]
    lines += [f"before {fmt(check.before)}", f"after  {fmt(check.after)}", f"QQ-equality restored: {_status(restored)}"]
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _config(args, model, n: int, tol) -> ExperimentConfig:
    A, B = _pair(args, model, tol)
    c = _convention(args, model, Convention.SQRT)
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    if n < 1:
        raise UsageError("sample size must be positive")
    return ExperimentConfig(model.state, A, B, n, args.seed, c)


def cmd_simulate(args, model, tol) -> int:
    r = simulate(_config(args, model, args.n, tol))
    cells = ["yy", "yn", "ny", "nn"]
    doc = {
        "command": "simulate",
        "n_per_order": r.n_per_order,
        "counts": {o.value: dict(zip(cells, map(int, row))) for o, row in zip(Order, r.counts)},
        "empirical_qq": num(r.empirical_qq),
        "standard_error": num(r.standard_error),
        "analytic_qq": num(r.analytic_qq),
    }
    lines = [f"n per order {r.n_per_order}"]
    lines += [f"  {o.value} counts {dict(zip(cells, map(int, row)))}" for o, row in zip(Order, r.counts)]
    lines += [
        f"empirical qq   {fmt(r.empirical_qq)}",
        f"standard error {fmt(r.standard_error)}",
        f"analytic qq    {fmt(r.analytic_qq)}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_sweep(args, model, tol) -> int:
    sizes = _parse_sizes(args.sizes)
    rows = convergence_sweep(_config(args, model, sizes[0], tol), sizes)
    doc = {
        "command": "sweep",
        "rows": [{"n": r.n, "abs_error": num(r.abs_error), "standard_error": num(r.standard_error)} for r in rows],
    }
    lines = [f"{'n':>10}  {'|emp-analytic|':>20}  {'std error':>20}"]
    lines += [f"{r.n:>10}  {fmt(r.abs_error):>20}  {fmt(r.standard_error):>20}" for r in rows]
    _emit(args, doc, lines)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "distribution": cmd_distribution,
    "qq": cmd_qq,
    "scan": cmd_scan,
    "max": cmd_max,
    "lift": cmd_lift,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        model = load_model(args.model)
        tol = Tolerance(args.tolerance) if args.tolerance is not None else (model.tolerance or Tolerance())
        if args.emit_model:
            dump_model(model, args.emit_model)
        return COMMANDS[args.command](args, model, tol)
    except (ModelError, UsageError, DimensionError) as exc:
        print(f"qqpovm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidMeasurementError, UnsupportedConventionError, NotPSDError, ZeroProbabilityError) as exc:
        print(f"qqpovm: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
