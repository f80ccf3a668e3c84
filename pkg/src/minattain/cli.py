"""Command-line front end.

Subcommands: ``compute`` (norm / minmod / sqrt / polar), ``check`` (nstar /
anstar), ``verify`` (property suites) and ``range`` (numerical ranges).
Every emitted report embeds a run manifest sufficient to reproduce it;
reports carry no timestamps, so identical invocations produce identical
bytes (suite elapsed-time fields aside).

Exit codes: 0 success / all pass, 1 property failure, 2 parse error or
unknown name, 3 dimension cap exceeded, 4 unsupported combination.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .attainment import (
    anstar_decide_structured,
    anstar_sample,
    nstar_check_dense,
    nstar_decide_structured,
)
from .errors import (
    ToolkitError,
    UnknownSuiteError,
    UnsupportedVariantError,
    ValidationError,
)
from .operators import (
    DenseOperator,
    Diagonal,
    Projection,
    ShiftVariant,
    TripledProjection,
    WeightSequence,
    adjoint,
    as_matrix,
    operator_from_dict,
    parse_rule,
    truncate,
)
from .spectral import (
    DEFAULT_DIMENSION_CAP,
    DEFAULT_GRID,
    hermitian_interval,
    is_hermitian,
    min_modulus,
    numerical_range_boundary,
    operator_norm,
    polar_decomposition,
    positive_sqrt,
    structured_range,
)
from .verifier import SuiteConfig, run_suite, suite_names

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_UNSUPPORTED = 4


class _CapExceeded(ToolkitError):
    pass


def _parse_count_list(text: str) -> tuple[int, ...]:
    """Parse ``1..100`` ranges or ``16,64,256`` lists of counts."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(","))


def _parse_extent(text: str) -> int | None:
    if text.strip().lower() in ("inf", "infinite", "∞"):
        return None
    return int(text)


def _load_operator(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return operator_from_dict(json.load(fh))


def _structured_from_flags(args) -> object | None:
    if getattr(args, "projection", None) is not None:
        fields = dict(part.split("=", 1) for part in args.projection)
        unknown = set(fields) - {"rank", "corank"}
        if unknown:
            raise ValidationError(f"unknown projection fields {sorted(unknown)}")
        return Projection(
            _parse_extent(fields.get("rank", "inf")),
            _parse_extent(fields.get("corank", "inf")),
        )
    family = getattr(args, "family", None)
    if family is None:
        return None
    prefix = tuple(float(w) for w in args.prefix.split(",")) if args.prefix else ()
    if family == "diagonal":
        if not args.rule:
            raise ValidationError("--family diagonal needs --rule")
        return Diagonal(WeightSequence(prefix, parse_rule(args.rule)))
    if family == "shift":
        if not args.rule or args.lead is None:
            raise ValidationError("--family shift needs --lead and --rule")
        return ShiftVariant(args.lead, WeightSequence(prefix, parse_rule(args.rule)))
    if family == "tripled-projection":
        return TripledProjection()
    if family == "projection":
        return Projection(_parse_extent(args.rank or "inf"), _parse_extent(args.corank or "inf"))
    raise ValidationError(f"unknown family {family!r}")


def _resolve_operator(args):
    structured = _structured_from_flags(args)
    if structured is not None:
        return structured
    if getattr(args, "input", None) is None:
        raise ValidationError("provide --input or a structured family")
    return _load_operator(args.input)


def _dense_section(op, args) -> DenseOperator:
    """Dense matrix of the operator, truncating structured input."""
    if isinstance(op, DenseOperator):
        dense = op
    else:
        n = args.truncation
        if isinstance(op, TripledProjection) and n % 3 != 0:
            n -= n % 3
        dense = truncate(op, n)
    if max(dense.rows, dense.cols) > args.max_dim:
        raise _CapExceeded(
            f"dimension {max(dense.rows, dense.cols)} exceeds the cap {args.max_dim}"
        )
    return dense


def _manifest(args, command: str, inputs: list[str], outputs: list[str]) -> dict:
    fields = {}
    for name in ("seed", "tol", "trials", "truncation", "grid", "suite", "blocks",
                 "family", "rule", "prefix", "lead", "projection", "max_dim", "what",
                 "property", "dims"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "options": fields,
        "version": __version__,
    }


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(payload: dict | list, out: str | None) -> None:
    _emit_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _witness_pairs(witness) -> list:
    return witness.to_pairs()


def _cmd_compute(args) -> int:
    op = _resolve_operator(args)
    dense = _dense_section(op, args)
    a = dense.matrix
    manifest = _manifest(args, "compute", [args.input] if args.input else [], [args.out] if args.out else [])
    payload: dict = {"manifest": manifest, "what": args.what}
    if args.what in ("norm", "minmod"):
        value, witness = (operator_norm if args.what == "norm" else min_modulus)(dense)
        residual = abs(float(np.linalg.norm(a @ witness.coords)) - value)
        key = "value" if args.what == "norm" else "min_value"
        payload.update({key: value, "witness": _witness_pairs(witness), "residual": residual})
    elif args.what == "sqrt":
        root = positive_sqrt(dense)
        direct = is_hermitian(a) and float(np.min(np.linalg.eigvalsh((a + a.conj().T) / 2))) >= -1e-6
        reference = (a + a.conj().T) / 2 if direct else a.conj().T @ a
        residual = float(np.linalg.norm(root.matrix @ root.matrix - reference))
        residual /= max(1.0, float(np.linalg.norm(reference)))
        payload.update({"matrix": root.to_dict(), "mode": "direct" if direct else "gram",
                        "residual": residual})
    elif args.what == "polar":
        unitary, positive = polar_decomposition(dense)
        recon = float(np.linalg.norm(unitary.matrix @ positive.matrix - a))
        uu = unitary.matrix.conj().T @ unitary.matrix
        payload.update({
            "unitary": unitary.to_dict(),
            "positive": positive.to_dict(),
            "reconstruction_residual": recon / max(1.0, float(np.linalg.norm(a))),
            "unitary_residual": float(np.linalg.norm(uu - np.eye(dense.cols))),
        })
    else:
        raise ValidationError(f"unknown computation {args.what!r}")
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_check(args) -> int:
    op = _resolve_operator(args)
    manifest = _manifest(args, "check", [args.input] if args.input else [], [args.out] if args.out else [])
    if isinstance(op, DenseOperator):
        if max(op.rows, op.cols) > args.max_dim:
            raise _CapExceeded(f"dimension exceeds the cap {args.max_dim}")
        if args.property == "nstar":
            verdict = nstar_check_dense(op)
        else:
            verdict = anstar_sample(op, trials=args.trials, seed=args.seed)
    else:
        if args.property == "nstar":
            verdict = nstar_decide_structured(op)
        else:
            verdict = anstar_decide_structured(op)
    payload = {"manifest": manifest, **verdict.to_dict()}
    _emit_json(payload, args.out)
    return EXIT_OK if verdict.holds else EXIT_PROPERTY_FAILURE


def _suite_table(reports) -> str:
    lines = [f"{'suite':<28} {'trials':>7} {'failures':>9} {'max violation':>15}  status"]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.suite:<28} {r.trials:>7} {r.failures:>9} {r.max_violation:>15.3e}  {status}"
        )
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    sizes = _parse_count_list(args.blocks) if args.blocks else None
    dim_range = tuple(_parse_count_list(args.dims)[i] for i in (0, -1)) if args.dims else (2, 12)
    names = list(suite_names()) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        cfg = SuiteConfig(
            suite=name,
            trials=args.trials,
            dim_range=dim_range,
            seed=args.seed,
            tolerance=args.tol,
            truncation_sizes=sizes,
        )
        reports.append(run_suite(cfg))
    sys.stdout.write(_suite_table(reports))
    if args.out:
        manifest = _manifest(args, "verify", [], [args.out])
        _emit_json({"manifest": manifest, "reports": [r.to_dict() for r in reports]}, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_PROPERTY_FAILURE


def _cmd_range(args) -> int:
    op = _resolve_operator(args)
    manifest = _manifest(args, "range", [args.input] if args.input else [], [args.out] if args.out else [])
    if isinstance(op, Diagonal):
        descriptor = structured_range(op)
        _emit_json({"manifest": manifest, **descriptor.to_dict()}, args.out)
        return EXIT_OK
    if not isinstance(op, DenseOperator):
        raise UnsupportedVariantError("ranges need a dense operator or a positive diagonal family")
    if op.rows != op.cols:
        raise UnsupportedVariantError("dense numerical ranges need a square operator")
    if max(op.rows, op.cols) > args.max_dim:
        raise _CapExceeded(f"dimension exceeds the cap {args.max_dim}")
    if is_hermitian(op):
        descriptor = hermitian_interval(op)
        _emit_json({"manifest": manifest, **descriptor.to_dict()}, args.out)
        return EXIT_OK
    descriptor = numerical_range_boundary(op, grid=args.grid)
    lines = ["# manifest: " + json.dumps(manifest, sort_keys=True), "theta,re,im"]
    lines.extend(f"{t!r},{re!r},{im!r}" for t, re, im in descriptor.csv_rows())
    _emit_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, *, trials: bool = True) -> None:
    parser.add_argument("--seed", type=int, default=42, help="base random seed")
    parser.add_argument("--tol", type=float, default=None, help="override tolerance")
    if trials:
        parser.add_argument("--trials", type=int, default=100, help="sampling trial count")
    parser.add_argument("--truncation", type=int, default=1024,
                        help="finite-section size for structured input")
    parser.add_argument("--grid", type=int, default=DEFAULT_GRID, help="boundary angle count")
    parser.add_argument("--max-dim", type=int, default=DEFAULT_DIMENSION_CAP,
                        help="dense dimension cap")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_operator_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", default=None, help="operator JSON file")
    parser.add_argument("--family", default=None,
                        choices=("diagonal", "shift", "tripled-projection", "projection"),
                        help="structured family given by flags instead of a file")
    parser.add_argument("--rule", default=None, help="tail rule, e.g. '1+1/j' or '1/j'")
    parser.add_argument("--prefix", default=None, help="comma-separated explicit leading weights")
    parser.add_argument("--lead", type=float, default=None, help="lead weight for the shift family")
    parser.add_argument("--rank", default=None, help="projection rank (count or 'inf')")
    parser.add_argument("--corank", default=None, help="projection corank (count or 'inf')")
    parser.add_argument("--projection", nargs=2, metavar=("RANK", "CORANK"), default=None,
                        help="projection shorthand: rank=<n|inf> corank=<n|inf>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minattain",
        description="Minimum-modulus, spectral and attainment computations for Hilbert-space operators",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="norms, minimum moduli, square roots, polar factors")
    compute.add_argument("what", choices=("norm", "minmod", "sqrt", "polar"))
    _add_operator_source(compute)
    _add_common(compute)
    compute.set_defaults(handler=_cmd_compute)

    check = sub.add_parser("check", help="decide minimum-attainment properties")
    check.add_argument("property", choices=("nstar", "anstar"))
    _add_operator_source(check)
    _add_common(check)
    check.set_defaults(handler=_cmd_check)

    verify = sub.add_parser("verify", help="run registered property suites")
    verify.add_argument("--suite", required=True,
                        help="suite name or 'all' (see --list for names)")
    verify.add_argument("--blocks", default=None,
                        help="block counts / truncation sizes, e.g. '1..100' or '16,64'")
    verify.add_argument("--dims", default=None, help="dense dimension range, e.g. '2..12'")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--out", default=None)
    verify.set_defaults(handler=_cmd_verify)

    rng = sub.add_parser("range", help="numerical ranges: sampled boundary or exact interval")
    _add_operator_source(rng)
    _add_common(rng, trials=False)
    rng.set_defaults(handler=_cmd_range)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except _CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except UnsupportedVariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except UnknownSuiteError as exc:
        print(f"error: unknown suite {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, json.JSONDecodeError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
