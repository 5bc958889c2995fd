"""Command-line interface.

Exit codes: 0 success, 1 usage / input error, 2 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .dieudonne import (
    CASES,
    LieType,
    build_example_13_5,
    build_matrix_lie_type,
    build_superspecial_division,
    build_superspecial_matrix,
    build_two_slope_division,
    verify,
)
from .errors import IsocrystError
from .forms import classify_quadratic, enumerate_quad_classes, enumerate_skewherm_classes
from .local_model import run_local_model
from .padic_core import FieldParams
from .quaternion import Kind
from .slopes import AdmissibleSpec, SlopeSeq, count_isogeny_classes, enumerate_slopeseqs

SCHEMA = "isocryst/1"

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# output


class Output:
    """Collects a result payload and renders it as a table or as JSON."""

    def __init__(self, fmt: str, stream: Any = None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, payload: dict[str, Any], render: Callable[[dict[str, Any]], list[str]]) -> None:
        if self.fmt == "json":
            payload = {"schema": SCHEMA, **payload}
            self.stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        else:
            for line in render(payload):
                self.stream.write(line + "\n")


def _table(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> list[str]:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()  # noqa: E731
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


# ---------------------------------------------------------------------------
# argument helpers


def _params(args: argparse.Namespace) -> FieldParams:
    try:
        return FieldParams(args.p, args.e, args.f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _kind(args: argparse.Namespace) -> Kind:
    if args.algebra is None:
        raise UsageError("--algebra {matrix,division} is required")
    return Kind(args.algebra)


def _parse_entry(tok: str, params: FieldParams) -> Any:
    """An integer or fraction, or a product of the symbols u (fixed non-square unit) and pi."""
    R = params.ring()
    out = R.one
    for factor in tok.strip().split("*"):
        factor = factor.strip()
        sign = 1
        while factor.startswith("-"):
            sign, factor = -sign, factor[1:]
        if factor == "u":
            val = R.nonresidue
        elif factor == "pi":
            val = R.pi
        else:
            try:
                val = R(Fraction(factor))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"cannot parse diagonal entry {tok!r}") from None
        out = out * val * R(sign)
    return out


def _common(p: argparse.ArgumentParser, field: bool = True) -> None:
    if field:
        p.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
        p.add_argument("--e", type=int, default=1, help="ramification index (default 1)")
        p.add_argument("--f", type=int, default=1, help="inertia degree (default 1)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--quiet", action="store_true", help="suppress the banner")


# ---------------------------------------------------------------------------
# subcommands


def cmd_slopes_enumerate(args: argparse.Namespace, out: Output) -> int:
    spec = AdmissibleSpec(_params(args), _kind(args), args.m, determinant_condition=args.det_condition)
    seqs = enumerate_slopeseqs(spec)
    payload = {
        "params": _pjson(spec.params),
        "algebra": str(spec.kind),
        "m": spec.m,
        "determinant_condition": spec.determinant_condition,
        "count": len(seqs),
        "sequences": [str(s) for s in seqs],
    }
    out.emit(payload, lambda d: [f"{len(seqs)} sequence(s) of height {spec.height}"] + d["sequences"])
    return EXIT_OK


def cmd_slopes_count(args: argparse.Namespace, out: Output) -> int:
    if not args.nu:
        raise UsageError("--nu is required")
    params = _params(args)
    try:
        nu = SlopeSeq.parse(args.nu)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --nu: {exc}") from None
    m = args.m
    if m is None:
        if nu.height % (4 * params.d):
            raise UsageError(f"height {nu.height} is not a multiple of 4d = {4 * params.d}")
        m = nu.height // (4 * params.d)
    spec = AdmissibleSpec(params, _kind(args), m)
    n = count_isogeny_classes(spec, nu)
    payload = {"params": _pjson(params), "algebra": str(spec.kind), "m": m, "nu": str(nu), "count": n}
    out.emit(payload, lambda d: [f"nu = {d['nu']}", f"isogeny classes: {n}"])
    return EXIT_OK


def cmd_forms_classify(args: argparse.Namespace, out: Output) -> int:
    if not args.diag:
        raise UsageError("--diag is required, e.g. --diag 1,-1,u,pi")
    params = _params(args)
    entries = [_parse_entry(t, params) for t in args.diag.split(",")]
    cls = classify_quadratic(entries)
    payload = {"params": _pjson(params), "diag": args.diag, "class": cls.to_json()}
    out.emit(payload, lambda d: [f"n = {cls.n}", f"disc = {cls.disc.label()}", f"hasse = {cls.hasse:+d}"])
    return EXIT_OK


def cmd_forms_enumerate(args: argparse.Namespace, out: Output) -> int:
    params = _params(args)
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    if args.kind == "quadratic":
        classes = enumerate_quad_classes(args.n, params)
        rows = [[c.disc.label(), f"{c.hasse:+d}"] for c in classes]
        header = ["disc", "hasse"]
    else:
        classes = enumerate_skewherm_classes(args.n, params)
        rows = [[c.disc.label()] for c in classes]
        header = ["disc"]
    payload = {
        "params": _pjson(params),
        "kind": args.kind,
        "n": args.n,
        "count": len(classes),
        "classes": [c.to_json() for c in classes],
    }
    out.emit(payload, lambda d: [f"{len(classes)} class(es)"] + _table(rows, header))
    return EXIT_OK


def _build(args: argparse.Namespace) -> Any:
    params = _params(args)
    N = args.precision
    case = args.case
    if case == "superspecial-matrix":
        return build_superspecial_matrix(params, args.m or 1, N)
    if case == "superspecial-division":
        return build_superspecial_division(params, N)
    if case == "two-slope":
        if args.a is None:
            raise UsageError("--a is required for --case two-slope")
        return build_two_slope_division(params, args.a, N)
    if case == "lie-type":
        if not args.lie:
            raise UsageError('--lie "e1,e2;..." is required for --case lie-type')
        try:
            lie = LieType.parse(args.lie)
        except ValueError:
            raise UsageError(f"cannot parse --lie {args.lie!r}") from None
        return build_matrix_lie_type(params, lie, N)
    if (params.e, params.f) != (1, 1):
        raise UsageError("example-13-5 is defined over Q_p: use --e 1 --f 1")
    return build_example_13_5(params.p, N)


def cmd_dieudonne_build(args: argparse.Namespace, out: Output) -> int:
    M = _build(args)
    rep = verify(M)
    payload = {"module": M.to_json(), "report": rep.to_json()}
    payload["module"].pop("schema")
    payload["report"].pop("schema")

    def render(_: dict[str, Any]) -> list[str]:
        lines = [
            M.label,
            f"c = {rep.c}",
            f"a = {rep.a}",
            f"lie_type = {rep.lie_type}",
            f"slope_seq = {rep.slope_seq}",
        ]
        rows = [["PASS" if ch.passed else "FAIL", ch.name, _compact(ch.observed), _compact(ch.expected)] for ch in rep.checks]
        lines += _table(rows, ["result", "check", "observed", "expected"])
        lines.append("all checks pass" if rep.all_pass else "FAILED: " + ", ".join(rep.failed()))
        return lines

    out.emit(payload, render)
    return EXIT_OK if rep.all_pass else EXIT_FAIL


def cmd_local_model(args: argparse.Namespace, out: Output) -> int:
    params = _params(args)
    q = args.q or params.p
    payload = run_local_model(params, args.ramified == "yes", q)
    payload.pop("schema")

    def render(d: dict[str, Any]) -> list[str]:
        rows = [[i, _compact(pt["hermite"]), tuple(pt["lie_type"])] for i, pt in enumerate(d["points"])]
        lines = [f"{len(d['points'])} point(s), {len(d['orbits'])} orbit(s)"]
        lines += _table(rows, ["#", "hermite", "lie_type"])
        lines += [f"orbit {tuple(o['lie_type'])}: points {o['members']}" for o in d["orbits"]]
        return lines

    out.emit(payload, render)
    return EXIT_OK


def cmd_tables(args: argparse.Namespace, out: Output) -> int:
    name = args.table
    if name in ("cor76", "cor77"):
        top = 3 if name == "cor76" else 2
        rows = []
        for e in range(1, top + 1):
            for f in range(1, top + 1):
                for kind in (Kind.MATRIX, Kind.DIVISION):
                    spec = AdmissibleSpec(FieldParams(args.p, e, f), kind, 1, determinant_condition=name == "cor77")
                    rows.append([e, f, e * f, str(kind), " | ".join(str(s) for s in enumerate_slopeseqs(spec))])
        header = ["e", "f", "d", "algebra", "sequences"]
    elif name == "thm98":
        rows = []
        for e, f in ((1, 1), (2, 1)):
            params = FieldParams(args.p, e, f)
            for kind in (Kind.MATRIX, Kind.DIVISION):
                for ms in (1, 2, 3):
                    nu = SlopeSeq.of((Fraction(1, 2), 4 * params.d * ms))
                    n = count_isogeny_classes(AdmissibleSpec(params, kind, ms), nu)
                    rows.append(["even" if params.d % 2 == 0 else "odd", str(kind), ms, n])
        header = ["d", "algebra", "m_s", "classes"]
    elif name == "cor95":
        params = _params(args)
        rows = [[n, len(enumerate_quad_classes(n, params))] for n in range(1, 6)]
        header = ["n", "classes"]
    else:
        params = _params(args)
        rows = [[n, len(enumerate_skewherm_classes(n, params))] for n in range(1, 4)]
        header = ["n", "classes"]
    payload = {"table": name, "p": args.p, "columns": header, "rows": rows}

    def render(d: dict[str, Any]) -> list[str]:
        lines = _table(rows, header)
        if name in ("cor95", "cor97"):
            lines.append("row: (" + ", ".join(str(r[1]) for r in rows) + ")")
        return lines

    out.emit(payload, render)
    return EXIT_OK


def _pjson(params: FieldParams) -> dict[str, int]:
    return {"p": params.p, "e": params.e, "f": params.f}


def _compact(x: Any) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(x, separators=(",", ":"), sort_keys=True)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isocryst", description="Slopes, forms, Dieudonne modules and local models.")
    parser.add_argument("--version", action="version", version=f"isocryst {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    slopes = sub.add_parser("slopes", help="slope sequences")
    ssub = slopes.add_subparsers(dest="action", parser_class=_Parser)
    p = ssub.add_parser("enumerate", help="admissible symmetric slope sequences")
    _common(p)
    p.add_argument("--algebra", choices=("matrix", "division"))
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--det-condition", action="store_true", help="impose the determinant condition (m = 1)")
    p.set_defaults(handler=cmd_slopes_enumerate)
    p = ssub.add_parser("count-isogeny", help="number of isogeny classes with a given slope sequence")
    _common(p)
    p.add_argument("--algebra", choices=("matrix", "division"))
    p.add_argument("--m", type=int)
    p.add_argument("--nu", help='slope sequence, e.g. "1/2:4" or "1/6:6,5/6:6"')
    p.set_defaults(handler=cmd_slopes_count)

    forms = sub.add_parser("forms", help="quadratic and skew-Hermitian forms")
    fsub = forms.add_subparsers(dest="action", parser_class=_Parser)
    p = fsub.add_parser("classify", help="classify a diagonal quadratic form")
    _common(p)
    p.add_argument("--diag", help="comma-separated entries: integers, fractions, u, pi, products like u*pi")
    p.set_defaults(handler=cmd_forms_classify)
    p = fsub.add_parser("enumerate", help="list isometry classes of rank n")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=("quadratic", "skew-hermitian"), default="quadratic")
    p.set_defaults(handler=cmd_forms_enumerate)

    dd = sub.add_parser("dieudonne", help="construct and verify Dieudonne modules")
    dsub = dd.add_subparsers(dest="action", parser_class=_Parser)
    p = dsub.add_parser(
        "build",
        help="build one of the explicit constructions and verify it",
        description=(
            "Cases: superspecial-matrix, superspecial-division, two-slope (--a), lie-type (--lie), "
            "example-13-5.  The example-13-5 module is superspecial with tangent space k^2 + 0 and "
            "is expected to FAIL det_condition (exit code 2)."
        ),
    )
    _common(p)
    p.add_argument("--case", choices=CASES, required=True)
    p.add_argument("--algebra", choices=("matrix", "division"), help="accepted for symmetry; implied by --case")
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--lie", help='per-index Lie types, e.g. "0,1;1,0"')
    p.add_argument("--precision", type=int, help="truncation N (work modulo p^N)")
    p.set_defaults(handler=cmd_dieudonne_build)

    lm = sub.add_parser("local-model", help="enumerate special-fibre points of the local model")
    lsub = lm.add_subparsers(dest="action", parser_class=_Parser)
    p = lsub.add_parser("enumerate")
    _common(p)
    p.add_argument("--ramified", choices=("yes", "no"), default="no")
    p.add_argument("--q", type=int, help="residue field size (a power of p; default p)")
    p.set_defaults(handler=cmd_local_model)

    tb = sub.add_parser("tables", help="reproduce the closed-form tables")
    _common(tb)
    tb.add_argument("table", choices=("cor76", "cor77", "thm98", "cor95", "cor97"))
    tb.set_defaults(handler=cmd_tables)
    return parser


def _validate(args: argparse.Namespace) -> None:
    case = getattr(args, "case", None)
    if case is not None and args.algebra is not None:
        implied = "matrix" if case in ("superspecial-matrix", "lie-type") else "division"
        if args.algebra != implied:
            raise UsageError(f"--case {case} builds a {implied}-kind module")
    if getattr(args, "m", None) is not None and args.m < 1:
        raise UsageError("--m must be >= 1")
    if getattr(args, "precision", None) is not None and args.precision < 2:
        raise UsageError("--precision must be >= 2")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    fmt = "table"
    try:
        args = parser.parse_args(argv)
        fmt = getattr(args, "format", "table")
        if not hasattr(args, "handler"):
            raise UsageError(parser.format_usage().strip())
        _validate(args)
        if fmt == "table" and not args.quiet:
            sys.stderr.write(f"isocryst {__version__}\n")
        return args.handler(args, Output(fmt))
    except (UsageError, IsocrystError) as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        sys.stderr.write(f"error: {exc}\n")
        if fmt == "json":
            sys.stdout.write(json.dumps({"schema": SCHEMA, "error": {"type": kind, "message": str(exc)}}, sort_keys=True) + "\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
