"""Command-line interface: ``delsarte <command> ...``.

Exit codes: 0 success, 1 domain or usage error, 2 infeasible certificate or
failed soundness check.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .asymptotics import BOUND_IDS, RateBound, emit_csv, emit_svg, sample_curve
from .certificates import (
    eb_certificate,
    format_dump,
    hamming_certificate,
    mrrw_certificate,
    mrrw_closed_form,
)
from .errors import CertificateUnavailable, DelsarteError, DomainError, SoundnessError
from .lp import MAX_LP_N, solve_primal
from .oracle import FamilySpec, format_report, max_code_size, sandwich_check
from .params import SchemeParameters, check_q_polynomial
from .scheme import adjacency_product_check, adjacency, engine_parameters, parse_scheme

JOHNSON_NOTE = (
    "For --family johnson, --d is a Hamming distance between weight-a words; "
    "it is halved (floor(d/2)) to get the Johnson-scheme distance, since "
    "A(n,d,a) <= A_LP(n, floor(d/2), a)."
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _frac(x) -> str:
    return str(Fraction(x))


def _family(args) -> FamilySpec:
    if args.family == "hamming":
        if args.q is None or args.a is not None:
            raise DomainError("--family hamming needs --q (and no --a)")
        return FamilySpec("hamming", args.n, q=args.q)
    if args.a is None or args.q is not None:
        raise DomainError("--family johnson needs --a (and no --q)")
    return FamilySpec("johnson", args.n, a=args.a)


def _scheme_d(spec: FamilySpec, d: int) -> int:
    if spec.family == "johnson":
        dj = d // 2
        if dj < 1:
            raise DomainError(f"Hamming distance d={d} gives Johnson distance {dj}; need d >= 2")
        return dj
    return d


def _matrix(rows) -> str:
    cells = [[_frac(x) for x in r] for r in rows]
    w = max(len(c) for r in cells for c in r)
    return "\n".join("  ".join(c.rjust(w) for c in r) for r in cells)


def cmd_scheme_verify(args) -> int:
    text = Path(args.file).read_text()
    scheme = parse_scheme(text)
    table, spec, params, violation = engine_parameters(scheme)
    report = adjacency_product_check(adjacency(scheme), table)
    if not report:
        raise SoundnessError(f"D_i D_j expansion fails at {report.mismatch}")
    print(f"|X| = {scheme.size}, n = {scheme.n}: association scheme (equipartition holds, non-degenerate)")
    print("valencies v:      " + " ".join(str(v) for v in params.v))
    print("multiplicities m: " + " ".join(str(m) for m in params.m))
    print("D_1 eigenvalues:  " + " ".join(f"{e:.6g}" for e in spec.eigenvalues))
    if violation is None:
        print("Q-polynomial in the decreasing-eigenvalue ordering: yes")
    else:
        reason, i, j, k = violation
        print(f"Q-polynomial in the decreasing-eigenvalue ordering: no ({reason} at i={i}, j={j}, k={k})")
    return 0


def cmd_params(args) -> int:
    if args.family == "hamming":
        params = FamilySpec("hamming", args.n, q=args.q).parameters()
    else:
        params = FamilySpec("johnson", args.n, a=args.a).parameters()
    ok, _ = check_q_polynomial(params)
    print(f"{params.name}: |X| = {params.size}, Q-polynomial = {'yes' if ok else 'no'}")
    print("v: " + " ".join(str(v) for v in params.v))
    print("m: " + " ".join(str(m) for m in params.m))
    print("P (row i = p_i):")
    print(_matrix(params.P))
    print("Q (row i = q_i):")
    print(_matrix(params.Q))
    return 0


def _bound_values(params: SchemeParameters, d: int, methods, dump: bool):
    values, dumps = {}, []
    big = params.n > SchemeParameters.MAX_MATERIALISED
    for method in methods:
        try:
            if method == "lp":
                if params.n > MAX_LP_N and len(methods) > 1:
                    continue
                values["lp"] = solve_primal(params, d).value
                continue
            if method == "mrrw" and big:
                values["mrrw"] = mrrw_closed_form(params, d)[0]
                continue
            if big and len(methods) > 1:
                continue
            fn = {"hamming": hamming_certificate, "eb": eb_certificate, "mrrw": mrrw_certificate}[method]
            cert = fn(params, d)
        except CertificateUnavailable as exc:
            if len(methods) == 1:
                raise
            print(f"# {method}: not applicable ({exc})", file=sys.stderr)
            continue
        values[method] = cert.reported
        if dump:
            dumps.append(f"# {method} certificate {cert.construction}: bound {_frac(cert.bound)}\n" + format_dump(cert))
    return values, dumps


def cmd_bound(args) -> int:
    spec = _family(args)
    d = _scheme_d(spec, args.d)
    if spec.family == "hamming" and args.n > SchemeParameters.MAX_MATERIALISED and args.method not in ("mrrw", "all"):
        raise DomainError(f"only the MRRW closed form is available for n > {SchemeParameters.MAX_MATERIALISED}")
    params = spec.parameters()
    methods = ["lp", "hamming", "eb", "mrrw"] if args.method == "all" else [args.method]
    values, dumps = _bound_values(params, d, methods, args.dump)
    cols = ["lp", "hamming", "eb", "mrrw"]
    cells = [_frac(values[c]) if c in values else "-" for c in cols]
    widths = [max(len(c), len(v)) for c, v in zip(cols, cells)]
    print(f"{spec.label()}, d = {d}")
    print("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
    print("  ".join(v.rjust(w) for v, w in zip(cells, widths)))
    for block in dumps:
        print(block, end="")
    return 0


def cmd_sandwich(args) -> int:
    spec = _family(args)
    d = _scheme_d(spec, args.d)
    report = sandwich_check(spec, d, node_limit=args.node_limit)
    print(f"{spec.label()}")
    print(format_report([report]), end="")
    return 0


def cmd_oracle(args) -> int:
    spec = _family(args)
    d = _scheme_d(spec, args.d)
    res = max_code_size(spec, d, node_limit=args.node_limit)
    status = "optimal" if res.proven else "lower bound (node limit reached)"
    print(f"{spec.label()}, d = {d}: {res.size} ({status}, {res.nodes} nodes)")
    print("witness: " + " ".join(str(w) for w in res.witness))
    return 0


def cmd_curve(args) -> int:
    ids = [s.strip() for s in args.which.split(",") if s.strip()]
    if not ids:
        raise DomainError("--which needs at least one bound identifier")
    if args.alpha is not None and args.q is not None:
        raise DomainError("give either --q or --alpha, not both")
    bounds = [RateBound(i, q=args.q or 2, alpha=args.alpha) for i in ids]
    curves = [sample_curve(b, args.grid) for b in bounds]
    Path(args.out).write_text(emit_csv(curves))
    if args.svg:
        Path(args.svg).write_text(emit_svg(curves))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="delsarte", description="Delsarte LP bounds on code sizes over association schemes.")
    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scheme", help="explicit scheme files")
    scs = sc.add_subparsers(dest="action", required=True)
    v = scs.add_parser("verify", help="check the scheme axioms and print the extracted parameters")
    v.add_argument("file")
    v.set_defaults(func=cmd_scheme_verify)

    pa = sub.add_parser("params", help="exact parameter tables of the closed-form families")
    pas = pa.add_subparsers(dest="family", required=True)
    ph = pas.add_parser("hamming")
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--q", type=int, required=True)
    pj = pas.add_parser("johnson")
    pj.add_argument("--n", type=int, required=True)
    pj.add_argument("--a", type=int, required=True)
    for sp in (ph, pj):
        sp.set_defaults(func=cmd_params)

    def family_args(sp):
        sp.add_argument("--family", choices=["hamming", "johnson"], required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--q", type=int)
        sp.add_argument("--a", type=int)
        sp.add_argument("--d", type=int, required=True, help="minimum distance (Hamming distance; see note)")

    b = sub.add_parser("bound", help="certificate and LP bounds", epilog=JOHNSON_NOTE)
    family_args(b)
    b.add_argument("--method", choices=["hamming", "eb", "mrrw", "lp", "all"], default="all")
    b.add_argument("--dump", action="store_true", help="print each certificate as 'x f(x) fhat(x)' lines")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sandwich", help="oracle <= LP <= certificates", epilog=JOHNSON_NOTE)
    family_args(s)
    s.add_argument("--node-limit", type=int, default=0)
    s.set_defaults(func=cmd_sandwich)

    o = sub.add_parser("oracle", help="exact maximum code size by clique search", epilog=JOHNSON_NOTE)
    family_args(o)
    o.add_argument("--node-limit", type=int, default=0)
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("curve", help="sample asymptotic rate bounds to CSV/SVG")
    c.add_argument("--which", required=True, help="comma-separated ids: " + ", ".join(BOUND_IDS))
    c.add_argument("--q", type=int)
    c.add_argument("--alpha", type=float)
    c.add_argument("--grid", type=int, default=101)
    c.add_argument("--out", required=True)
    c.add_argument("--svg")
    c.set_defaults(func=cmd_curve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SoundnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DelsarteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
