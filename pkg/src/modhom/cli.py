"""Command-line front end: ``modhom {dims,cohomology,cyclic,verify,probe,monoid}``.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 property or oracle failure (or an inconclusive probe), 2 usage error.
"""
import argparse
import csv
import io
import json
import re
import sys

from .forms import FormClass, basis_of, format_term
from .hochschild import format_chain, parse_chain
from .homology import (CSV_HEADER, CyclicVariant, build_forms_complex, cohomology_dims,
                       cyclic_report, multidegree_window, probe_escalating, reports_to_csv)
from .linalg import IntMatrix
from .modpair import ModulusPair, parse_multidegree
from .monoids import FgAbMonoid, MonoidMap, repletion_iso
from .parallel import pmap
from .verify import SUITES, SuiteConfig, run_all, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# flags whose values may start with "-" (negative exponents)
_VALUE_FLAGS = {"--deg", "--deg-window", "--r", "--chain", "--map", "--element", "--n-range",
                "--exponent-window"}


def _join_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _int_list(text):
    text = text.strip()
    return [int(v) for v in text.split(",")] if text else []


def _range(text):
    match = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not match:
        raise UsageError(f"expected a range a..b, got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _pair(args):
    try:
        return ModulusPair.of(args.s, args.t, _int_list(args.r) if args.r is not None else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _degrees(p, args, required=True):
    if args.deg is not None and args.deg_window is not None:
        raise UsageError("give --deg or --deg-window, not both")
    if args.deg is not None:
        try:
            deg = parse_multidegree(p, args.deg)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if any(v < 0 for v in deg[p.s:]):
            raise UsageError(f"y-part of multidegree {args.deg} must be non-negative")
        return [deg]
    if args.deg_window is not None:
        parts = args.deg_window.split(",")
        if len(parts) not in (1, 2):
            raise UsageError("--deg-window takes XLO..XHI[,YLO..YHI]")
        x = _range(parts[0])
        y = _range(parts[1]) if len(parts) == 2 else (0, max(x[1], 0))
        return multidegree_window(p, x, y)
    if p.nvars == 0:
        return [()]
    if required:
        raise UsageError("a multidegree (--deg) or window (--deg-window) is required")
    return []


def _add_pair_flags(sp):
    sp.add_argument("--s", type=int, default=0, help="number of x variables (divisor part)")
    sp.add_argument("--t", type=int, default=0, help="number of y variables")
    sp.add_argument("--r", default=None, help="multiplicities r1,...,rs (default all 1)")


def _add_deg_flags(sp):
    sp.add_argument("--deg", default=None, help="multidegree, e.g. -1,1")
    sp.add_argument("--deg-window", default=None, help="XLO..XHI[,YLO..YHI]")


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _deg_text(deg):
    return ";".join(str(v) for v in deg)


def cmd_dims(args, out):
    p = _pair(args)
    degs = _degrees(p, args)
    cls = {"P": FormClass.P_OMEGA, "M": FormClass.M_OMEGA}[args.cls]
    if args.q < 0:
        raise UsageError("--q must be non-negative")
    rows = []
    for deg in degs:
        basis = basis_of(p, cls, args.q, deg) if args.q <= p.nvars else []
        rows.append((deg, basis))
    if args.format == "json":
        data = [{"pair": p.to_dict(), "deg": list(deg), "q": args.q, "class": args.cls,
                 "dim": len(basis), "basis": [format_term(p, key) for key in basis]}
                for deg, basis in rows]
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        r = ";".join(map(str, p.r))
        out.write(_csv(("s", "t", "r", "deg", "q", "class", "dim"),
                       [(p.s, p.t, r, _deg_text(d), args.q, args.cls, len(b)) for d, b in rows]))
    elif len(rows) == 1:
        out.write(f"{len(rows[0][1])}\n")
    else:
        for deg, basis in rows:
            out.write(f"deg={','.join(map(str, deg))}\t{len(basis)}\n")
    return 0


def cmd_cohomology(args, out):
    p = _pair(args)
    degs = _degrees(p, args)
    results = pmap(lambda d: (d, cohomology_dims(build_forms_complex(p, d))), degs)
    if args.format == "json":
        data = [{"pair": p.to_dict(), "deg": list(d), "H": {str(q): h for q, h in sorted(hs.items())}}
                for d, hs in results]
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        r = ";".join(map(str, p.r))
        out.write(_csv(("s", "t", "r", "deg", "q", "dim"),
                       [(p.s, p.t, r, _deg_text(d), q, h) for d, hs in results
                        for q, h in sorted(hs.items())]))
    else:
        for d, hs in results:
            prefix = f"deg={','.join(map(str, d))}\t" if len(results) > 1 else ""
            out.write(prefix + " ".join(f"H{q}={h}" for q, h in sorted(hs.items())) + "\n")
    return 0


def cmd_cyclic(args, out):
    p = _pair(args)
    degs = _degrees(p, args)
    try:
        variant = CyclicVariant.parse(args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lo, hi = _range(args.n_range)
    if lo < 0:
        raise UsageError("--n-range must start at 0 or above")
    ns = list(range(lo, hi + 1))
    results = pmap(lambda d: cyclic_report(p, d, variant, ns, args.oracle), degs)
    mismatch = any(oracle is not None and oracle != rep.dims for rep, oracle in results)
    if args.format == "json":
        data = []
        for rep, oracle in results:
            item = rep.to_dict()
            if oracle is not None:
                item["bicomplex"] = {str(n): v for n, v in sorted(oracle.items())}
                item["match"] = oracle == rep.dims
            data.append(item)
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        if args.oracle:
            rows = [row + (oracle[row[5]], oracle[row[5]] == row[6])
                    for rep, oracle in results for row in rep.csv_rows()]
            out.write(_csv(CSV_HEADER + ("bicomplex", "match"), rows))
        else:
            out.write(reports_to_csv([rep for rep, _ in results]))
    else:
        for rep, oracle in results:
            prefix = f"deg={','.join(map(str, rep.multidegree))}\t" if len(results) > 1 else ""
            out.write(prefix + ",".join(str(rep.dims[n]) for n in ns) + "\n")
            if oracle is not None:
                for n in ns:
                    out.write(f"  n={n} formula={rep.dims[n]} bicomplex={oracle[n]} "
                              f"match={'true' if oracle[n] == rep.dims[n] else 'false'}\n")
    return 1 if mismatch else 0


def cmd_verify(args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    try:
        lo, hi = _range(args.exponent_window)
        cfg = SuiteConfig(seed=args.seed, samples=args.samples, max_s=args.max_s, max_t=args.max_t,
                          max_r=args.max_r, max_n=args.max_n, exponent_window=(lo, hi),
                          max_pole_bound=args.pole_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = run_all(cfg, names) if len(names) > 1 else [run_suite(names[0], cfg)]
    for rep in reports:
        status = "skipped" if rep.skipped else ("pass" if rep.passed else "FAIL")
        print(f"{rep.name}: {status} ({rep.cases} cases, {len(rep.failures)} failures, "
              f"{rep.wall_time:.1f}s)", file=sys.stderr)
    payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
    out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_probe(args, out):
    p = _pair(args)
    try:
        z = parse_chain(p, args.chain)
    except ValueError as exc:
        raise UsageError(f"bad chain: {exc}") from None
    if args.pole_bound < 0:
        raise UsageError("--pole-bound must be non-negative")
    try:
        res = probe_escalating(p, z, args.pole_bound, args.max_columns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {"pair": p.to_dict(), "chain": format_chain(z), "status": res.status,
            "pole_bound": res.pole_bound, "columns": res.columns,
            "witness": format_chain(res.witness) if res.witness is not None else None}
    out.write(json.dumps(data, indent=2) + "\n")
    return 0 if res.confirmed else 1


def _vectors(text, rank, what):
    try:
        vecs = [tuple(_int_list(part)) for part in text.split(";")]
    except ValueError:
        raise UsageError(f"bad {what} {text!r}") from None
    if any(len(v) != rank for v in vecs):
        raise UsageError(f"every {what} vector needs {rank} entries")
    return vecs


def cmd_monoid(args, out):
    try:
        m = FgAbMonoid.parse(args.monoid)
        src = FgAbMonoid.parse(args.source) if args.source else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    rows = [_int_list(r) for r in (args.map or [])]
    if rows:
        width = len(rows[0])
        if len(rows) != m.rank or any(len(r) != width for r in rows):
            raise UsageError(f"--map needs {m.rank} rows of equal length")
        src = src or FgAbMonoid(0, width)
        try:
            phi = MonoidMap(src, m, IntMatrix(rows, width))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        phi = MonoidMap.zero(src or FgAbMonoid(0, 0), m)
    rep = repletion_iso(m, phi, args.n)
    factors = rep.invariant_factors
    quotient = "+".join("Z" if d == 0 else f"Z/{d}" for d in factors) or "0"
    data = {"monoid": str(m), "source": str(phi.source), "n": args.n,
            "quotient": quotient, "invariant_factors": factors,
            "repletion": f"{m} + ({quotient})^{args.n - 1}"}
    if args.element is not None:
        g = _vectors(args.element, m.rank, "element")
        if len(g) != args.n:
            raise UsageError(f"--element needs {args.n} ';'-separated vectors")
        data["element"] = [list(v) for v in g]
        data["in_repletion"] = rep.contains(g)
        if data["in_repletion"]:
            data["image"] = [list(v) for v in rep.forward(g)]
    out.write(json.dumps(data, indent=2) + "\n")
    return 0


def build_parser():
    parser = _Parser(prog="modhom", description="Exact modulus Hochschild/cyclic/de Rham tables.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("dims", help="dim MΩ^q (= dim MHH_q) per multidegree")
    _add_pair_flags(sp)
    _add_deg_flags(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=("P", "M"), default="M")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("cohomology", help="de Rham cohomology of MΩ per multidegree")
    _add_pair_flags(sp)
    _add_deg_flags(sp)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("cyclic", help="HC / HC- / HP dimensions")
    _add_pair_flags(sp)
    _add_deg_flags(sp)
    sp.add_argument("--variant", default="hc", help="hc | hcminus | hp")
    sp.add_argument("--n-range", default="0..6")
    sp.add_argument("--oracle", action="store_true", help="cross-check with the total complex")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_cyclic)

    sp = sub.add_parser("verify", help="run a property suite")
    sp.add_argument("--suite", required=True, help=f"all | {' | '.join(SUITES)}")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--max-s", type=int, default=2)
    sp.add_argument("--max-t", type=int, default=2)
    sp.add_argument("--max-r", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--exponent-window", default="-2..2")
    sp.add_argument("--pole-bound", type=int, default=4)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("probe", help="bounded search for z - ε(e(z)) = b(w)")
    _add_pair_flags(sp)
    sp.add_argument("--chain", required=True, help="e.g. 'x1^-1 (x) x1' or '(2)*[1 (x) x1] + ...'")
    sp.add_argument("--pole-bound", type=int, default=4)
    sp.add_argument("--max-columns", type=int, default=None)
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("monoid", help="repletion of n copies of M amalgamated over P")
    sp.add_argument("--monoid", required=True, help="e.g. N^2+Z^1")
    sp.add_argument("--source", default=None, help="P, e.g. Z^1 (default Z^k from the map width)")
    sp.add_argument("--map", action="append", help="one matrix row per target generator, e.g. 0,2")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--element", default=None, help="tuple g1;...;gn to push through the iso")
    sp.set_defaults(func=cmd_monoid)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        return args.func(args, out)
    except UsageError as exc:
        print(f"modhom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
