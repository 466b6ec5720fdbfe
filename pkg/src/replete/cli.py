"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 precision or budget exhausted,
3 a tolerance or check failed, 4 I/O error.
"""

import argparse
import os
import sys
from fractions import Fraction

from .adelic import gaussian_test_function, tate_check
from .enumeration import DEFAULT_NODE_BUDGET
from .errors import (BudgetExceeded, CapExceeded, ConventionError, FieldConstructionError,
                     PrecisionError, ToleranceError, TruncationError)
from .field import load_field_spec, preset
from .growth import DEFAULT_SAMPLES, minkowski_growth, surface_area
from .harness import (ScanFamily, emit_csv, estimate_constant, fit_error_exponent, fmt12,
                      geometric_schedule, scan_family)
from .ideals import IdelePresentation, unit_ideal
from .lattice import H0Region, count_region, enumerate_H0
from .literals import (LiteralError, format_element, parse_ideal, parse_per_place, parse_rationals,
                       parse_region, parse_replete)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CHECK, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_threads():
    env = os.environ.get("REPLETE_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="preset: Q, Qi or Qsqrt:<d>")
    common.add_argument("--spec", help="JSON field description (overrides --field)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $REPLETE_THREADS or 1)")
    common.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="enumeration node budget")

    p = _Parser(prog="replete", description="Replete ideals, lattice counts and theta identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("field", parents=[common], help="field invariants")
    f.add_argument("action", choices=["info"])

    i = sub.add_parser("ideal", parents=[common], help="ideal arithmetic")
    i.add_argument("op", choices=["mul", "inv", "norm", "equal"])
    i.add_argument("ideals", nargs="+", metavar="IDEAL")

    h = sub.add_parser("h0", parents=[common], help="count elements of bounded size in an ideal")
    h.add_argument("--ideal", required=True)
    h.add_argument("--bounds", required=True, help="b_1,b_2,... (one value applies to every place)")
    h.add_argument("--list", action="store_true", help="also print the elements")
    h.add_argument("--cap", type=int, default=10**5)

    r = sub.add_parser("rr-scan", parents=[common], help="scan |H^0(a^-1)| along a family")
    r.add_argument("--base", required=True, help="replete ideal, e.g. 'O | 1'")
    r.add_argument("--schedule", required=True, help="geometric:t0,ratio,k or list:t1,t2,...")
    r.add_argument("--out", help="CSV destination (default: stdout)")
    r.add_argument("--max-deviation", type=float, default=None,
                   help="fail when |c/vol(B) - 1| exceeds this")

    t = sub.add_parser("tate-check", parents=[common], help="check the theta identity")
    t.add_argument("--ideal", default="O")
    t.add_argument("--lambda", dest="rate", default="1", help="Gaussian rate, one or per place")
    t.add_argument("--y", default="1", help="archimedean idele components")
    t.add_argument("--y-ideal", default=None, help="ideal of the finite part of y")
    t.add_argument("--tol", type=float, default=1e-9)
    t.add_argument("--trunc", type=float, default=10.0)

    s = sub.add_parser("surface", parents=[common], help="Minkowski growth and surface slope")
    s.add_argument("--shape", default="ball")
    s.add_argument("--cell", default="cube")
    s.add_argument("--t-list", default="1/2,1/4,1/8,1/16")
    s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    return p


def _field(args):
    if args.spec:
        try:
            return load_field_spec(args.spec)
        except OSError as exc:
            raise OSError(f"cannot read field spec: {exc}") from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad field spec: {exc}") from exc
    return preset(args.field)


def _schedule(text):
    kind, _, rest = text.partition(":")
    if kind == "geometric":
        vals = parse_rationals(rest)
        if len(vals) != 3 or vals[2].denominator != 1 or vals[2] < 1:
            raise UsageError("geometric schedule is t0,ratio,k")
        return geometric_schedule(vals[0], vals[1], int(vals[2]))
    if kind == "list":
        return tuple(parse_rationals(rest))
    raise UsageError(f"unknown schedule {text!r}")


def _out(line=""):
    print(line, flush=True)


def cmd_field(K, args):
    diff = unit_ideal(K).trace_dual().inverse()
    _out(f"degree: {K.degree}")
    _out(f"signature: ({K.r},{K.s})")
    _out(f"discriminant: {K.discriminant}")
    _out(f"different: {_hnf_text(diff)}")
    _out(f"norm(different): {diff.norm()}")
    return EXIT_OK


def _hnf_text(a):
    rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in a.hnf)
    return rows if a.denom == 1 else f"(1/{a.denom})*{rows}"


def cmd_ideal(K, args):
    ideals = [parse_ideal(K, x) for x in args.ideals]
    need = {"mul": None, "inv": 1, "norm": 1, "equal": 2}[args.op]
    if need is not None and len(ideals) != need:
        raise UsageError(f"'{args.op}' takes {need} ideal(s)")
    if args.op == "mul":
        res = ideals[0]
        for b in ideals[1:]:
            res = res * b
    elif args.op == "inv":
        res = ideals[0].inverse()
    elif args.op == "norm":
        _out(f"norm: {ideals[0].norm()}")
        return EXIT_OK
    else:
        _out("equal" if ideals[0] == ideals[1] else "not equal")
        return EXIT_OK
    _out(f"hnf: {_hnf_text(res)}")
    _out(f"norm: {res.norm()}")
    return EXIT_OK


def cmd_h0(K, args):
    a = parse_ideal(K, args.ideal)
    region = H0Region(parse_per_place(K, args.bounds, "--bounds"))
    if args.list:
        from .ideals import RepleteIdeal

        elems = enumerate_H0(K, RepleteIdeal(a, tuple(1 / b for b in region.bounds)), args.cap, args.budget)
        _out(f"count: {len(elems)}")
        for e in elems:
            _out(format_element(e))
    else:
        _out(f"count: {count_region(K, a, region, args.budget)}")
    return EXIT_OK


def cmd_rr_scan(K, args):
    base = parse_replete(K, args.base)
    family = ScanFamily(base, _schedule(args.schedule))
    rows = scan_family(K, family, args.budget, args.threads)
    if args.out:
        emit_csv(rows, args.out)
    else:
        sys.stdout.write(emit_csv(rows).decode())
    status = EXIT_OK
    if rows.truncated_at is not None:
        _out(f"truncated at index {rows.truncated_at}: {rows.reason}")
        status = EXIT_BUDGET
    if len(rows) >= 3:
        est = estimate_constant(rows)
        _out(f"constant: {fmt12(est.c_hat)}  vol(B): {fmt12(est.vol_b)}  deviation: {fmt12(est.deviation)}")
        if args.max_deviation is not None and est.deviation > args.max_deviation:
            status = status or EXIT_CHECK
    if len(rows) >= 4:
        fit = fit_error_exponent(rows)
        label = "saturated" if fit.saturated else fmt12(fit.slope)
        _out(f"exponent: {label}  bound: {fmt12(fit.bound)}  C: {fmt12(fit.constant)}  "
             f"{'pass' if fit.passed else 'FAIL'}")
        if not fit.passed:
            status = status or EXIT_CHECK
    else:
        _out("exponent: not fitted (fewer than 4 rows)")
    return status


def cmd_tate(K, args):
    b = parse_ideal(K, args.ideal)
    f = gaussian_test_function(b, parse_per_place(K, args.rate, "--lambda"))
    arch = parse_per_place(K, args.y, "--y")
    finite = () if args.y_ideal is None else ((parse_ideal(K, args.y_ideal), 1),)
    y = IdelePresentation(K, finite, tuple(arch))
    rep = tate_check(K, f, y, args.trunc, args.tol)
    _out(f"lhs: {fmt12(rep.lhs)}")
    _out(f"rhs: {fmt12(rep.rhs)}")
    _out(f"diff: {rep.diff:.12g}")
    _out(f"tail: {rep.tail:.12g}")
    _out("pass" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_surface(K, args):
    E = parse_region(K, args.shape)
    D = parse_region(K, args.cell)
    ts = [Fraction(t) for t in parse_rationals(args.t_list)]
    if any(not 0 < t <= 1 for t in ts):
        raise UsageError("t values must lie in (0, 1]")
    _out(f"seed: {args.seed}")
    _out("t,growth,ci,quotient")
    for t in sorted(ts, reverse=True):
        g = minkowski_growth(E, D, t, args.samples, args.seed)
        _out(f"{t},{fmt12(g.value)},{fmt12(g.ci)},{fmt12(g.value / float(t))}")
    est = surface_area(E, D, ts, args.samples, args.seed)
    slope = str(est.exact) if est.exact is not None else fmt12(est.slope)
    _out(f"slope: {slope} +/- {fmt12(est.ci)}")
    return EXIT_OK


COMMANDS = {"field": cmd_field, "ideal": cmd_ideal, "h0": cmd_h0, "rr-scan": cmd_rr_scan,
            "tate-check": cmd_tate, "surface": cmd_surface}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.threads is None:
        args.threads = _default_threads()
    if args.threads < 1:
        print("replete: error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        K = _field(args)
        return COMMANDS[args.command](K, args)
    except (UsageError, LiteralError, FieldConstructionError) as exc:
        print(f"replete: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, BudgetExceeded, CapExceeded, TruncationError) as exc:
        print(f"replete: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ToleranceError, ConventionError) as exc:
        print(f"replete: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except OSError as exc:
        print(f"replete: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"replete: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
