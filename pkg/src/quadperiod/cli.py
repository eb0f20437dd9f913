"""Command-line entry point: ``quadperiod <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any

from .arith import QuadPoly
from .congruence import DEFAULT_ORACLE_CAP, RESIDUE_NOTE, SolutionSet, solve, solve_brute
from .distance import NotEventuallyPeriodic, min_distance_closed, min_distance_from_set
from .oracle import asymptotic_slope, oracle_report
from .period import DEFAULT_K_CAP, PeriodReport, smallest_period
from .selftest import run_all

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_poly(text: str) -> QuadPoly:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--poly expects a,b,c, got {text!r}")
    try:
        a, b, c = (int(x) for x in parts)
    except ValueError:
        raise UsageError(f"--poly coefficients must be integers, got {text!r}") from None
    if a == 0:
        raise UsageError("leading coefficient must be nonzero")
    return QuadPoly(a, b, c)


def _num(x: int) -> str:
    return str(x)


def poly_to_dict(f: QuadPoly) -> dict[str, str]:
    return {"a": _num(f.a), "b": _num(f.b), "c": _num(f.c)}


def poly_from_dict(d: dict) -> QuadPoly:
    return QuadPoly(int(d["a"]), int(d["b"]), int(d["c"]))


def solution_to_dict(s: SolutionSet) -> dict[str, Any]:
    return {"p": _num(s.p), "e": _num(s.e), "modulus": _num(s.modulus),
            "residues": [_num(r) for r in s.residues]}


def period_report_to_dict(r: PeriodReport) -> dict[str, Any]:
    return {
        "f": poly_to_dict(r.f),
        "k": _num(r.k),
        "B_k": _num(r.B_k),
        "L_k": _num(r.L_k),
        "xi2": _num(r.xi2),
        "eta": {_num(p): _num(v) for p, v in r.eta.items()},
        "A_k": _num(r.A_k),
        "local_periods": {_num(p): _num(v) for p, v in r.local_periods.items()},
        "exceptional_prime": None if r.exceptional_prime is None
        else {"q": _num(r.exceptional_prime[0]), "exponent": _num(r.exceptional_prime[1])},
        "P": _num(r.P),
    }


def period_report_from_dict(d: dict) -> PeriodReport:
    exc = d["exceptional_prime"]
    return PeriodReport(
        f=poly_from_dict(d["f"]),
        k=int(d["k"]),
        B_k=int(d["B_k"]),
        L_k=int(d["L_k"]),
        xi2=int(d["xi2"]),
        eta={int(p): int(v) for p, v in d["eta"].items()},
        A_k=int(d["A_k"]),
        local_periods={int(p): int(v) for p, v in d["local_periods"].items()},
        exceptional_prime=None if exc is None else (int(exc["q"]), int(exc["exponent"])),
        P=int(d["P"]),
    )


def _emit(args, request: dict, result: dict, checks: dict, text: str) -> None:
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "request": request, "result": result, "checks": checks}
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _request(args, **extra) -> dict:
    req = {"subcommand": args.cmd}
    if getattr(args, "poly", None) is not None:
        req["poly"] = poly_to_dict(args.poly)
    req.update({k: (_num(v) if isinstance(v, int) and not isinstance(v, bool) else v) for k, v in extra.items()})
    return req


def cmd_solve(args) -> int:
    s = solve(args.poly, args.prime, args.exp)
    checks = {}
    lines = [f"S(f, {args.prime}^{args.exp}) = {list(s.residues)}", f"({RESIDUE_NOTE})"]
    if args.brute:
        match = solve_brute(args.poly, args.prime, args.exp, args.oracle_cap) == s
        checks["brute"] = "match" if match else "mismatch"
        lines.append(f"brute={checks['brute']}")
    result = solution_to_dict(s) | {"residue_convention": RESIDUE_NOTE}
    _emit(args, _request(args, prime=args.prime, exp=args.exp, brute=args.brute), result, checks, "\n".join(lines))
    return 0 if checks.get("brute", "match") == "match" else 1


def cmd_mindist(args) -> int:
    rows, checks, lines = [], {}, ["e  d_{p^e}"]
    for e in range(args.emin, args.emax + 1):
        d = min_distance_closed(args.poly, args.prime, e).d
        row = {"e": _num(e), "d": d.to_json()}
        line = f"{e:<2} {d}"
        if args.brute:
            bd = min_distance_from_set(solve_brute(args.poly, args.prime, e, args.oracle_cap)).d
            row["brute"] = bd.to_json()
            checks[str(e)] = "match" if bd == d else "mismatch"
            line += f"  brute={checks[str(e)]}"
        rows.append(row)
        lines.append(line)
    result = {"p": _num(args.prime), "rows": rows, "residue_convention": RESIDUE_NOTE}
    _emit(args, _request(args, prime=args.prime, emin=args.emin, emax=args.emax), result, checks, "\n".join(lines))
    return 0 if all(v == "match" for v in checks.values()) else 1


def cmd_period(args) -> int:
    r = smallest_period(args.poly, args.k, k_cap=args.k_cap)
    checks = {}
    text = [
        f"normalized f = {r.f}" + ("" if r.f == args.poly else f" (from {args.poly})"),
        f"k = {r.k}",
        f"B_k = {r.B_k}",
        f"L_k = {r.L_k}",
        f"xi_2 = {r.xi2}",
        f"eta = {r.eta}",
        f"A_k = {r.A_k}",
        f"local periods = {r.local_periods}",
        f"exceptional prime = {r.exceptional_prime}",
        f"P = {r.P}",
    ]
    _emit(args, _request(args, k=args.k), period_report_to_dict(r), checks, "\n".join(text))
    return 0


def cmd_oracle(args) -> int:
    rep = oracle_report(args.poly, args.k, n0=args.n0, horizon=args.window)
    checks: dict[str, Any] = {
        "hua_consistent": rep.hua_consistent,
        "gcd_divides_B_k": rep.gcd_checks,
        "divisor_checks": {_num(t): ok for t, ok in sorted(rep.divisor_checks.items())},
    }
    status = 0
    if args.verify:
        P = smallest_period(args.poly, args.k).P
        checks["period_engine_P"] = _num(P)
        checks["verify"] = "match" if P == rep.empirical_period else "mismatch"
        status = 0 if P == rep.empirical_period else 1
    result = {
        "f": poly_to_dict(rep.f),
        "k": _num(rep.k),
        "B_k": _num(rep.B_k),
        "n0": _num(rep.n0),
        "horizon": _num(rep.horizon),
        "samples": [[_num(n), _num(g)] for n, g in rep.samples],
        "empirical_period": _num(rep.empirical_period),
        "note": rep.note,
    }
    text = [
        f"B_k = {rep.B_k}",
        f"window: n0 = {rep.n0}, horizon = {rep.horizon}",
        f"empirical period = {rep.empirical_period}",
        f"samples = {rep.samples}",
        f"hua identity: {rep.hua_consistent}; pairwise gcds divide B_k: {rep.gcd_checks}",
        rep.note,
    ]
    if args.verify:
        text.append(f"period engine P = {checks['period_engine_P']}: {checks['verify']}")
    _emit(args, _request(args, k=args.k, window=args.window, verify=args.verify), result, checks, "\n".join(text))
    return status


def cmd_asym(args) -> int:
    rep = asymptotic_slope(args.poly, args.k, args.points)
    if args.csv:
        fh = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
        try:
            w = csv.writer(fh)
            w.writerow(["n", "log_lcm", "ratio", "predicted_C"])
            for n, ll, ratio in rep.points:
                w.writerow([n, repr(ll), repr(ratio), rep.predicted_C])
        finally:
            if fh is not sys.stdout:
                fh.close()
        if args.csv == "-":
            return 0
    result = {
        "points": [{"n": _num(n), "log_lcm": ll, "ratio": r} for n, ll, r in rep.points],
        "predicted_C": _num(rep.predicted_C),
        "relative_deviation": rep.deviation,
    }
    checks = {"monotone_toward_C": rep.monotone}
    text = [f"predicted C = {rep.predicted_C}"]
    text += [f"n = {n}: log lcm = {ll:.6f}, ratio = {r:.6f}" for n, ll, r in rep.points]
    text.append(f"relative deviation at largest n = {rep.deviation:.4%}; monotone = {rep.monotone}")
    _emit(args, _request(args, k=args.k, points=[_num(n) for n in args.points]), result, checks, "\n".join(text))
    return 0


def cmd_selftest(args) -> int:
    results = run_all(quick=not args.full)
    checks = {r.name: {"passed": r.passed, "cases": _num(r.cases)} for r in results}
    ok = all(r.passed for r in results)
    _emit(args, _request(args, full=args.full), {"passed": ok}, checks, "\n".join(r.line() for r in results))
    return 0 if ok else 1


def _points(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadperiod", description="Periods of lcm-quotients of quadratic progressions.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, poly=True):
        if poly:
            p.add_argument("--poly", required=True, help="coefficients a,b,c of a x^2 + b x + c")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP, help="largest modulus for exhaustive scans")

    p = sub.add_parser("solve", help="roots of f mod p^e")
    common(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also scan every residue and compare")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mindist", help="minimal root distance over a range of e")
    common(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--emin", type=int, default=0)
    p.add_argument("--emax", type=int, default=6)
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("period", help="smallest period of g_{k,f}")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("oracle", help="direct evaluation and empirical period")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--window", type=int, default=3, help="horizon multiplier of B_k")
    p.add_argument("--n0", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="compare with the period engine")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("asym", help="log lcm / log n at sample points")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--points", type=_points, default=[10**3, 10**4, 10**5])
    p.add_argument("--csv", default=None, help="write CSV to this path ('-' for stdout)")
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("selftest", help="run the invariant grid")
    common(p, poly=False)
    p.add_argument("--full", action="store_true", help="full-size grid (slow)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "poly", None) is not None:
            args.poly = parse_poly(args.poly)
        for name in ("k", "prime", "exp", "window"):
            val = getattr(args, name, None)
            if val is not None and val < (0 if name == "exp" else 1):
                raise UsageError(f"--{name} out of range: {val}")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except NotEventuallyPeriodic as exc:
        if args.json:
            doc = {"schema_version": SCHEMA_VERSION, "request": _request(args),
                   "result": None, "error": {"kind": "not_eventually_periodic", "message": str(exc),
                                             "witness_i0": None if exc.witness is None else _num(exc.witness)},
                   "checks": {}}
            print(json.dumps(doc, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
